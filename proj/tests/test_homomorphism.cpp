#include <catch2/catch.hpp>

#include "oracles.hpp"
#include "qrel/classical.hpp"

using namespace qrel;

TEST_CASE("validate_hom", "[homomorphism]") {
  SECTION("identity homomorphisms validate") {
    for (const BlockSpec& spec : {BlockSpec{{{2, 1}}}, BlockSpec{{{1, 2}, {2, 1}}}}) {
      const HomCheck c = validate_hom(identity_hom(from_blocks(spec)));
      REQUIRE(c.pass());
      REQUIRE(c.worst_residual() < 1e-12);
    }
  }
  SECTION("random block-algebra homomorphisms validate") {
    Rng rng(51);
    for (int trial = 0; trial < 20; ++trial) REQUIRE(validate(random_homomorphism(rng, 5)));
  }
  SECTION("a perturbed image breaks multiplicativity") {
    Rng rng(52);
    Homomorphism pi = random_homomorphism(rng, 4, {});
    pi.images[0] += 1e-3 * random_matrix(rng, pi.target.hilbert_dim, pi.target.hilbert_dim);
    REQUIRE_FALSE(validate(pi));
  }
  SECTION("a non-unital map is rejected") {
    const Algebra d2 = diag_algebra(2);
    Homomorphism pi;
    pi.source = d2;
    pi.target = d2;
    pi.images = {matrix_unit(2, 2, 0, 0), Mat::Zero(2, 2)};  // loses the second unit
    REQUIRE_FALSE(validate_hom(pi).unital);
  }
  SECTION("image count mismatch throws") {
    Homomorphism pi;
    pi.source = diag_algebra(2);
    pi.target = diag_algebra(2);
    pi.images = {Mat::Identity(2, 2)};
    REQUIRE_THROWS_AS(validate(pi), shape_error);
  }
}

TEST_CASE("apply_hom", "[homomorphism]") {
  Rng rng(53);
  const Homomorphism pi = random_homomorphism(rng, 4, {});
  SECTION("linear on the source algebra") {
    const Index k = pi.source.hilbert_dim;
    const Mat a = project(pi.source.algebra, random_matrix(rng, k, k));
    const Mat b = project(pi.source.algebra, random_matrix(rng, k, k));
    REQUIRE((apply_hom(pi, a + b) - apply_hom(pi, a) - apply_hom(pi, b)).norm() < 1e-10);
  }
  SECTION("reproduces the stored images on basis elements") {
    for (Index i = 0; i < pi.source.algebra.dim(); ++i)
      REQUIRE((apply_hom(pi, pi.source.algebra.basis[i]) - pi.images[i]).norm() < 1e-10);
  }
}

TEST_CASE("compose_hom", "[homomorphism]") {
  SECTION("identity is a unit for composition") {
    Rng rng(54);
    const Homomorphism pi = random_homomorphism(rng, 4, {});
    const Homomorphism left = compose_hom(identity_hom(pi.target), pi);
    const Homomorphism right = compose_hom(pi, identity_hom(pi.source));
    REQUIRE(hom_distance(left, pi) < 1e-10);
    REQUIRE(hom_distance(right, pi) < 1e-10);
  }
  SECTION("pullbacks reverse classical composition, exhaustively on small sets") {
    for (Index x = 1; x <= 2; ++x)
      for (Index y = 1; y <= 2; ++y)
        for (Index z = 1; z <= 2; ++z) {
          std::vector<Index> fmap(static_cast<std::size_t>(x), 0);
          for (;;) {
            std::vector<Index> gmap(static_cast<std::size_t>(y), 0);
            for (;;) {
              const ClassicalFunction f{x, y, fmap};
              const ClassicalFunction g{y, z, gmap};
              ClassicalFunction gof;
              gof.x_size = x;
              gof.y_size = z;
              for (Index xx = 0; xx < x; ++xx)
                gof.map.push_back(gmap[static_cast<std::size_t>(fmap[static_cast<std::size_t>(xx)])]);

              // pullback(g o f) = pullback(f) o pullback(g)
              const Homomorphism composed =
                  compose_hom(function_to_hom(f), function_to_hom(g));
              REQUIRE(validate(composed));
              REQUIRE(hom_distance(composed, function_to_hom(gof)) < 1e-10);

              Index pos = 0;
              while (pos < y && gmap[static_cast<std::size_t>(pos)] == z - 1)
                gmap[static_cast<std::size_t>(pos++)] = 0;
              if (pos == y) break;
              ++gmap[static_cast<std::size_t>(pos)];
            }
            Index pos = 0;
            while (pos < x && fmap[static_cast<std::size_t>(pos)] == y - 1)
              fmap[static_cast<std::size_t>(pos++)] = 0;
            if (pos == x) break;
            ++fmap[static_cast<std::size_t>(pos)];
          }
        }
  }
  SECTION("composition of random composable pairs validates") {
    Rng rng(55);
    for (int trial = 0; trial < 10; ++trial) {
      const auto [pi0, pi1] = random_composable_pair(rng, 5);
      REQUIRE(validate(pi0));
      REQUIRE(validate(pi1));
      REQUIRE(validate(compose_hom(pi0, pi1)));
    }
  }
  SECTION("middle mismatch throws") {
    const Homomorphism a = identity_hom(diag_algebra(2));
    const Homomorphism b = identity_hom(diag_algebra(3));
    REQUIRE_THROWS_AS(compose_hom(a, b), shape_error);
  }
}
