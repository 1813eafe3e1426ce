#include <catch2/catch.hpp>

#include "oracles.hpp"
#include "qrel/classical.hpp"

using namespace qrel;

namespace {

// random validated relation: the bimodule closure of random seeds
Relation random_relation(Rng& rng, const Algebra& source, const Algebra& target, int seeds = 1) {
  std::vector<Mat> seed;
  for (int i = 0; i < seeds; ++i)
    seed.push_back(random_matrix(rng, target.hilbert_dim, source.hilbert_dim));
  return bimodule_closure(source, target, seed);
}

}  // namespace

TEST_CASE("relation validation", "[relation]") {
  SECTION("diagonal relations validate") {
    for (const BlockSpec& spec : {BlockSpec{{{2, 1}}}, BlockSpec{{{1, 1}, {1, 1}}}, BlockSpec{{{2, 2}}}})
      REQUIRE(validate(diagonal(from_blocks(spec))));
  }
  SECTION("a matrix-unit span between full algebras validates") {
    const Algebra m2 = from_blocks(BlockSpec{{{2, 1}}});
    Relation r{m2, m2, orthonormalize(2, 2, {matrix_unit(2, 2, 0, 0)})};
    REQUIRE(validate(r));
  }
  SECTION("diagonal algebras distinguish unit spans from slanted ones") {
    const Algebra d2 = diag_algebra(2);
    Relation good{d2, d2, orthonormalize(2, 2, {matrix_unit(2, 2, 0, 0)})};
    REQUIRE(validate(good));
    Relation bad{d2, d2,
                 orthonormalize(2, 2, {matrix_unit(2, 2, 0, 0) + matrix_unit(2, 2, 0, 1)})};
    REQUIRE_FALSE(validate(bad));
  }
  SECTION("ambient mismatch throws") {
    const Algebra d2 = diag_algebra(2);
    Relation r{d2, d2, orthonormalize(3, 3, {matrix_unit(3, 3, 0, 0)})};
    REQUIRE_THROWS_AS(validate(r), shape_error);
  }
}

TEST_CASE("bimodule_closure", "[relation]") {
  SECTION("identity seed between full algebras closes to the scalars") {
    const Algebra m2 = from_blocks(BlockSpec{{{2, 1}}});
    const Relation r = bimodule_closure(m2, m2, {Mat::Identity(2, 2)});
    REQUIRE(r.space.dim() == 1);
  }
  SECTION("matrix-unit seed between diagonal algebras stays itself") {
    const Relation r = bimodule_closure(diag_algebra(2), diag_algebra(3), {matrix_unit(3, 2, 1, 0)});
    REQUIRE(r.space.dim() == 1);
    REQUIRE(contains(r.space, matrix_unit(3, 2, 1, 0)));
  }
  SECTION("random seed between scalar algebras closes to everything") {
    Rng rng(41);
    const Algebra ch = from_blocks(BlockSpec{{{1, 2}}});  // scalars on C^2
    const Algebra ck = from_blocks(BlockSpec{{{1, 3}}});  // scalars on C^3
    const Relation r = bimodule_closure(ch, ck, {random_matrix(rng, 3, 2)});
    REQUIRE(r.space.dim() == 6);
  }
  SECTION("seed shape mismatch throws") {
    REQUIRE_THROWS_AS(bimodule_closure(diag_algebra(2), diag_algebra(3), {Mat::Zero(2, 3)}),
                      shape_error);
  }
}

TEST_CASE("diagonal relation", "[relation]") {
  SECTION("full algebra: scalars") {
    REQUIRE(diagonal(from_blocks(BlockSpec{{{2, 1}}})).space.dim() == 1);
  }
  SECTION("two points: the diagonal matrices") {
    const Relation r = diagonal(diag_algebra(2));
    REQUIRE(r.space.dim() == 2);
    REQUIRE(contains(r.space, matrix_unit(2, 2, 0, 0)));
    REQUIRE(contains(r.space, matrix_unit(2, 2, 1, 1)));
  }
  SECTION("multiplicity block: amplified matrix algebra of dimension 4") {
    REQUIRE(diagonal(from_blocks(BlockSpec{{{2, 2}}})).space.dim() == 4);
  }
}

TEST_CASE("inverse relation", "[relation]") {
  SECTION("diagonal relations are self-inverse") {
    const Relation d = diagonal(from_blocks(BlockSpec{{{2, 2}}}));
    REQUIRE(subspace_eq(inverse(d).space, d.space));
  }
  SECTION("matrix units transpose") {
    const Algebra s2 = from_blocks(BlockSpec{{{1, 2}}});
    Relation r{s2, s2, orthonormalize(2, 2, {matrix_unit(2, 2, 1, 0)})};
    REQUIRE(contains(inverse(r).space, matrix_unit(2, 2, 0, 1)));
  }
  SECTION("involution on random validated relations") {
    Rng rng(42);
    for (int trial = 0; trial < 5; ++trial) {
      const Algebra a = from_blocks(random_blocks(rng, 4));
      const Algebra b = from_blocks(random_blocks(rng, 4));
      const Relation r = random_relation(rng, a, b);
      REQUIRE(validate(r));
      const Relation rr = inverse(inverse(r));
      REQUIRE(subspace_eq(rr.space, r.space));
      REQUIRE(validate(inverse(r)));
    }
  }
}

TEST_CASE("compose relations", "[relation]") {
  SECTION("diagonal is a left and right unit on validated relations") {
    Rng rng(43);
    const Algebra a = from_blocks(BlockSpec{{{2, 1}}});
    const Algebra b = from_blocks(BlockSpec{{{1, 1}, {1, 1}}});
    const Relation r = random_relation(rng, a, b);
    REQUIRE(subspace_eq(compose(diagonal(b), r).space, r.space));
    REQUIRE(subspace_eq(compose(r, diagonal(a)).space, r.space));
  }
  SECTION("matrix-unit composition over scalar algebras") {
    const Algebra s2 = from_blocks(BlockSpec{{{1, 2}}});
    Relation r1{s2, s2, orthonormalize(2, 2, {matrix_unit(2, 2, 0, 1)})};
    Relation r0{s2, s2, orthonormalize(2, 2, {matrix_unit(2, 2, 1, 0)})};
    const Relation c = compose(r1, r0);
    REQUIRE(c.space.dim() == 1);
    REQUIRE(contains(c.space, matrix_unit(2, 2, 0, 0)));
  }
  SECTION("classical composition matches the set-theoretic one") {
    Rng rng(44);
    for (int trial = 0; trial < 30; ++trial) {
      const Index x = 1 + uniform_index(rng, 3), y = 1 + uniform_index(rng, 3),
                  z = 1 + uniform_index(rng, 3);
      ClassicalRelation f, g;
      f.x_size = x;
      f.y_size = y;
      g.x_size = y;
      g.y_size = z;
      for (Index yy = 0; yy < y; ++yy)
        for (Index xx = 0; xx < x; ++xx)
          if (rng() & 1u) f.pairs.insert({yy, xx});
      for (Index zz = 0; zz < z; ++zz)
        for (Index yy = 0; yy < y; ++yy)
          if (rng() & 1u) g.pairs.insert({zz, yy});
      const Relation quantum = compose(relation_to_quantum(g), relation_to_quantum(f));
      REQUIRE(quantum_to_relation(quantum).pairs == compose_classical(g, f).pairs);
    }
  }
  SECTION("middle-algebra mismatch throws") {
    const Relation r1 = diagonal(from_blocks(BlockSpec{{{2, 1}}}));
    const Relation r0 = diagonal(diag_algebra(2));
    REQUIRE_THROWS_AS(compose(r1, r0), shape_error);
  }
  SECTION("intersections of validated relations stay validated") {
    Rng rng(47);
    for (int trial = 0; trial < 5; ++trial) {
      const Algebra a = from_blocks(random_blocks(rng, 4));
      const Algebra b = from_blocks(random_blocks(rng, 4));
      const Relation r0 = random_relation(rng, a, b);
      const Relation r1 = random_relation(rng, a, b);
      Relation meet{a, b, intersect(r0.space, r1.space)};
      REQUIRE(validate(meet));
    }
  }
  SECTION("composition is associative and reverses under inverse") {
    Rng rng(45);
    for (int trial = 0; trial < 5; ++trial) {
      const Algebra a = from_blocks(random_blocks(rng, 3));
      const Algebra b = from_blocks(random_blocks(rng, 3));
      const Algebra c = from_blocks(random_blocks(rng, 3));
      const Algebra d = from_blocks(random_blocks(rng, 3));
      const Relation r0 = random_relation(rng, a, b);
      const Relation r1 = random_relation(rng, b, c);
      const Relation r2 = random_relation(rng, c, d);
      REQUIRE(subspace_eq(compose(r2, compose(r1, r0)).space, compose(compose(r2, r1), r0).space));
      REQUIRE(subspace_eq(inverse(compose(r1, r0)).space, compose(inverse(r0), inverse(r1)).space));
      REQUIRE(validate(compose(r1, r0)));
    }
  }
}

TEST_CASE("relation predicates", "[relation]") {
  SECTION("diagonal relations satisfy all four") {
    const Relation d = diagonal(from_blocks(BlockSpec{{{2, 1}, {1, 2}}}));
    REQUIRE(is_reflexive(d));
    REQUIRE(is_symmetric(d));
    REQUIRE(is_antisymmetric(d));
    REQUIRE(is_transitive(d));
  }
  SECTION("the full relation with scalar commutant is not antisymmetric") {
    // on B(H) the commutant is C, so V = B(H) escapes it whenever dim > 1
    const Algebra m2 = from_blocks(BlockSpec{{{2, 1}}});
    Relation full{m2, m2, full_matrix_space(2, 2)};
    REQUIRE(validate(full));
    REQUIRE(is_reflexive(full));
    REQUIRE(is_symmetric(full));
    REQUIRE(is_transitive(full));
    REQUIRE_FALSE(is_antisymmetric(full));
  }
  SECTION("on the scalars every relation is antisymmetric") {
    // the commutant of C_H is all of B(H), so the inclusion is vacuous
    const Algebra s2 = from_blocks(BlockSpec{{{1, 2}}});
    Relation full{s2, s2, full_matrix_space(2, 2)};
    REQUIRE(validate(full));
    REQUIRE(is_antisymmetric(full));
  }
  SECTION("exhaustive agreement with the classical predicates on up to 3 points") {
    for (Index n = 1; n <= 3; ++n) {
      const Index bits = n * n;
      for (std::uint64_t mask = 0; mask < (1ull << bits); ++mask) {
        ClassicalRelation f;
        f.x_size = f.y_size = n;
        for (Index y = 0; y < n; ++y)
          for (Index x = 0; x < n; ++x)
            if (mask & (1ull << (y * n + x))) f.pairs.insert({y, x});
        const Relation q = relation_to_quantum(f);
        const RelationProperties p = classical_predicates(f);
        REQUIRE(is_reflexive(q) == p.reflexive);
        REQUIRE(is_symmetric(q) == p.symmetric);
        REQUIRE(is_antisymmetric(q) == p.antisymmetric);
        REQUIRE(is_transitive(q) == p.transitive);
      }
    }
  }
  SECTION("sampled agreement with the classical predicates on 4 points") {
    Rng rng(48);
    for (int trial = 0; trial < 25; ++trial) {
      ClassicalRelation f;
      f.x_size = f.y_size = 4;
      for (Index y = 0; y < 4; ++y)
        for (Index x = 0; x < 4; ++x)
          if (rng() & 1u) f.pairs.insert({y, x});
      const Relation q = relation_to_quantum(f);
      const RelationProperties p = classical_predicates(f);
      REQUIRE(is_reflexive(q) == p.reflexive);
      REQUIRE(is_symmetric(q) == p.symmetric);
      REQUIRE(is_antisymmetric(q) == p.antisymmetric);
      REQUIRE(is_transitive(q) == p.transitive);
    }
  }
  SECTION("predicates require an endorelation") {
    Rng rng(46);
    const Relation r = random_relation(rng, diag_algebra(2), diag_algebra(3));
    REQUIRE_THROWS_AS(is_reflexive(r), shape_error);
  }
}
