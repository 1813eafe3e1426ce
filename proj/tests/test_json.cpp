#include <catch2/catch.hpp>

#include "oracles.hpp"
#include "qrel/certificate.hpp"
#include "qrel/selftest.hpp"

using namespace qrel;

TEST_CASE("matrix serialization", "[json]") {
  SECTION("round trip preserves every entry") {
    Rng rng(81);
    const Mat m = random_matrix(rng, 3, 4);
    const Mat back = matrix_from_json(matrix_to_json(m));
    REQUIRE((m - back).norm() == 0.0);
  }
  SECTION("canonical dumps are reparse-stable") {
    Rng rng(82);
    const json j = matrix_to_json(random_matrix(rng, 2, 5));
    const std::string once = canonical_dump(j);
    REQUIRE(canonical_dump(json::parse(once)) == once);
  }
  SECTION("schema violations are rejected") {
    REQUIRE_THROWS_AS(matrix_from_json(json{{"rows", 2}, {"cols", 2}}), schema_error);
    REQUIRE_THROWS_AS(
        matrix_from_json(json{{"rows", 2}, {"cols", 1}, {"data", json::array({json::array({1.0})})}}),
        schema_error);
    json bad = matrix_to_json(Mat::Identity(2, 2));
    bad["data"][0][0] = std::numeric_limits<double>::quiet_NaN();
    REQUIRE_THROWS_AS(matrix_from_json(bad), schema_error);
  }
}

TEST_CASE("subspace and algebra serialization", "[json]") {
  Rng rng(83);
  SECTION("subspace round trip spans the same space") {
    const Subspace s = orthonormalize(3, 2, {random_matrix(rng, 3, 2), random_matrix(rng, 3, 2)});
    const Subspace back = subspace_from_json(subspace_to_json(s));
    REQUIRE(subspace_eq(s, back));
  }
  SECTION("block algebras keep their structural form") {
    const Algebra a = from_blocks(BlockSpec{{{2, 1}, {1, 2}}});
    const json j = algebra_to_json(a);
    REQUIRE(j.contains("blocks"));
    const Algebra back = algebra_from_json(j);
    REQUIRE(back.hilbert_dim == a.hilbert_dim);
    REQUIRE(subspace_eq(back.algebra, a.algebra));
    REQUIRE(subspace_eq(back.commutant, a.commutant));
  }
  SECTION("generated algebras serialize through their basis") {
    const Algebra a = from_generators({random_matrix(rng, 3, 3)}, 3);
    const Algebra back = algebra_from_json(algebra_to_json(a));
    REQUIRE(subspace_eq(back.algebra, a.algebra));
    REQUIRE(subspace_eq(back.commutant, a.commutant));
  }
  SECTION("unknown algebra forms are rejected") {
    REQUIRE_THROWS_AS(algebra_from_json(json{{"what", 1}}), schema_error);
  }
}

TEST_CASE("relation and homomorphism serialization", "[json]") {
  Rng rng(84);
  SECTION("relation round trip") {
    const Relation r = bimodule_closure(diag_algebra(2), diag_algebra(3),
                                        {random_matrix(rng, 3, 2)});
    const Relation back = relation_from_json(relation_to_json(r));
    REQUIRE(subspace_eq(back.space, r.space));
    REQUIRE(validate(back));
  }
  SECTION("homomorphism round trip keeps the basis alignment") {
    const Homomorphism pi = random_homomorphism(rng, 4);
    const Homomorphism back = hom_from_json(hom_to_json(pi));
    REQUIRE(validate(back));
    REQUIRE(hom_distance(back, pi) < 1e-9);
  }
  SECTION("classical containers round trip exactly") {
    ClassicalRelation f;
    f.x_size = 3;
    f.y_size = 2;
    f.pairs = {{0, 1}, {1, 2}};
    REQUIRE(classical_relation_from_json(classical_relation_to_json(f)).pairs == f.pairs);
    const ClassicalFunction g{3, 2, {1, 0, 1}};
    REQUIRE(classical_function_from_json(classical_function_to_json(g)).map == g.map);
  }
}

TEST_CASE("certificates", "[json]") {
  SECTION("overall is the conjunction of the checks") {
    Certificate cert;
    cert.command = "demo";
    cert.add("a", true, 0.0);
    REQUIRE(cert.overall());
    cert.add("b", false, 2.5);
    REQUIRE_FALSE(cert.overall());
  }
  SECTION("serialization is canonical and reparse-stable") {
    Certificate cert;
    cert.command = "demo";
    cert.inputs_digest = content_digest(json{{"x", 1}});
    cert.add("check", true, 1.25e-13);
    const std::string once = canonical_dump(certificate_to_json(cert));
    REQUIRE(canonical_dump(json::parse(once)) == once);
  }
  SECTION("digest distinguishes different inputs") {
    REQUIRE(content_digest(json{{"x", 1}}) != content_digest(json{{"x", 2}}));
    REQUIRE(content_digest(json{{"x", 1}}) == content_digest(json{{"x", 1}}));
  }
}
