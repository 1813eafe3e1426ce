#include <catch2/catch.hpp>

#include "oracles.hpp"
#include "qrel/subspace.hpp"

using namespace qrel;

TEST_CASE("hs_inner", "[matrix]") {
  SECTION("identity against identity is the trace") {
    const Mat id = Mat::Identity(2, 2);
    REQUIRE(hs_inner(id, id) == cplx(2.0, 0.0));
  }
  SECTION("distinct matrix units are orthogonal") {
    REQUIRE(hs_inner(matrix_unit(2, 2, 0, 0), matrix_unit(2, 2, 0, 1)) == cplx(0.0, 0.0));
  }
  SECTION("norm squared matches the entrywise sum") {
    Rng rng(7);
    const Mat a = random_matrix(rng, 3, 4);
    double entry_sum = 0.0;
    for (Index i = 0; i < a.rows(); ++i)
      for (Index j = 0; j < a.cols(); ++j) entry_sum += std::norm(a(i, j));
    REQUIRE(hs_inner(a, a).real() == Approx(entry_sum).epsilon(1e-12));
    REQUIRE(std::abs(hs_inner(a, a).imag()) < 1e-12);
  }
  SECTION("conjugate symmetry") {
    Rng rng(8);
    const Mat a = random_matrix(rng, 3, 3);
    const Mat b = random_matrix(rng, 3, 3);
    REQUIRE(std::abs(hs_inner(a, b) - std::conj(hs_inner(b, a))) < 1e-12);
  }
  SECTION("shape mismatch throws") {
    REQUIRE_THROWS_AS(hs_inner(Mat::Zero(2, 2), Mat::Zero(2, 3)), shape_error);
  }
}

TEST_CASE("kron", "[matrix]") {
  SECTION("identities compose") {
    REQUIRE((kron(Mat::Identity(2, 2), Mat::Identity(3, 3)) - Mat::Identity(6, 6)).norm() == 0.0);
  }
  SECTION("matrix units land at the row-major index") {
    const Mat k = kron(matrix_unit(2, 2, 0, 0), matrix_unit(2, 2, 0, 0));
    REQUIRE((k - matrix_unit(4, 4, 0, 0)).norm() == 0.0);
    const Mat k2 = kron(matrix_unit(2, 2, 1, 0), matrix_unit(2, 2, 0, 1));
    REQUIRE((k2 - matrix_unit(4, 4, 2, 1)).norm() == 0.0);
  }
  SECTION("mixed product law on random inputs") {
    Rng rng(9);
    const Mat a = random_matrix(rng, 2, 2), b = random_matrix(rng, 2, 2);
    const Mat c = random_matrix(rng, 2, 2), d = random_matrix(rng, 2, 2);
    REQUIRE((kron(a, b) * kron(c, d) - kron(a * c, b * d)).norm() < 1e-12);
  }
  SECTION("vec_rm intertwines multiplication") {
    Rng rng(10);
    const Mat a = random_matrix(rng, 3, 2);
    const Mat x = random_matrix(rng, 2, 4);
    const Mat b = random_matrix(rng, 4, 2);
    const CVec lhs = vec_rm(a * x * b);
    const CVec rhs = kron(a, b.transpose()) * vec_rm(x);
    REQUIRE((lhs - rhs).norm() < 1e-12);
  }
}

TEST_CASE("null_space", "[matrix]") {
  SECTION("identity has no kernel") {
    REQUIRE(null_space(Mat::Identity(3, 3)).dim() == 0);
  }
  SECTION("zero matrix has full kernel") {
    const Subspace s = null_space(Mat::Zero(4, 4));
    REQUIRE(s.dim() == 4);
    REQUIRE(s.codomain_dim == 4);
  }
  SECTION("constructed rank-2 matrix has a 2-dimensional kernel") {
    Rng rng(11);
    const Mat m = random_matrix(rng, 4, 2) * random_matrix(rng, 2, 4);
    const Subspace s = null_space(m);
    REQUIRE(s.dim() == 2);
    for (const Mat& x : s.basis) REQUIRE((m * x).norm() < 1e-10);
  }
}

TEST_CASE("polar_partial_isometry", "[matrix]") {
  SECTION("scaled matrix unit") {
    const PolarDecomposition p = polar_partial_isometry(3.0 * matrix_unit(2, 2, 0, 1));
    REQUIRE((p.partial_isometry - matrix_unit(2, 2, 0, 1)).norm() < 1e-12);
    REQUIRE((p.modulus - 3.0 * matrix_unit(2, 2, 1, 1)).norm() < 1e-12);
  }
  SECTION("unitary input is its own partial isometry") {
    Rng rng(12);
    const Mat u = random_unitary(rng, 3);
    const PolarDecomposition p = polar_partial_isometry(u);
    REQUIRE((p.partial_isometry - u).norm() < 1e-10);
    REQUIRE((p.modulus - Mat::Identity(3, 3)).norm() < 1e-10);
  }
  SECTION("u*u is the support projection from the same SVD") {
    Rng rng(13);
    const Mat m = random_matrix(rng, 3, 2);
    const PolarDecomposition p = polar_partial_isometry(m);
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Mat vr = svd.matrixV();  // full column rank almost surely
    const Mat support = vr * vr.adjoint();
    REQUIRE((p.partial_isometry.adjoint() * p.partial_isometry - support).norm() < 1e-10);
  }
  SECTION("reconstruction and partial isometry identities") {
    Rng rng(14);
    const Mat m = random_matrix(rng, 4, 3);
    const PolarDecomposition p = polar_partial_isometry(m);
    const Mat& u = p.partial_isometry;
    REQUIRE((u * u.adjoint() * u - u).norm() < 1e-10);
    REQUIRE((u * p.modulus - m).norm() < 1e-8 * m.norm());
  }
  SECTION("zero input throws") {
    REQUIRE_THROWS_AS(polar_partial_isometry(Mat::Zero(2, 2)), numeric_error);
  }
}
