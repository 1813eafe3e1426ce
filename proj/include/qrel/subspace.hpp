// Operator subspaces of B(H, K) with Hilbert-Schmidt geometry: spans,
// projections, membership, intersections, null spaces and the polar
// decomposition. In finite dimension the ultraweak closure of a span is the
// span itself, so a subspace is just an orthonormal basis of matrices.
#pragma once

#include <Eigen/SVD>

#include <algorithm>
#include <utility>
#include <vector>

#include "qrel/matrix.hpp"

namespace qrel {

/// A linear subspace of B(C^domain_dim, C^codomain_dim), kept as an
/// orthonormal basis under <A,B> = trace(A* B). Elements are
/// codomain_dim x domain_dim matrices.
struct Subspace {
  Index domain_dim = 0;    // dim H
  Index codomain_dim = 0;  // dim K
  std::vector<Mat> basis;

  Index dim() const { return static_cast<Index>(basis.size()); }
  bool is_zero() const { return basis.empty(); }
  bool is_square() const { return domain_dim == codomain_dim; }

  void require_element_shape(const Mat& m, const char* what) const {
    if (m.rows() != codomain_dim || m.cols() != domain_dim)
      throw shape_error(std::string(what) + ": element shape does not match subspace ambient space");
  }
};

inline void require_same_ambient(const Subspace& a, const Subspace& b, const char* what) {
  if (a.domain_dim != b.domain_dim || a.codomain_dim != b.codomain_dim)
    throw shape_error(std::string(what) + ": subspaces live in different ambient spaces");
}

/// Modified Gram-Schmidt with one re-orthogonalization pass. Inputs whose
/// residual after projection is <= rank_tol * (max input Frobenius norm) are
/// dropped; basis order follows first-appearance order of the survivors.
inline Subspace orthonormalize(Index codomain_dim, Index domain_dim,
                               const std::vector<Mat>& vectors, Tolerances tol = {}) {
  if (codomain_dim < 1 || domain_dim < 1)
    throw shape_error("orthonormalize: ambient dimensions must be positive");
  Subspace s;
  s.domain_dim = domain_dim;
  s.codomain_dim = codomain_dim;

  double max_norm = 0.0;
  for (const Mat& v : vectors) {
    s.require_element_shape(v, "orthonormalize");
    max_norm = std::max(max_norm, frobenius(v));
  }
  const double drop = tol.rank * max_norm;

  for (const Mat& v : vectors) {
    Mat r = v;
    for (const Mat& b : s.basis) r -= hs_inner(b, r) * b;
    for (const Mat& b : s.basis) r -= hs_inner(b, r) * b;  // re-orthogonalize once
    const double norm = frobenius(r);
    if (norm > drop && norm > 0.0) s.basis.push_back(r / norm);
  }
  return s;
}

/// Span of the input matrices, inferring the ambient space from the first.
inline Subspace orthonormalize(const std::vector<Mat>& vectors, Tolerances tol = {}) {
  if (vectors.empty()) throw shape_error("orthonormalize: cannot infer ambient space from empty input");
  return orthonormalize(vectors.front().rows(), vectors.front().cols(), vectors, tol);
}

/// Orthogonal projection of m onto s.
inline Mat project(const Subspace& s, const Mat& m) {
  s.require_element_shape(m, "project");
  Mat p = Mat::Zero(s.codomain_dim, s.domain_dim);
  for (const Mat& b : s.basis) p += hs_inner(b, m) * b;
  return p;
}

/// Relative projection residual ||m - P_s m||_F / max(1, ||m||_F).
inline double membership_residual(const Subspace& s, const Mat& m) {
  return frobenius(m - project(s, m)) / std::max(1.0, frobenius(m));
}

inline bool contains(const Subspace& s, const Mat& m, Tolerances tol = {}) {
  return membership_residual(s, m) <= tol.membership;
}

/// Worst membership residual of a's basis inside b; 0 for the zero subspace.
inline double inclusion_residual(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b, "inclusion_residual");
  double worst = 0.0;
  for (const Mat& v : a.basis) worst = std::max(worst, membership_residual(b, v));
  return worst;
}

inline bool subspace_leq(const Subspace& a, const Subspace& b, Tolerances tol = {}) {
  return inclusion_residual(a, b) <= tol.membership;
}

inline bool subspace_eq(const Subspace& a, const Subspace& b, Tolerances tol = {}) {
  return a.dim() == b.dim() && subspace_leq(a, b, tol) && subspace_leq(b, a, tol);
}

inline double equality_residual(const Subspace& a, const Subspace& b) {
  return std::max(inclusion_residual(a, b), inclusion_residual(b, a));
}

/// Orthonormal basis of {x : m x = 0} as column vectors in C^cols. A singular
/// value sigma counts as zero iff sigma <= rank_tol * max(sigma_max,
/// scale_floor); the zero matrix yields the full space. Callers solving maps
/// that may be identically zero up to roundoff (commutators, intertwiners)
/// pass the natural operator scale as the floor so noise-level sigma_max does
/// not manufacture rank.
inline Subspace null_space(const Mat& m, Tolerances tol = {}, double scale_floor = 0.0) {
  const Index n = m.cols();
  Subspace s;
  s.domain_dim = 1;
  s.codomain_dim = n;
  if (n == 0) return s;
  if (m.rows() == 0) {
    for (Index j = 0; j < n; ++j) s.basis.push_back(basis_column(n, j));
    return s;
  }
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double cut = tol.rank * std::max(sigma.size() > 0 ? sigma(0) : 0.0, scale_floor);
  Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cut) ++rank;
  for (Index j = rank; j < n; ++j) s.basis.push_back(svd.matrixV().col(j));
  return s;
}

/// Rank of m with the same relative cutoff used by null_space.
inline Index svd_rank(const Mat& m, Tolerances tol = {}) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& sigma = svd.singularValues();
  const double cut = tol.rank * (sigma.size() > 0 ? sigma(0) : 0.0);
  Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cut) ++rank;
  return rank;
}

struct PolarDecomposition {
  Mat partial_isometry;  // u with u u* u = u, range(u) = range(m)
  Mat modulus;           // |m| = (m* m)^(1/2) restricted to the support of m
};

/// m = u |m| via the singular value decomposition, keeping singular values
/// above rank_tol * sigma_max.
inline PolarDecomposition polar_partial_isometry(const Mat& m, Tolerances tol = {}) {
  if (frobenius(m) <= tol.rank) throw numeric_error("polar_partial_isometry: zero input");
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double cut = tol.rank * sigma(0);
  Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cut) ++rank;
  if (rank == 0) throw numeric_error("polar_partial_isometry: zero input");
  const Mat ur = svd.matrixU().leftCols(rank);
  const Mat vr = svd.matrixV().leftCols(rank);
  PolarDecomposition p;
  p.partial_isometry = ur * vr.adjoint();
  p.modulus = vr * sigma.head(rank).asDiagonal() * vr.adjoint();
  return p;
}

/// span{a_i b_j} over both bases.
inline Subspace product_span(const Subspace& a, const Subspace& b, Tolerances tol = {}) {
  if (a.domain_dim != b.codomain_dim)
    throw shape_error("product_span: inner dimensions do not match");
  std::vector<Mat> products;
  products.reserve(a.basis.size() * b.basis.size());
  for (const Mat& x : a.basis)
    for (const Mat& y : b.basis) products.push_back(x * y);
  return orthonormalize(a.codomain_dim, b.domain_dim, products, tol);
}

/// span{a_i*}; involutive up to subspace equality.
inline Subspace adjoint_subspace(const Subspace& a, Tolerances tol = {}) {
  std::vector<Mat> adjoints;
  adjoints.reserve(a.basis.size());
  for (const Mat& x : a.basis) adjoints.push_back(x.adjoint());
  return orthonormalize(a.domain_dim, a.codomain_dim, adjoints, tol);
}

/// Intersection as the joint null space of [I - P_a; I - P_b] on row-major
/// coordinates of the ambient space.
inline Subspace intersect(const Subspace& a, const Subspace& b, Tolerances tol = {}) {
  require_same_ambient(a, b, "intersect");
  const Index ambient = a.codomain_dim * a.domain_dim;
  Mat pa = Mat::Zero(ambient, ambient);
  for (const Mat& v : a.basis) {
    const CVec c = vec_rm(v);
    pa += c * c.adjoint();
  }
  Mat pb = Mat::Zero(ambient, ambient);
  for (const Mat& v : b.basis) {
    const CVec c = vec_rm(v);
    pb += c * c.adjoint();
  }
  Mat stacked(2 * ambient, ambient);
  stacked.topRows(ambient) = Mat::Identity(ambient, ambient) - pa;
  stacked.bottomRows(ambient) = Mat::Identity(ambient, ambient) - pb;
  // the stacked complements of projections have natural scale 1
  const Subspace coords = null_space(stacked, tol, 1.0);
  std::vector<Mat> members;
  members.reserve(coords.basis.size());
  for (const Mat& c : coords.basis)
    members.push_back(unvec_rm(c.col(0), a.codomain_dim, a.domain_dim));
  return orthonormalize(a.codomain_dim, a.domain_dim, members, tol);
}

/// All matrix units E_ij: the full ambient space B(C^cols, C^rows).
inline Subspace full_matrix_space(Index rows, Index cols) {
  Subspace s;
  s.domain_dim = cols;
  s.codomain_dim = rows;
  s.basis.reserve(rows * cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) s.basis.push_back(matrix_unit(rows, cols, i, j));
  return s;
}

}  // namespace qrel
