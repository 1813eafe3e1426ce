// Finite-dimensional von Neumann algebras: block constructions with known
// commutants, numerically generated *-algebras, and commutants as null spaces
// of the vectorized commutator map.
#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "qrel/subspace.hpp"

namespace qrel {

struct MatrixBlock {
  Index n = 1;  // block size: a full M_n factor
  Index m = 1;  // multiplicity of the factor in the representation
};

/// Direct sum of full matrix factors M_{n_i} acting with multiplicity m_i,
/// i.e. H = direct_sum_i (C^{n_i} tensor C^{m_i}).
struct BlockSpec {
  std::vector<MatrixBlock> blocks;

  Index hilbert_dim() const {
    return std::accumulate(blocks.begin(), blocks.end(), Index{0},
                           [](Index acc, const MatrixBlock& b) { return acc + b.n * b.m; });
  }
  void require_valid() const {
    if (blocks.empty()) throw std::invalid_argument("BlockSpec: no blocks");
    for (const MatrixBlock& b : blocks)
      if (b.n < 1 || b.m < 1) throw std::invalid_argument("BlockSpec: block sizes and multiplicities must be positive");
  }
};

/// A unital *-subalgebra of B(H) together with its commutant, both as
/// orthonormal bases. Instances come out of from_blocks / from_generators and
/// are immutable afterwards.
struct Algebra {
  Index hilbert_dim = 0;
  Subspace algebra;    // square, codomain_dim = domain_dim = hilbert_dim
  Subspace commutant;  // same ambient space
  std::string label;
  std::optional<BlockSpec> blocks;  // retained when structurally constructed

  Mat identity() const { return Mat::Identity(hilbert_dim, hilbert_dim); }
};

/// Commutant {X : [X, g] = 0 and [X, g*] = 0 for every generator}, computed
/// as the null space of the stacked row-major-vectorized commutator map.
/// Adjoint constraints are included so non-*-closed generator lists still
/// yield the commutant of the generated *-algebra.
inline Subspace commutant_of(const std::vector<Mat>& generators, Index dim, Tolerances tol = {}) {
  if (dim < 1) throw shape_error("commutant_of: dimension must be positive");
  for (const Mat& g : generators)
    if (g.rows() != dim || g.cols() != dim)
      throw shape_error("commutant_of: generator dimension mismatch");
  if (generators.empty()) return full_matrix_space(dim, dim);

  const Index ambient = dim * dim;
  const Mat id = Mat::Identity(dim, dim);
  Mat stacked(2 * static_cast<Index>(generators.size()) * ambient, ambient);
  Index row = 0;
  double scale = 0.0;
  for (const Mat& g : generators) {
    // vec(Xg - gX) = (I kron g^T - g kron I) vec(X)
    stacked.middleRows(row, ambient) = kron(id, g.transpose()) - kron(g, id);
    row += ambient;
    const Mat ga = g.adjoint();
    stacked.middleRows(row, ambient) = kron(id, ga.transpose()) - kron(ga, id);
    row += ambient;
    scale = std::max(scale, frobenius(g));
  }
  // near-central generators produce commutator blocks that are zero up to
  // roundoff; the generator norms set the scale that separates noise from rank
  const Subspace coords = null_space(stacked, tol, scale);
  std::vector<Mat> members;
  members.reserve(coords.basis.size());
  for (const Mat& c : coords.basis) members.push_back(unvec_rm(c.col(0), dim, dim));
  return orthonormalize(dim, dim, members, tol);
}

/// Structured construction: algebra basis = matrix units of M_{n_i} tensored
/// with 1_{m_i}, commutant basis = 1_{n_i} tensored with matrix units of
/// M_{m_i}, both embedded block-diagonally and Frobenius-normalized. Gives
/// dim(algebra) = sum n_i^2 and dim(commutant) = sum m_i^2 exactly.
inline Algebra from_blocks(const BlockSpec& spec, Tolerances tol = {}) {
  spec.require_valid();
  tol.require_usable();
  const Index dim = spec.hilbert_dim();

  Algebra out;
  out.hilbert_dim = dim;
  out.blocks = spec;
  out.algebra.domain_dim = out.algebra.codomain_dim = dim;
  out.commutant.domain_dim = out.commutant.codomain_dim = dim;

  Index offset = 0;
  for (const MatrixBlock& blk : spec.blocks) {
    const Index span = blk.n * blk.m;
    const double alg_scale = 1.0 / std::sqrt(static_cast<double>(blk.m));
    for (Index p = 0; p < blk.n; ++p)
      for (Index q = 0; q < blk.n; ++q) {
        Mat e = Mat::Zero(dim, dim);
        for (Index s = 0; s < blk.m; ++s)
          e(offset + p * blk.m + s, offset + q * blk.m + s) = alg_scale;
        out.algebra.basis.push_back(std::move(e));
      }
    const double com_scale = 1.0 / std::sqrt(static_cast<double>(blk.n));
    for (Index s = 0; s < blk.m; ++s)
      for (Index t = 0; t < blk.m; ++t) {
        Mat e = Mat::Zero(dim, dim);
        for (Index p = 0; p < blk.n; ++p)
          e(offset + p * blk.m + s, offset + p * blk.m + t) = com_scale;
        out.commutant.basis.push_back(std::move(e));
      }
    offset += span;
  }
  return out;
}

/// Smallest unital *-closed subspace containing the generators and closed
/// under products, grown by product_span until the dimension stabilizes.
/// The commutant comes from commutant_of; double-commutant consistency is
/// asserted before returning.
inline Algebra from_generators(const std::vector<Mat>& generators, Index dim, Tolerances tol = {}) {
  if (dim < 1) throw shape_error("from_generators: dimension must be positive");
  tol.require_usable();
  std::vector<Mat> seed;
  seed.push_back(Mat::Identity(dim, dim));
  for (const Mat& g : generators) {
    if (g.rows() != dim || g.cols() != dim)
      throw shape_error("from_generators: generator dimension mismatch");
    seed.push_back(g);
    seed.push_back(g.adjoint());
  }
  Subspace span = orthonormalize(dim, dim, seed, tol);
  for (Index iter = 0; iter <= dim * dim; ++iter) {
    std::vector<Mat> grown = span.basis;
    for (const Mat& x : span.basis)
      for (const Mat& y : span.basis) grown.push_back(x * y);
    Subspace next = orthonormalize(dim, dim, grown, tol);
    if (next.dim() == span.dim()) {
      span = std::move(next);
      break;
    }
    span = std::move(next);
    if (iter == dim * dim)
      throw numeric_error("from_generators: product closure did not stabilize");
  }

  Algebra out;
  out.hilbert_dim = dim;
  out.algebra = std::move(span);
  out.commutant = commutant_of(out.algebra.basis, dim, tol);
  const Subspace double_comm = commutant_of(out.commutant.basis, dim, tol);
  if (!subspace_eq(double_comm, out.algebra, tol))
    throw numeric_error("from_generators: double commutant does not reproduce the generated algebra");
  return out;
}

/// Center = algebra intersected with its commutant.
inline Subspace center(const Algebra& a, Tolerances tol = {}) {
  return intersect(a.algebra, a.commutant, tol);
}

/// Same algebra on the same Hilbert space (label-blind).
inline bool same_algebra(const Algebra& a, const Algebra& b, Tolerances tol = {}) {
  return a.hilbert_dim == b.hilbert_dim && subspace_eq(a.algebra, b.algebra, tol);
}

struct AlgebraCheck {
  bool unital = false;
  bool star_closed = false;
  bool product_closed = false;
  bool commutes = false;
  bool double_commutant = false;
  double worst_residual = 0.0;

  bool pass() const { return unital && star_closed && product_closed && commutes && double_commutant; }
};

/// Full structural validation; used by tests and certificates rather than on
/// every construction.
inline AlgebraCheck check_algebra(const Algebra& a, Tolerances tol = {}) {
  AlgebraCheck c;
  double worst = 0.0;
  const Mat id = a.identity();

  double r = membership_residual(a.algebra, id);
  worst = std::max(worst, r);
  c.unital = r <= tol.membership;
  r = membership_residual(a.commutant, id);
  worst = std::max(worst, r);
  c.unital = c.unital && r <= tol.membership;

  c.star_closed = true;
  for (const Mat& x : a.algebra.basis) {
    r = membership_residual(a.algebra, x.adjoint());
    worst = std::max(worst, r);
    c.star_closed = c.star_closed && r <= tol.membership;
  }
  c.product_closed = true;
  for (const Mat& x : a.algebra.basis)
    for (const Mat& y : a.algebra.basis) {
      r = membership_residual(a.algebra, x * y);
      worst = std::max(worst, r);
      c.product_closed = c.product_closed && r <= tol.membership;
    }
  c.commutes = true;
  for (const Mat& x : a.algebra.basis)
    for (const Mat& y : a.commutant.basis) {
      const double comm = frobenius(x * y - y * x);
      worst = std::max(worst, comm);
      c.commutes = c.commutes && comm <= tol.eq;
    }
  const Subspace double_comm = commutant_of(a.commutant.basis, a.hilbert_dim, tol);
  r = equality_residual(double_comm, a.algebra);
  worst = std::max(worst, r);
  c.double_commutant = double_comm.dim() == a.algebra.dim() && r <= tol.membership;

  c.worst_residual = worst;
  return c;
}

}  // namespace qrel
