// The correspondence between normal unital *-homomorphisms pi : N -> M and
// quantum functions from M to N, in both directions:
//
//   hom -> relation: the intertwiner space {v in B(H,K) : b v = v pi(b)}.
//   relation -> hom: a greedy extraction of partial isometries u_a in V with
//     u_a u_b* = 0 and sum u_a* u_a = 1, then b |-> sum u_a* b u_a.
//
// Dilation isometries w = sum u_a tensor e_a with pi(b) = w*(b tensor 1)w are
// built from the same family, together with the verification predicates for
// intertwining, equivalence of two dilations, and generation of the relation
// space by the dilation isometry.
#pragma once

#include <utility>
#include <vector>

#include "qrel/homomorphism.hpp"

namespace qrel {

/// A finite family {u_a} of partial isometries in B(H, K) with mutually
/// orthogonal final supports (u_a u_b* = 0) and initial projections summing
/// to the identity of H.
struct IsometryFamily {
  Index source_dim = 0;  // dim H
  Index target_dim = 0;  // dim K
  std::vector<Mat> members;

  Index size() const { return static_cast<Index>(members.size()); }
};

/// w in B(H, K tensor l2(I)) with w* w = 1_H.
struct DilationIsometry {
  Mat w;
  Index index_size = 0;  // |I|
};

/// Distinguished failure: the relation is not a quantum function, with the
/// violated inclusion named.
class not_quantum_function : public numeric_error {
  using numeric_error::numeric_error;
};

/// Totality analog: M' inside V* V.
inline CheckResult totality_check(const Relation& r, Tolerances tol = {}) {
  const Subspace vstar_v = product_span(adjoint_subspace(r.space, tol), r.space, tol);
  CheckResult out;
  out.residual = inclusion_residual(r.source.commutant, vstar_v);
  out.pass = out.residual <= tol.membership;
  return out;
}

/// Single-valuedness analog: V V* inside N'.
inline CheckResult single_valuedness_check(const Relation& r, Tolerances tol = {}) {
  const Subspace v_vstar = product_span(r.space, adjoint_subspace(r.space, tol), tol);
  CheckResult out;
  out.residual = inclusion_residual(v_vstar, r.target.commutant);
  out.pass = out.residual <= tol.membership;
  return out;
}

inline bool is_quantum_function(const Relation& r, Tolerances tol = {}) {
  return totality_check(r, tol).pass && single_valuedness_check(r, tol).pass;
}

/// The intertwiner space {v : b v = v pi(b) for all b in N}, computed as the
/// null space of the stacked vectorized map over a *-closed spanning set of N
/// (the algebra basis together with its adjoints). The result is a quantum
/// function from pi's target M to its source N.
inline Relation intertwiner_space(const Homomorphism& pi, Tolerances tol = {}) {
  require_hom_shapes(pi);
  const Index h = pi.target.hilbert_dim;  // dim H
  const Index k = pi.source.hilbert_dim;  // dim K
  const Index ambient = k * h;
  const Index n = pi.source.algebra.dim();

  const Mat id_h = Mat::Identity(h, h);
  const Mat id_k = Mat::Identity(k, k);
  Mat stacked(2 * n * ambient, ambient);
  Index row = 0;
  double scale = 0.0;
  for (Index i = 0; i < n; ++i) {
    const Mat& b = pi.source.algebra.basis[i];
    // vec(b v - v pi(b)) = (b kron 1_H - 1_K kron pi(b)^T) vec(v)
    stacked.middleRows(row, ambient) = kron(b, id_h) - kron(id_k, pi.images[i].transpose());
    row += ambient;
    stacked.middleRows(row, ambient) =
        kron(b.adjoint(), id_h) - kron(id_k, pi.images[i].adjoint().transpose());
    row += ambient;
    scale = std::max(scale, std::max(frobenius(b), frobenius(pi.images[i])));
  }
  // scalar sources make the whole map vanish up to roundoff; the operator
  // norms set the scale separating noise from rank
  const Subspace coords = null_space(stacked, tol, scale);
  std::vector<Mat> members;
  members.reserve(coords.basis.size());
  for (const Mat& c : coords.basis) members.push_back(unvec_rm(c.col(0), k, h));

  Relation r;
  r.source = pi.target;
  r.target = pi.source;
  r.space = orthonormalize(k, h, members, tol);
  return r;
}

struct FamilyCheck {
  bool partial_isometries = false;
  bool orthogonal_supports = false;
  bool complete = false;
  double isometry_residual = 0.0;
  double orthogonality_residual = 0.0;
  double completeness_residual = 0.0;

  bool pass() const { return partial_isometries && orthogonal_supports && complete; }
};

inline FamilyCheck check_family(const IsometryFamily& fam, Tolerances tol = {}) {
  FamilyCheck c;
  Mat sum = Mat::Zero(fam.source_dim, fam.source_dim);
  for (std::size_t a = 0; a < fam.members.size(); ++a) {
    const Mat& u = fam.members[a];
    c.isometry_residual = std::max(c.isometry_residual, frobenius(u * u.adjoint() * u - u));
    for (std::size_t b = 0; b < a; ++b)
      c.orthogonality_residual =
          std::max(c.orthogonality_residual, frobenius(u * fam.members[b].adjoint()));
    sum += u.adjoint() * u;
  }
  c.completeness_residual = frobenius(sum - Mat::Identity(fam.source_dim, fam.source_dim));
  c.partial_isometries = c.isometry_residual <= tol.eq;
  c.orthogonal_supports = c.orthogonality_residual <= tol.eq;
  c.complete = c.completeness_residual <= tol.eq;
  return c;
}

/// Greedy extraction of a complete family of partial isometries in V.
///
/// Maintains the defect projection p = 1 - sum u* u. While p is nonzero, the
/// subspace V p is nonzero (1 lies in M' and hence in V* V); among the raw
/// candidates {v_i p} over V's basis the one with the largest Frobenius norm
/// is selected (ties to lowest index) and its polar partial isometry joins
/// the family. Each new member stays inside V and has final support
/// orthogonal to all previous members; the defect rank strictly decreases,
/// so the loop ends after at most dim H rounds.
inline IsometryFamily extract_family(const Relation& r, Tolerances tol = {}) {
  require_relation_shapes(r);
  const Index h = r.source.hilbert_dim;
  const Index k = r.target.hilbert_dim;

  IsometryFamily fam;
  fam.source_dim = h;
  fam.target_dim = k;

  Mat defect = Mat::Identity(h, h);
  for (Index round = 0; round <= h; ++round) {
    if (frobenius(defect) <= tol.rank) break;
    if (round == h)
      throw numeric_error("extract_family: defect did not vanish after dim H rounds");

    Index best = -1;
    double best_norm = 0.0;
    std::vector<Mat> candidates;
    candidates.reserve(r.space.basis.size());
    for (Index i = 0; i < r.space.dim(); ++i) {
      candidates.push_back(r.space.basis[i] * defect);
      const double norm = frobenius(candidates.back());
      if (norm > best_norm) {  // strict: ties resolve to the lowest index
        best_norm = norm;
        best = i;
      }
    }
    if (best < 0 || best_norm <= tol.rank)
      throw not_quantum_function(
          "extract_family: V p vanished while the defect is nonzero; "
          "the totality inclusion M' in V*V fails");

    const Mat u = polar_partial_isometry(candidates[best], tol).partial_isometry;
    if (!contains(r.space, u, tol))
      throw numeric_error("extract_family: polar partial isometry escaped V (ill-conditioned input)");
    for (const Mat& prev : fam.members)
      if (frobenius(u * prev.adjoint()) > tol.eq)
        throw numeric_error("extract_family: final supports failed to stay orthogonal");

    fam.members.push_back(u);
    defect -= u.adjoint() * u;
  }

  const FamilyCheck fc = check_family(fam, tol);
  if (!fc.pass())
    throw numeric_error("extract_family: extracted family violates its invariants");
  return fam;
}

/// b |-> sum_a u_a* b u_a over the target algebra's basis. Independent of the
/// family used; the result is a homomorphism from r.target back to r.source.
inline Homomorphism induced_homomorphism(const Relation& r, const IsometryFamily& fam) {
  if (fam.source_dim != r.source.hilbert_dim || fam.target_dim != r.target.hilbert_dim)
    throw shape_error("induced_homomorphism: family does not match the relation's spaces");
  Homomorphism pi;
  pi.source = r.target;
  pi.target = r.source;
  pi.images.reserve(r.target.algebra.basis.size());
  for (const Mat& b : r.target.algebra.basis) {
    Mat im = Mat::Zero(r.source.hilbert_dim, r.source.hilbert_dim);
    for (const Mat& u : fam.members) im += u.adjoint() * b * u;
    pi.images.push_back(std::move(im));
  }
  return pi;
}

inline Homomorphism induced_homomorphism(const Relation& r, Tolerances tol = {}) {
  return induced_homomorphism(r, extract_family(r, tol));
}

/// w = sum_a u_a tensor e_a, interleaved so that row (k*|I| + a) of w carries
/// component k of u_a.
inline DilationIsometry isometry_from_family(const IsometryFamily& fam) {
  if (fam.members.empty()) throw shape_error("isometry_from_family: empty family");
  for (const Mat& u : fam.members)
    if (u.rows() != fam.target_dim || u.cols() != fam.source_dim)
      throw shape_error("isometry_from_family: member shape does not match the family dims");
  DilationIsometry d;
  d.index_size = fam.size();
  d.w = Mat::Zero(fam.target_dim * d.index_size, fam.source_dim);
  for (Index a = 0; a < d.index_size; ++a)
    d.w += kron(fam.members[a], basis_column(d.index_size, a));
  return d;
}

/// Recover the family members from a dilation isometry by un-interleaving its
/// rows; target_dim = rows / index_size.
inline IsometryFamily family_from_isometry(const DilationIsometry& d) {
  if (d.index_size < 1 || d.w.rows() % d.index_size != 0)
    throw shape_error("family_from_isometry: rows are not a multiple of the index size");
  IsometryFamily fam;
  fam.target_dim = d.w.rows() / d.index_size;
  fam.source_dim = d.w.cols();
  for (Index a = 0; a < d.index_size; ++a) {
    Mat u(fam.target_dim, fam.source_dim);
    for (Index k = 0; k < fam.target_dim; ++k) u.row(k) = d.w.row(k * d.index_size + a);
    fam.members.push_back(std::move(u));
  }
  return fam;
}

/// Dilation of pi: an isometry w with pi(b) = w*(b tensor 1)w, built from the
/// family extracted out of pi's intertwiner space.
inline DilationIsometry dilate(const Homomorphism& pi, Tolerances tol = {}) {
  return isometry_from_family(extract_family(intertwiner_space(pi, tol), tol));
}

inline CheckResult isometry_check(const DilationIsometry& d, Tolerances tol = {}) {
  CheckResult out;
  out.residual = frobenius(d.w.adjoint() * d.w - Mat::Identity(d.w.cols(), d.w.cols()));
  out.pass = out.residual <= tol.eq;
  return out;
}

/// (b tensor 1) w = w pi(b) for every source basis element b.
inline CheckResult intertwine_check(const DilationIsometry& d, const Homomorphism& pi,
                                    Tolerances tol = {}) {
  const Index k = pi.source.hilbert_dim;
  if (d.w.rows() != k * d.index_size || d.w.cols() != pi.target.hilbert_dim)
    throw shape_error("intertwine_check: isometry shape does not match the homomorphism");
  const Mat id_l = Mat::Identity(d.index_size, d.index_size);
  CheckResult out;
  out.pass = true;
  for (Index i = 0; i < pi.source.algebra.dim(); ++i) {
    const double res =
        frobenius(kron(pi.source.algebra.basis[i], id_l) * d.w - d.w * pi.images[i]);
    out.residual = std::max(out.residual, res);
    out.pass = out.pass && res <= tol.eq;
  }
  return out;
}

inline bool verify_intertwine(const DilationIsometry& d, const Homomorphism& pi,
                              Tolerances tol = {}) {
  return intertwine_check(d, pi, tol).pass;
}

/// Pad a family with zero partial isometries up to a common index size; all
/// family invariants survive.
inline IsometryFamily pad_family(IsometryFamily fam, Index size) {
  while (fam.size() < size)
    fam.members.push_back(Mat::Zero(fam.target_dim, fam.source_dim));
  return fam;
}

/// Two dilation isometries of the same homomorphism differ by an element of
/// the amplified commutant: w0 w1* commutes with every b tensor 1. Families
/// are padded with zero members to a common index size first.
inline CheckResult dilation_equivalence_check(const DilationIsometry& w0,
                                              const DilationIsometry& w1,
                                              const Homomorphism& pi, Tolerances tol = {}) {
  const Index size = std::max(w0.index_size, w1.index_size);
  const Mat a = isometry_from_family(pad_family(family_from_isometry(w0), size)).w;
  const Mat b = isometry_from_family(pad_family(family_from_isometry(w1), size)).w;
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw shape_error("dilation_equivalence_check: isometries disagree after padding");
  const Mat cross = a * b.adjoint();
  const Mat id_l = Mat::Identity(size, size);
  CheckResult out;
  out.pass = true;
  for (const Mat& nb : pi.source.algebra.basis) {
    const Mat amp = kron(nb, id_l);
    const double res = frobenius(amp * cross - cross * amp);
    out.residual = std::max(out.residual, res);
    out.pass = out.pass && res <= tol.eq;
  }
  return out;
}

inline bool verify_dilation_equivalence(const DilationIsometry& w0, const DilationIsometry& w1,
                                        const Homomorphism& pi, Tolerances tol = {}) {
  return dilation_equivalence_check(w0, w1, pi, tol).pass;
}

/// Generation identity: span (N' tensor B(l2(I))) w M' equals
/// span {v_i tensor e_a}; both sides are built explicitly with kron.
inline CheckResult generation_check(const Relation& r, const DilationIsometry& d,
                                    Tolerances tol = {}) {
  const Index k = r.target.hilbert_dim;
  const Index h = r.source.hilbert_dim;
  const Index l = d.index_size;
  if (d.w.rows() != k * l || d.w.cols() != h)
    throw shape_error("generation_check: isometry does not match the relation's ambient spaces");

  std::vector<Mat> rhs;
  rhs.reserve(r.space.basis.size() * l);
  for (const Mat& v : r.space.basis)
    for (Index a = 0; a < l; ++a) rhs.push_back(kron(v, basis_column(l, a)));
  const Subspace rhs_span = orthonormalize(k * l, h, rhs, tol);

  std::vector<Mat> lhs;
  lhs.reserve(r.target.commutant.basis.size() * l * l * r.source.commutant.basis.size());
  std::vector<Mat> wmp;
  wmp.reserve(r.source.commutant.basis.size());
  for (const Mat& mp : r.source.commutant.basis) wmp.push_back(d.w * mp);
  for (const Mat& np : r.target.commutant.basis)
    for (Index a = 0; a < l; ++a)
      for (Index b = 0; b < l; ++b) {
        const Mat amp = kron(np, matrix_unit(l, l, a, b));
        for (const Mat& right : wmp) lhs.push_back(amp * right);
      }
  const Subspace lhs_span = orthonormalize(k * l, h, lhs, tol);

  CheckResult out;
  out.residual = equality_residual(lhs_span, rhs_span);
  out.pass = lhs_span.dim() == rhs_span.dim() && out.residual <= tol.membership;
  return out;
}

inline bool verify_generation(const Relation& r, const DilationIsometry& d, Tolerances tol = {}) {
  return generation_check(r, d, tol).pass;
}

}  // namespace qrel
