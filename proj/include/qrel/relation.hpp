// Quantum relations between von Neumann algebras: commutant bimodules
// V in B(H, K) with N' V M' inside V, their calculus (diagonal, inverse,
// composition) and the four order-theoretic predicates.
#pragma once

#include <vector>

#include "qrel/algebra.hpp"

namespace qrel {

/// A quantum relation from the algebra `source` (M on H) to `target`
/// (N on K): an operator subspace of B(H, K) invariant under left
/// multiplication by N' and right multiplication by M'.
struct Relation {
  Algebra source;  // M on H
  Algebra target;  // N on K
  Subspace space;  // domain_dim = dim H, codomain_dim = dim K
};

inline void require_relation_shapes(const Relation& r) {
  if (r.space.domain_dim != r.source.hilbert_dim || r.space.codomain_dim != r.target.hilbert_dim)
    throw shape_error("relation: space ambient does not match the two algebras");
}

struct CheckResult {
  bool pass = false;
  double residual = 0.0;
};

/// Bimodule check: every n' v m' over basis triples stays inside the space.
inline CheckResult bimodule_check(const Relation& r, Tolerances tol = {}) {
  require_relation_shapes(r);
  CheckResult out;
  out.pass = true;
  for (const Mat& np : r.target.commutant.basis)
    for (const Mat& v : r.space.basis)
      for (const Mat& mp : r.source.commutant.basis) {
        const double res = membership_residual(r.space, np * v * mp);
        out.residual = std::max(out.residual, res);
        out.pass = out.pass && res <= tol.membership;
      }
  return out;
}

inline bool validate(const Relation& r, Tolerances tol = {}) {
  return bimodule_check(r, tol).pass;
}

/// Smallest bimodule containing the seed: one pass of {n' s m'} suffices
/// because both commutants are unital algebras.
inline Relation bimodule_closure(const Algebra& source, const Algebra& target,
                                 const std::vector<Mat>& seed, Tolerances tol = {}) {
  Relation r;
  r.source = source;
  r.target = target;
  std::vector<Mat> generated;
  generated.reserve(seed.size() * target.commutant.basis.size() * source.commutant.basis.size());
  for (const Mat& s : seed) {
    if (s.rows() != target.hilbert_dim || s.cols() != source.hilbert_dim)
      throw shape_error("bimodule_closure: seed shape does not match the algebras");
    for (const Mat& np : target.commutant.basis)
      for (const Mat& mp : source.commutant.basis) generated.push_back(np * s * mp);
  }
  r.space = orthonormalize(target.hilbert_dim, source.hilbert_dim, generated, tol);
  if (!validate(r, tol)) throw numeric_error("bimodule_closure: closure failed to validate");
  return r;
}

/// The diagonal relation on m: its commutant, viewed as the identity
/// relation's analog.
inline Relation diagonal(const Algebra& m) {
  Relation r;
  r.source = m;
  r.target = m;
  r.space = m.commutant;
  return r;
}

/// Swap source and target and take adjoints of the space.
inline Relation inverse(const Relation& r, Tolerances tol = {}) {
  Relation out;
  out.source = r.target;
  out.target = r.source;
  out.space = adjoint_subspace(r.space, tol);
  return out;
}

/// Composition r1 o r0 = span{v1 v0}; requires r1's source and r0's target to
/// be the same algebra on the same Hilbert space.
inline Relation compose(const Relation& r1, const Relation& r0, Tolerances tol = {}) {
  if (!same_algebra(r1.source, r0.target, tol))
    throw shape_error("compose: middle algebras do not agree");
  Relation out;
  out.source = r0.source;
  out.target = r1.target;
  out.space = product_span(r1.space, r0.space, tol);
  return out;
}

inline void require_endorelation(const Relation& r) {
  if (!same_algebra(r.source, r.target))
    throw shape_error("relation predicate: source and target algebras differ");
}

inline bool is_reflexive(const Relation& r, Tolerances tol = {}) {
  require_endorelation(r);
  return subspace_leq(r.source.commutant, r.space, tol);
}

inline bool is_symmetric(const Relation& r, Tolerances tol = {}) {
  require_endorelation(r);
  return subspace_eq(adjoint_subspace(r.space, tol), r.space, tol);
}

inline bool is_antisymmetric(const Relation& r, Tolerances tol = {}) {
  require_endorelation(r);
  const Subspace overlap = intersect(r.space, adjoint_subspace(r.space, tol), tol);
  return subspace_leq(overlap, r.source.commutant, tol);
}

inline bool is_transitive(const Relation& r, Tolerances tol = {}) {
  require_endorelation(r);
  return subspace_leq(product_span(r.space, r.space, tol), r.space, tol);
}

}  // namespace qrel
