// The commutative bridge: finite sets, relations and functions encoded as
// diagonal algebras and matrix-unit spans. Diagonal commutants make every
// construction exactly invertible, so this module doubles as the exhaustive
// brute-force oracle for the quantum side.
//
// Orientation, fixed artifact-wide: a function f : X -> Y corresponds to the
// pullback homomorphism l_inf(Y) -> l_inf(X) and to a quantum function from
// l_inf(X) to l_inf(Y). The direction reversal is the whole point of the
// correspondence.
#pragma once

#include <set>
#include <utility>
#include <vector>

#include "qrel/correspondence.hpp"

namespace qrel {

/// A relation between finite sets as a subset of Y x X, stored as ordered
/// (y, x) index pairs.
struct ClassicalRelation {
  Index x_size = 0;
  Index y_size = 0;
  std::set<std::pair<Index, Index>> pairs;  // (y, x), 0-based

  void require_valid() const {
    if (x_size < 1 || y_size < 1)
      throw std::invalid_argument("ClassicalRelation: set sizes must be positive");
    for (const auto& [y, x] : pairs)
      if (y < 0 || y >= y_size || x < 0 || x >= x_size)
        throw std::invalid_argument("ClassicalRelation: pair index out of range");
  }
};

/// A total single-valued map X -> Y, stored pointwise.
struct ClassicalFunction {
  Index x_size = 0;
  Index y_size = 0;
  std::vector<Index> map;  // map[x] in [0, y_size)

  void require_valid() const {
    if (x_size < 1 || y_size < 1)
      throw std::invalid_argument("ClassicalFunction: set sizes must be positive");
    if (static_cast<Index>(map.size()) != x_size)
      throw std::invalid_argument("ClassicalFunction: map length must equal x_size");
    for (Index y : map)
      if (y < 0 || y >= y_size) throw std::invalid_argument("ClassicalFunction: value out of range");
  }
};

/// l_inf(n): all diagonal matrices, its own commutant.
inline Algebra diag_algebra(Index n, Tolerances tol = {}) {
  if (n < 1) throw std::invalid_argument("diag_algebra: n must be positive");
  BlockSpec spec;
  spec.blocks.assign(static_cast<std::size_t>(n), MatrixBlock{1, 1});
  Algebra a = from_blocks(spec, tol);
  a.label = "l_inf(" + std::to_string(n) + ")";
  return a;
}

inline ClassicalRelation identity_relation(Index n) {
  ClassicalRelation r;
  r.x_size = r.y_size = n;
  for (Index i = 0; i < n; ++i) r.pairs.insert({i, i});
  return r;
}

inline ClassicalRelation graph_of(const ClassicalFunction& f) {
  f.require_valid();
  ClassicalRelation r;
  r.x_size = f.x_size;
  r.y_size = f.y_size;
  for (Index x = 0; x < f.x_size; ++x) r.pairs.insert({f.map[x], x});
  return r;
}

inline bool is_function_graph(const ClassicalRelation& r) {
  r.require_valid();
  std::vector<Index> hits(static_cast<std::size_t>(r.x_size), 0);
  for (const auto& [y, x] : r.pairs) {
    (void)y;
    ++hits[static_cast<std::size_t>(x)];
  }
  for (Index count : hits)
    if (count != 1) return false;
  return true;
}

inline ClassicalRelation compose_classical(const ClassicalRelation& g, const ClassicalRelation& f) {
  if (g.x_size != f.y_size)
    throw std::invalid_argument("compose_classical: middle sets differ");
  ClassicalRelation out;
  out.x_size = f.x_size;
  out.y_size = g.y_size;
  for (const auto& [z, y1] : g.pairs)
    for (const auto& [y0, x] : f.pairs)
      if (y1 == y0) out.pairs.insert({z, x});
  return out;
}

inline ClassicalRelation inverse_classical(const ClassicalRelation& f) {
  ClassicalRelation out;
  out.x_size = f.y_size;
  out.y_size = f.x_size;
  for (const auto& [y, x] : f.pairs) out.pairs.insert({x, y});
  return out;
}

/// span{E_yx : (y,x) in pairs} between l_inf(X) and l_inf(Y). Matrix units
/// are already orthonormal, so this is exact.
inline Relation relation_to_quantum(const ClassicalRelation& f, Tolerances tol = {}) {
  f.require_valid();
  Relation r;
  r.source = diag_algebra(f.x_size, tol);
  r.target = diag_algebra(f.y_size, tol);
  r.space.domain_dim = f.x_size;
  r.space.codomain_dim = f.y_size;
  for (const auto& [y, x] : f.pairs)
    r.space.basis.push_back(matrix_unit(f.y_size, f.x_size, y, x));
  return r;
}

inline bool is_diagonal_algebra(const Algebra& a, Tolerances tol = {}) {
  if (a.algebra.dim() != a.hilbert_dim) return false;
  for (const Mat& b : a.algebra.basis) {
    Mat off = b;
    off.diagonal().setZero();
    if (frobenius(off) > tol.eq) return false;
  }
  return true;
}

/// Inverse bridge: (y,x) is a pair iff E_yx lies in the space. Valid because
/// bimodules over diagonal algebras are spans of matrix units.
inline ClassicalRelation quantum_to_relation(const Relation& r, Tolerances tol = {}) {
  if (!is_diagonal_algebra(r.source, tol) || !is_diagonal_algebra(r.target, tol))
    throw std::invalid_argument("quantum_to_relation: both algebras must be diagonal");
  ClassicalRelation out;
  out.x_size = r.source.hilbert_dim;
  out.y_size = r.target.hilbert_dim;
  for (Index y = 0; y < out.y_size; ++y)
    for (Index x = 0; x < out.x_size; ++x)
      if (contains(r.space, matrix_unit(out.y_size, out.x_size, y, x), tol))
        out.pairs.insert({y, x});
  return out;
}

/// Pullback homomorphism of f : X -> Y, mapping l_inf(Y) -> l_inf(X):
/// the diagonal unit at y goes to the indicator of f^{-1}(y).
inline Homomorphism function_to_hom(const ClassicalFunction& f, Tolerances tol = {}) {
  f.require_valid();
  Homomorphism pi;
  pi.source = diag_algebra(f.y_size, tol);
  pi.target = diag_algebra(f.x_size, tol);
  pi.images.reserve(static_cast<std::size_t>(f.y_size));
  for (Index y = 0; y < f.y_size; ++y) {
    Mat im = Mat::Zero(f.x_size, f.x_size);
    for (Index x = 0; x < f.x_size; ++x)
      if (f.map[x] == y) im(x, x) = cplx(1.0, 0.0);
    pi.images.push_back(std::move(im));
  }
  return pi;
}

/// Inverse bridge for homomorphisms between diagonal algebras: f(x) is the
/// unique y whose image projection fixes the basis vector x.
inline ClassicalFunction hom_to_function(const Homomorphism& pi, Tolerances tol = {}) {
  if (!is_diagonal_algebra(pi.source, tol) || !is_diagonal_algebra(pi.target, tol))
    throw std::invalid_argument("hom_to_function: both algebras must be diagonal");
  require_hom_shapes(pi);
  ClassicalFunction f;
  f.x_size = pi.target.hilbert_dim;
  f.y_size = pi.source.hilbert_dim;
  f.map.assign(static_cast<std::size_t>(f.x_size), 0);
  std::vector<Mat> unit_images;  // pi(E_yy), independent of the stored basis order
  unit_images.reserve(static_cast<std::size_t>(f.y_size));
  for (Index y = 0; y < f.y_size; ++y)
    unit_images.push_back(apply_hom(pi, matrix_unit(f.y_size, f.y_size, y, y)));
  for (Index x = 0; x < f.x_size; ++x) {
    Index found = -1;
    for (Index y = 0; y < f.y_size; ++y) {
      const double val = std::abs(unit_images[static_cast<std::size_t>(y)](x, x));
      if (std::abs(val - 1.0) <= tol.membership) {
        if (found >= 0)
          throw numeric_error("hom_to_function: two images fix the same point (invalid homomorphism)");
        found = y;
      } else if (val > tol.membership) {
        throw numeric_error("hom_to_function: image entry neither 0 nor 1 (invalid homomorphism)");
      }
    }
    if (found < 0)
      throw numeric_error("hom_to_function: no image fixes point " + std::to_string(x));
    f.map[static_cast<std::size_t>(x)] = found;
  }
  return f;
}

struct RelationProperties {
  bool reflexive = false;
  bool symmetric = false;
  bool antisymmetric = false;
  bool transitive = false;
};

/// Set-theoretic reflexive/symmetric/antisymmetric/transitive.
inline RelationProperties classical_predicates(const ClassicalRelation& r) {
  r.require_valid();
  if (r.x_size != r.y_size)
    throw std::invalid_argument("classical_predicates: relation must be on one set");
  RelationProperties p;
  p.reflexive = true;
  for (Index i = 0; i < r.x_size; ++i)
    p.reflexive = p.reflexive && r.pairs.count({i, i}) > 0;
  p.symmetric = true;
  p.antisymmetric = true;
  for (const auto& [y, x] : r.pairs) {
    const bool rev = r.pairs.count({x, y}) > 0;
    p.symmetric = p.symmetric && rev;
    if (rev && x != y) p.antisymmetric = false;
  }
  p.transitive = true;
  for (const auto& [z, y1] : r.pairs)
    for (const auto& [y0, x] : r.pairs)
      if (y1 == y0) p.transitive = p.transitive && r.pairs.count({z, x}) > 0;
  return p;
}

}  // namespace qrel
