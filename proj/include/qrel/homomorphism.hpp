// Normal unital *-homomorphisms between finite-dimensional von Neumann
// algebras, represented extensionally by the images of the source algebra's
// orthonormal basis. Normality is automatic in finite dimension.
#pragma once

#include <vector>

#include "qrel/relation.hpp"

namespace qrel {

/// pi : source -> target, with images[i] = pi(source.algebra.basis[i]).
struct Homomorphism {
  Algebra source;           // N on K, the algebra being mapped
  Algebra target;           // M on H, receiving the image
  std::vector<Mat> images;  // H-square matrices, one per source basis element
};

inline void require_hom_shapes(const Homomorphism& pi) {
  if (static_cast<Index>(pi.images.size()) != pi.source.algebra.dim())
    throw shape_error("homomorphism: one image per source basis element required");
  for (const Mat& im : pi.images)
    if (im.rows() != pi.target.hilbert_dim || im.cols() != pi.target.hilbert_dim)
      throw shape_error("homomorphism: image shape does not match the target Hilbert space");
}

/// Apply pi to an arbitrary element of the source algebra by expanding it in
/// the source basis. Elements outside the algebra are implicitly projected.
inline Mat apply_hom(const Homomorphism& pi, const Mat& b) {
  pi.source.algebra.require_element_shape(b, "apply");
  Mat out = Mat::Zero(pi.target.hilbert_dim, pi.target.hilbert_dim);
  for (Index i = 0; i < pi.source.algebra.dim(); ++i)
    out += hs_inner(pi.source.algebra.basis[i], b) * pi.images[i];
  return out;
}

struct HomCheck {
  bool unital = false;
  bool star_preserving = false;
  bool multiplicative = false;
  bool range_in_target = false;
  double unital_residual = 0.0;
  double star_residual = 0.0;
  double mult_residual = 0.0;
  double range_residual = 0.0;

  bool pass() const { return unital && star_preserving && multiplicative && range_in_target; }
  double worst_residual() const {
    return std::max(std::max(unital_residual, star_residual),
                    std::max(mult_residual, range_residual));
  }
};

/// Unital, *-preserving, multiplicative, and range inside the target algebra
/// (checked as commutation with the target commutant, which in finite
/// dimension characterizes membership in the double commutant).
inline HomCheck validate_hom(const Homomorphism& pi, Tolerances tol = {}) {
  require_hom_shapes(pi);
  HomCheck c;
  const auto& basis = pi.source.algebra.basis;
  const Index n = pi.source.algebra.dim();

  c.unital_residual = frobenius(apply_hom(pi, pi.source.identity()) - pi.target.identity());
  c.unital = c.unital_residual <= tol.eq;

  for (Index i = 0; i < n; ++i)
    c.star_residual = std::max(
        c.star_residual, frobenius(apply_hom(pi, basis[i].adjoint()) - pi.images[i].adjoint()));
  c.star_preserving = c.star_residual <= tol.eq;

  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      c.mult_residual = std::max(
          c.mult_residual, frobenius(apply_hom(pi, basis[i] * basis[j]) - pi.images[i] * pi.images[j]));
  c.multiplicative = c.mult_residual <= tol.eq;

  for (const Mat& im : pi.images)
    for (const Mat& cp : pi.target.commutant.basis)
      c.range_residual = std::max(c.range_residual, frobenius(im * cp - cp * im));
  c.range_in_target = c.range_residual <= tol.eq;
  return c;
}

inline bool validate(const Homomorphism& pi, Tolerances tol = {}) {
  return validate_hom(pi, tol).pass();
}

inline Homomorphism identity_hom(const Algebra& m) {
  Homomorphism pi;
  pi.source = m;
  pi.target = m;
  pi.images = m.algebra.basis;
  return pi;
}

/// pi0 o pi1 for pi1 : M2 -> M1 and pi0 : M1 -> M0; each image of pi1 is
/// expanded in pi0's source basis and pushed through pi0.
inline Homomorphism compose_hom(const Homomorphism& pi0, const Homomorphism& pi1,
                                Tolerances tol = {}) {
  if (!same_algebra(pi1.target, pi0.source, tol))
    throw shape_error("compose_hom: middle algebras do not agree");
  Homomorphism out;
  out.source = pi1.source;
  out.target = pi0.target;
  out.images.reserve(pi1.images.size());
  for (const Mat& im : pi1.images) out.images.push_back(apply_hom(pi0, im));
  return out;
}

/// Largest per-basis-image Frobenius distance between two homomorphisms with
/// identical source basis ordering.
inline double hom_distance(const Homomorphism& a, const Homomorphism& b) {
  if (a.images.size() != b.images.size())
    throw shape_error("hom_distance: image lists differ in length");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.images.size(); ++i) {
    require_same_shape(a.images[i], b.images[i], "hom_distance");
    worst = std::max(worst, frobenius(a.images[i] - b.images[i]));
  }
  return worst;
}

}  // namespace qrel
