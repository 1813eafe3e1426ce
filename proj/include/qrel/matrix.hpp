// Dense complex matrix primitives shared by every other header: scalar and
// shape conventions, the Hilbert-Schmidt inner product, Kronecker products,
// and row-major (un)vectorization.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrel {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Thrown when operand shapes are inconsistent.
class shape_error : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numeric precondition or postcondition fails
/// (zero input to a polar decomposition, non-convergence, ...).
class numeric_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Relative tolerances used throughout. Defaults are comfortably inside
/// double precision for ambient dimensions up to a few dozen.
struct Tolerances {
  double rank = 1e-10;        // relative singular-value cutoff
  double membership = 1e-8;   // relative residual bound for subspace membership
  double eq = 1e-9;           // Frobenius / entrywise comparison bound

  void require_usable() const {
    if (!(rank > 0.0) || !(membership > 0.0) || !(eq > 0.0))
      throw std::invalid_argument("tolerances must be strictly positive");
  }
};

inline double frobenius(const Mat& a) { return a.norm(); }

inline bool all_finite(const Mat& a) { return a.allFinite(); }

inline void require_same_shape(const Mat& a, const Mat& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw shape_error(std::string(what) + ": shape mismatch (" +
                      std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                      std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
}

/// Hilbert-Schmidt inner product <a,b> = trace(a* b), conjugate-linear in a.
inline cplx hs_inner(const Mat& a, const Mat& b) {
  require_same_shape(a, b, "hs_inner");
  return a.conjugate().cwiseProduct(b).sum();
}

inline Mat matrix_unit(Index rows, Index cols, Index i, Index j) {
  Mat e = Mat::Zero(rows, cols);
  e(i, j) = cplx(1.0, 0.0);
  return e;
}

/// e_alpha as a column operator in B(C, C^dim).
inline Mat basis_column(Index dim, Index alpha) { return matrix_unit(dim, 1, alpha, 0); }

/// Kronecker product with row-major index convention:
/// (a x b)(i*rows_b + k, j*cols_b + l) = a(i,j) * b(k,l).
inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Row-major flattening, consistent with the kron convention:
/// vec(A X B) = (A kron B^T) vec(X).
inline CVec vec_rm(const Mat& m) {
  CVec v(m.size());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

inline Mat unvec_rm(const CVec& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw shape_error("unvec_rm: length mismatch");
  Mat m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
  return m;
}

inline bool approx_equal(const Mat& a, const Mat& b, double bound) {
  require_same_shape(a, b, "approx_equal");
  return (a - b).norm() <= bound;
}

}  // namespace qrel
