// Seeded, self-contained generators for random matrices, unitaries, block
// algebras and homomorphisms. The uniform and normal deviates are hand-rolled
// from the raw engine output so a fixed seed reproduces the exact same
// instances regardless of standard-library distribution internals.
#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "qrel/correspondence.hpp"

namespace qrel {

using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);  // 53 mantissa bits
}

inline Index uniform_index(Rng& rng, Index n) {
  return static_cast<Index>(rng() % static_cast<std::uint64_t>(n));
}

/// Standard normal via Box-Muller (cosine branch only).
inline double normal01(Rng& rng) {
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

inline Mat random_matrix(Rng& rng, Index rows, Index cols) {
  Mat m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = cplx(normal01(rng), normal01(rng));
  return m;
}

inline Mat random_hermitian(Rng& rng, Index n) {
  const Mat a = random_matrix(rng, n, n);
  return 0.5 * (a + Mat(a.adjoint()));
}

/// Haar-like unitary: QR of a Gaussian matrix with the R diagonal's phases
/// absorbed into Q.
inline Mat random_unitary(Rng& rng, Index n) {
  const Mat a = random_matrix(rng, n, n);
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const cplx d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= (mag > 0.0) ? d / mag : cplx(1.0, 0.0);
  }
  return q;
}

/// One or two blocks with small sizes and multiplicities, total dimension in
/// [1, max_total].
inline BlockSpec random_blocks(Rng& rng, Index max_total) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    BlockSpec spec;
    const Index count = 1 + uniform_index(rng, 2);
    for (Index i = 0; i < count; ++i)
      spec.blocks.push_back(MatrixBlock{1 + uniform_index(rng, 3), 1 + uniform_index(rng, 2)});
    if (spec.hilbert_dim() <= max_total) return spec;
  }
  return BlockSpec{{MatrixBlock{1, 1}}};
}

inline Algebra full_algebra(Index dim, Tolerances tol = {}) {
  Algebra a = from_blocks(BlockSpec{{MatrixBlock{dim, 1}}}, tol);
  a.label = "B(C^" + std::to_string(dim) + ")";
  return a;
}

/// X tensor 1_mult placed at `offset` on the diagonal of a dim x dim matrix,
/// with the row-major tensor layout used by from_blocks.
inline Mat embed_block(const Mat& x, Index mult, Index offset, Index dim) {
  Mat out = Mat::Zero(dim, dim);
  for (Index r = 0; r < x.rows(); ++r)
    for (Index c = 0; c < x.cols(); ++c)
      for (Index s = 0; s < mult; ++s) out(offset + r * mult + s, offset + c * mult + s) = x(r, c);
  return out;
}

/// A unital *-homomorphism out of a block algebra: each block M_{n_i} is
/// repeated with a random multiplicity t_i (sum t_i n_i = dim H <= max_dim,
/// at least one t_i > 0) and the direct sum is conjugated by a random
/// unitary. The target is either full B(H) or the von Neumann algebra the
/// images generate, chosen by a coin flip.
inline Homomorphism random_hom_from(const Algebra& source, Rng& rng, Index max_dim,
                                    Tolerances tol = {}) {
  if (!source.blocks) throw std::invalid_argument("random_hom_from: source must be block-structured");
  const auto& blocks = source.blocks->blocks;

  std::vector<Index> mult;
  Index h = 0;
  for (int attempt = 0;; ++attempt) {
    mult.clear();
    h = 0;
    for (const MatrixBlock& b : blocks) {
      const Index t = uniform_index(rng, 3);
      mult.push_back(t);
      h += t * b.n;
    }
    if (h >= 1 && h <= max_dim) break;
    if (attempt > 1000) {  // always representable: first block once, rest killed
      mult.assign(blocks.size(), 0);
      mult[0] = 1;
      h = blocks[0].n;
      break;
    }
  }

  const Mat u = random_unitary(rng, h);
  Homomorphism pi;
  pi.source = source;

  std::vector<Mat> images;
  images.reserve(static_cast<std::size_t>(source.algebra.dim()));
  Index offset = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Index n = blocks[i].n;
    const double scale = 1.0 / std::sqrt(static_cast<double>(blocks[i].m));
    for (Index p = 0; p < n; ++p)
      for (Index q = 0; q < n; ++q) {
        Mat im = Mat::Zero(h, h);
        if (mult[i] > 0)
          im = embed_block(scale * matrix_unit(n, n, p, q), mult[i], offset, h);
        images.push_back(u * im * u.adjoint());
      }
    offset += n * mult[i];
  }
  pi.images = std::move(images);
  pi.target = (rng() & 1u) ? full_algebra(h, tol) : from_generators(pi.images, h, tol);
  return pi;
}

inline Homomorphism random_homomorphism(Rng& rng, Index max_dim, Tolerances tol = {}) {
  const Algebra source = from_blocks(random_blocks(rng, max_dim), tol);
  return random_hom_from(source, rng, max_dim, tol);
}

/// A composable pair (pi0 : M1 -> M0, pi1 : M2 -> M1) sharing the literal
/// middle algebra M1. M1's block sizes are built as multiplicity sums of M2's
/// block sizes so that pi1 can be assembled blockwise (per-block random
/// unitaries), and pi0 comes from random_hom_from.
inline std::pair<Homomorphism, Homomorphism> random_composable_pair(Rng& rng, Index max_dim,
                                                                    Tolerances tol = {}) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const BlockSpec spec2 = random_blocks(rng, max_dim);
    const Index count1 = 1 + uniform_index(rng, 2);

    std::vector<std::vector<Index>> t(static_cast<std::size_t>(count1));
    BlockSpec spec1;
    bool ok = true;
    for (Index i = 0; i < count1 && ok; ++i) {
      Index n1 = 0;
      for (std::size_t j = 0; j < spec2.blocks.size(); ++j) {
        const Index tij = uniform_index(rng, 3);
        t[static_cast<std::size_t>(i)].push_back(tij);
        n1 += tij * spec2.blocks[j].n;
      }
      if (n1 < 1) ok = false;
      spec1.blocks.push_back(MatrixBlock{n1, 1 + uniform_index(rng, 2)});
    }
    if (!ok || spec1.hilbert_dim() > max_dim) continue;

    const Algebra m2 = from_blocks(spec2, tol);
    const Algebra m1 = from_blocks(spec1, tol);

    // pi1 : M2 -> M1, assembled from one random unitary inside each M1 block.
    std::vector<Mat> unitaries;
    for (const MatrixBlock& b : spec1.blocks) unitaries.push_back(random_unitary(rng, b.n));

    Homomorphism pi1;
    pi1.source = m2;
    pi1.target = m1;
    const Index dim1 = m1.hilbert_dim;
    for (std::size_t j = 0; j < spec2.blocks.size(); ++j) {
      const Index n2 = spec2.blocks[j].n;
      const double scale = 1.0 / std::sqrt(static_cast<double>(spec2.blocks[j].m));
      for (Index p = 0; p < n2; ++p)
        for (Index q = 0; q < n2; ++q) {
          Mat image = Mat::Zero(dim1, dim1);
          Index block_offset = 0;
          for (std::size_t i = 0; i < spec1.blocks.size(); ++i) {
            const Index n1 = spec1.blocks[i].n;
            Mat comp = Mat::Zero(n1, n1);
            Index slot = 0;
            for (std::size_t jp = 0; jp < spec2.blocks.size(); ++jp) {
              const Index size = spec2.blocks[jp].n;
              for (Index c = 0; c < t[i][jp]; ++c) {
                if (jp == j) comp.block(slot, slot, size, size) = matrix_unit(size, size, p, q);
                slot += size;
              }
            }
            const Mat rotated = unitaries[i] * comp * unitaries[i].adjoint();
            image += embed_block(scale * rotated, spec1.blocks[i].m, block_offset, dim1);
            block_offset += n1 * spec1.blocks[i].m;
          }
          pi1.images.push_back(std::move(image));
        }
    }

    Homomorphism pi0 = random_hom_from(m1, rng, max_dim, tol);
    return {std::move(pi0), std::move(pi1)};
  }
  throw numeric_error("random_composable_pair: failed to draw a pair within the dimension budget");
}

/// Two distinct homomorphisms with identical source and target (target is
/// full B(H)), for the injectivity falsification battery.
inline std::pair<Homomorphism, Homomorphism> random_distinct_pair(Rng& rng, Index max_dim,
                                                                  Tolerances tol = {}) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const Algebra source = from_blocks(random_blocks(rng, max_dim), tol);
    const auto& blocks = source.blocks->blocks;

    auto draw_mult = [&](Index& h) {
      std::vector<Index> mult;
      h = 0;
      for (const MatrixBlock& b : blocks) {
        const Index t = uniform_index(rng, 3);
        mult.push_back(t);
        h += t * b.n;
      }
      return mult;
    };
    Index h0 = 0, h1 = 0;
    const std::vector<Index> mult0 = draw_mult(h0);
    const std::vector<Index> mult1 = draw_mult(h1);
    if (h0 < 1 || h0 != h1 || h0 > max_dim) continue;

    const Algebra target = full_algebra(h0, tol);
    auto build = [&](const std::vector<Index>& mult) {
      const Mat u = random_unitary(rng, h0);
      Homomorphism pi;
      pi.source = source;
      pi.target = target;
      Index offset = 0;
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        const Index n = blocks[i].n;
        const double scale = 1.0 / std::sqrt(static_cast<double>(blocks[i].m));
        for (Index p = 0; p < n; ++p)
          for (Index q = 0; q < n; ++q) {
            Mat im = Mat::Zero(h0, h0);
            if (mult[i] > 0) im = embed_block(scale * matrix_unit(n, n, p, q), mult[i], offset, h0);
            pi.images.push_back(u * im * u.adjoint());
          }
        offset += n * mult[i];
      }
      return pi;
    };
    Homomorphism a = build(mult0);
    Homomorphism b = build(mult1);
    if (hom_distance(a, b) > 1e-6) return {std::move(a), std::move(b)};
  }
  throw numeric_error("random_distinct_pair: failed to draw a distinct pair");
}

/// The same relation with its space basis deterministically shuffled;
/// orthonormality is preserved, greedy extraction order is not.
inline Relation permute_space_basis(Relation r, Rng& rng) {
  for (Index i = r.space.dim() - 1; i > 0; --i) {
    const Index j = uniform_index(rng, i + 1);
    std::swap(r.space.basis[static_cast<std::size_t>(i)], r.space.basis[static_cast<std::size_t>(j)]);
  }
  return r;
}

}  // namespace qrel
