#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace pir {

using Scalar = std::uint64_t;

// Dense integer matrices with canonical entries in [0, m). Row-major so the
// wire layout is the natural memory order.
using MatZ = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using VecZ = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;
using Index = Eigen::Index;

inline MatZ reduced(MatZ a, Scalar m) {
  return a.unaryExpr([m](Scalar x) { return x % m; });
}

inline MatZ add_mod(const MatZ& a, const MatZ& b, Scalar m) {
  return (a + b).unaryExpr([m](Scalar x) { return x % m; });
}

inline MatZ sub_mod(const MatZ& a, const MatZ& b, Scalar m) {
  // entries are < m, so a + (m - b) stays well below 2^64
  MatZ r(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) r(i, j) = (a(i, j) + m - b(i, j)) % m;
  return r;
}

inline MatZ scale_mod(const MatZ& a, Scalar c, Scalar m) {
  c %= m;
  return a.unaryExpr([c, m](Scalar x) { return x * c % m; });
}

/// a*b over Z_m. Entries must be canonical; a term x*y < 2^64 holds for
/// m < 2^32 and the accumulator is reduced every step.
inline MatZ matmul_mod(const MatZ& a, const MatZ& b, Scalar m) {
  MatZ r = MatZ::Zero(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < a.cols(); ++k) {
      const Scalar aik = a(i, k);
      if (aik == 0) continue;
      for (Index j = 0; j < b.cols(); ++j) r(i, j) = (r(i, j) + aik * b(k, j)) % m;
    }
  return r;
}

/// Shape-safe equality; Eigen's operator== asserts on shape mismatch.
inline bool same_matrix(const MatZ& a, const MatZ& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return a.size() == 0 || a == b;
}

inline MatZ vstack(const MatZ& a, const MatZ& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  MatZ r(a.rows() + b.rows(), a.cols());
  r.topRows(a.rows()) = a;
  r.bottomRows(b.rows()) = b;
  return r;
}

}  // namespace pir
