#pragma once

#include <vector>

#include "pir/matz.hpp"
#include "pir/zmod.hpp"

namespace pir {

/// Element of Z_mod[x]/(x^n - 1) as a length-n coefficient vector,
/// coefficient of x^j at index j, entries canonical in [0, mod).
struct RingElem {
  VecZ coeffs;
  Scalar mod = 0;

  Index n() const { return coeffs.size(); }
  bool is_zero() const { return coeffs.isZero(); }
  bool operator==(const RingElem& o) const {
    return mod == o.mod && coeffs.size() == o.coeffs.size() && coeffs == o.coeffs;
  }
};

RingElem ring_zero(Index n, Scalar mod);
RingElem ring_one(Index n, Scalar mod);
RingElem ring_from(VecZ coeffs, Index n, Scalar mod);

RingElem ring_add(const RingElem& a, const RingElem& b);
RingElem ring_sub(const RingElem& a, const RingElem& b);
/// Cyclic convolution: (a*b)_k = sum_{i+j=k mod n} a_i b_j.
RingElem ring_mul(const RingElem& a, const RingElem& b);
RingElem ring_scale(const RingElem& a, Scalar c);
/// Multiplication by x^k (cyclic shift).
RingElem ring_shift(const RingElem& a, Index k);

/// Coefficientwise reduction mod p^e; (p, e) must be a factor of modulus.
RingElem project(const RingElem& a, const Modulus& modulus, Scalar p, unsigned e);

/// Inverse of the CRT map: the unique element projecting to each component.
RingElem crt_combine(const std::vector<RingElem>& components, const Modulus& modulus);

/// Vector over the ring; entries share (mod, n).
using RingVector = std::vector<RingElem>;

/// Square-bracket expansion: concatenation of coefficient vectors.
VecZ expand(const RingVector& v);
RingVector contract(const VecZ& row, Index n, Scalar mod);

/// Dense matrix over the ring (row-major), the shape of G_OUT and of the
/// per-file blocks of A and Delta.
class RingMatrix {
 public:
  RingMatrix() = default;
  RingMatrix(Index rows, Index cols, Index n, Scalar mod);

  RingElem& at(Index i, Index j) { return data_[i * cols_ + j]; }
  const RingElem& at(Index i, Index j) const { return data_[i * cols_ + j]; }

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index n() const { return n_; }
  Scalar mod() const { return mod_; }

  bool operator==(const RingMatrix&) const = default;

 private:
  Index rows_ = 0, cols_ = 0, n_ = 0;
  Scalar mod_ = 0;
  std::vector<RingElem> data_;
};

RingMatrix ring_matmul(const RingMatrix& a, const RingMatrix& b);
RingMatrix ring_mat_add(const RingMatrix& a, const RingMatrix& b);
/// Expansion of a ring matrix to rows x (cols*n) over Z_mod.
MatZ expand_matrix(const RingMatrix& m);
RingMatrix contract_matrix(const MatZ& flat, Index n, Scalar mod);

}  // namespace pir
