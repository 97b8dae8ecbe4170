#pragma once

#include <utility>
#include <vector>

#include "pir/matz.hpp"

// Dense univariate polynomials over Z_N, coefficient of x^j at index j.
// These are the non-cyclic helpers behind factorization, Hensel lifting and
// tower validation; the quotient-ring arithmetic lives in polyring.hpp.
namespace pir::poly {

/// Degree, -1 for the zero polynomial.
Index degree(const VecZ& f);

bool is_zero(const VecZ& f);

/// Size-safe equality (Eigen's operator== asserts on length mismatch).
bool eq(const VecZ& a, const VecZ& b);

VecZ trim(const VecZ& f);
VecZ xn_minus_1(Index n, Scalar N);
bool is_monic(const VecZ& f, Scalar N);

VecZ add(const VecZ& a, const VecZ& b, Scalar N);
VecZ sub(const VecZ& a, const VecZ& b, Scalar N);
VecZ mul(const VecZ& a, const VecZ& b, Scalar N);
VecZ scale(const VecZ& a, Scalar c, Scalar N);

/// Quotient and remainder by a monic divisor; exact over any Z_N.
std::pair<VecZ, VecZ> divmod(const VecZ& a, const VecZ& b_monic, Scalar N);
VecZ rem(const VecZ& a, const VecZ& b_monic, Scalar N);

/// Monic gcd over the field Z_p.
VecZ gcd_fp(VecZ a, VecZ b, Scalar p);

/// base^exp mod f over Z_p (f monic).
VecZ pow_mod_fp(const VecZ& base, Scalar exp, const VecZ& f, Scalar p);

}  // namespace pir::poly
