#pragma once

#include <optional>
#include <vector>

#include "pir/zmod.hpp"

namespace pir {

struct Rational {
  std::uint64_t num = 0, den = 1;  // normalized, den > 0
  bool operator==(const Rational&) const = default;
};

Rational make_rational(std::uint64_t num, std::uint64_t den);

/// Upload/download costs and PIR rate. The exact rationals are available
/// exactly when log(m')/log(m) is rational, i.e. when every prime exponent
/// equals e (then m = m'^e and the ratio is 1/e); Table-1 style parameters
/// always qualify.
struct RateReport {
  double upload_bits = 0;    // H(Q) = 2 t r n s log2(m)
  double download_bits = 0;  // H(R) = 2 L n s log2(m)
  double file_bits = 0;      // L r log2(m')
  double exact_rate_value = 0;
  double approx_rate_value = 0;
  std::optional<Rational> exact_rate;   // Lr/((tr+L) 2ns e)
  std::optional<Rational> approx_rate;  // r/(2ns e)
};

RateReport pir_rate(const Modulus& modulus, Index n, Index s, Index r, Index t, Index L);

/// Cyclotomic work-factor bound: per-prime coset counts T_i, the per-code
/// bound 2^(sum T_i) and the total bound for s+1 secret codes; stored as
/// exponents of 2 (Table-1 values do not fit integers).
struct WorkFactor {
  std::vector<std::pair<Scalar, std::uint64_t>> per_prime;  // (p_i, T_i)
  std::uint64_t t_sum = 0;          // per-code bound is 2^t_sum
  Index s = 0;
  std::uint64_t total_exponent = 0;  // total bound is 2^total_exponent = (2^t_sum)^(s+1)
};

WorkFactor work_factor(const Modulus& modulus, Index n, Index s);

}  // namespace pir
