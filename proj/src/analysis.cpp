#include "pir/analysis.hpp"

#include <cmath>

#include "pir/chaincode.hpp"
#include "pir/error.hpp"

namespace pir {

Rational make_rational(std::uint64_t num, std::uint64_t den) {
  if (den == 0) fail(Err::DimensionMismatch, "zero denominator");
  const std::uint64_t g = gcd_u64(num, den);
  return {num / (g ? g : 1), den / (g ? g : 1)};
}

RateReport pir_rate(const Modulus& modulus, Index n, Index s, Index r, Index t, Index L) {
  if (n <= 0 || s <= 0 || r <= 0 || t <= 0 || L <= 0)
    fail(Err::DimensionMismatch, "all rate parameters must be positive");
  if (r > s) fail(Err::IncompatibleDimensions, "r must not exceed s");

  RateReport rep;
  const double log_m = std::log2(static_cast<double>(modulus.m()));
  const double log_mp = std::log2(static_cast<double>(modulus.m_prime()));
  rep.upload_bits = 2.0 * t * r * n * s * log_m;
  rep.download_bits = 2.0 * L * n * s * log_m;
  rep.file_bits = static_cast<double>(L) * r * log_mp;
  rep.exact_rate_value = rep.file_bits / (rep.upload_bits + rep.download_bits);
  rep.approx_rate_value = static_cast<double>(r) / (2.0 * n * s) * (log_mp / log_m);

  // m = m'^e with a uniform exponent makes the log ratio exactly 1/e
  bool uniform = true;
  const unsigned e0 = modulus.factors().front().e;
  for (const Factor& f : modulus.factors()) uniform = uniform && f.e == e0;
  if (uniform) {
    const std::uint64_t ul = static_cast<std::uint64_t>(L);
    const std::uint64_t ur = static_cast<std::uint64_t>(r);
    const std::uint64_t denom_tail = 2ull * n * s * e0;
    rep.exact_rate = make_rational(ul * ur, (static_cast<std::uint64_t>(t) * ur + ul) * denom_tail);
    rep.approx_rate = make_rational(ur, denom_tail);
  }
  return rep;
}

WorkFactor work_factor(const Modulus& modulus, Index n, Index s) {
  WorkFactor wf;
  wf.s = s;
  for (const Factor& f : modulus.factors()) {
    const std::uint64_t t = cyclotomic_cosets(static_cast<std::uint64_t>(n), f.p).count;
    wf.per_prime.emplace_back(f.p, t);
    wf.t_sum += t;
  }
  wf.total_exponent = wf.t_sum * static_cast<std::uint64_t>(s + 1);
  return wf;
}

}  // namespace pir
