#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pir/error.hpp"
#include "pir/matz.hpp"

namespace pir {

struct Factor {
  Scalar p = 0;       // prime
  unsigned e = 0;     // exponent >= 1
  Scalar pe = 0;      // p^e
  bool operator==(const Factor&) const = default;
};

/// Composite modulus m with its prime-power factorization. The factorization
/// is always an input, never computed: the protocol's security rests on the
/// user choosing the structure of m.
class Modulus {
 public:
  Scalar m() const { return m_; }
  Scalar m_prime() const { return m_prime_; }
  const std::vector<Factor>& factors() const { return factors_; }
  Index num_primes() const { return static_cast<Index>(factors_.size()); }

  bool operator==(const Modulus&) const = default;

  friend Modulus validate_modulus(const std::vector<std::pair<Scalar, unsigned>>& factors);

 private:
  Scalar m_ = 0;
  Scalar m_prime_ = 0;
  std::vector<Factor> factors_;
};

/// Checks primality (deterministic Miller-Rabin, valid for anything below
/// 2^32) and exponents, sorts the factors, and computes m and m'.
/// Throws NonPrimeFactor, DuplicatePrime, Overflow (m must stay below 2^32).
Modulus validate_modulus(const std::vector<std::pair<Scalar, unsigned>>& factors);

Scalar gcd_u64(Scalar a, Scalar b);
bool is_prime_u64(Scalar n);
Scalar pow_mod(Scalar base, Scalar exp, Scalar m);

/// Unique x in [0, prod moduli) with x = residues[i] mod moduli[i].
/// Moduli must be pairwise coprime and their product must fit 64 bits.
Scalar crt_lift(std::span<const Scalar> residues, std::span<const Scalar> moduli);

/// Inverse of a mod m; throws NotAUnit when gcd(a, m) != 1.
Scalar mod_inv(Scalar a, Scalar m);

}  // namespace pir
