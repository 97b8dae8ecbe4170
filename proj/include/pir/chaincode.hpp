#pragma once

#include <vector>

#include "pir/howell.hpp"
#include "pir/matz.hpp"

namespace pir {

struct CyclotomicCosets {
  std::vector<std::vector<std::uint64_t>> cosets;  // partition of Z_n
  std::uint64_t count = 0;                         // T
};

/// q-cyclotomic cosets of Z_n, gcd(n, q) = 1. The count is cross-checked
/// internally against T = sum_{d|n} phi(d)/ord_d(q).
CyclotomicCosets cyclotomic_cosets(std::uint64_t n, std::uint64_t q);

/// T by the divisor-sum formula alone (used as the independent route).
std::uint64_t coset_count_formula(std::uint64_t n, std::uint64_t q);

/// Monic irreducible factors of x^n - 1 over Z_p, Hensel-lifted to Z_{p^e}.
/// Deterministic for fixed inputs. Requires gcd(n, p) = 1.
std::vector<VecZ> factor_xn_minus_1(Index n, Scalar p, unsigned e);

/// Module type of a code over Z_{p^e}: the code is isomorphic to
/// (+)_j (Z_{p^(e-j)})^{k_j}.
struct ModuleType {
  std::vector<Index> ks;

  Index rank() const {
    Index r = 0;
    for (Index k : ks) r += k;
    return r;
  }
  /// log_p of the code size: sum (e - j) k_j.
  std::uint64_t log_size(unsigned e) const {
    std::uint64_t s = 0;
    for (size_t j = 0; j < ks.size(); ++j) s += (e - j) * static_cast<std::uint64_t>(ks[j]);
    return s;
  }
  bool operator==(const ModuleType&) const = default;
};

/// Cyclic code of length n over the chain ring Z_{p^e}, held in standard
/// form: a divisibility tower f_{e-1} | ... | f_1 | f_0 | x^n - 1 of monic
/// polynomials, the code being <f_0, p f_1, ..., p^{e-1} f_{e-1}>.
class ChainRingCode {
 public:
  Scalar p() const { return p_; }
  unsigned e() const { return e_; }
  Scalar pe() const { return pe_; }
  Index n() const { return n_; }
  const std::vector<VecZ>& tower() const { return tower_; }

  const MatZ& generator_matrix() const { return gen_; }
  const HowellForm& howell() const { return howell_; }

  bool is_zero() const { return gen_.rows() == 0; }

  friend ChainRingCode make_chain_code(Scalar p, unsigned e, Index n, std::vector<VecZ> tower);

 private:
  Scalar p_ = 0;
  unsigned e_ = 0;
  Scalar pe_ = 0;
  Index n_ = 0;
  std::vector<VecZ> tower_;
  MatZ gen_;            // standard generator matrix (rank rows)
  HowellForm howell_{1, 1};
};

/// Validates monicity and the divisibility tower (exact division over
/// Z_{p^e}); tower must have exactly e entries.
ChainRingCode make_chain_code(Scalar p, unsigned e, Index n, std::vector<VecZ> tower);

ModuleType module_type(const ChainRingCode& code);
bool is_hensel_lift(const ChainRingCode& code);
MatZ standard_generator_matrix(const ChainRingCode& code);
bool contains(const ChainRingCode& code, const VecZ& word);

/// Annihilator code {v : v c^T = 0 for all c in code}, computed by kernel
/// over Z_{p^e} and returned in standard tower form.
ChainRingCode dual_chain_code(const ChainRingCode& code);

/// Recover the standard tower of a cyclic (shift-closed) span. Exponent
/// a_i per Hensel factor h_i is the minimal valuation of the span mod h_i;
/// the tower is f_j = prod_{a_i > j} h_i.
ChainRingCode chain_code_from_span(Scalar p, unsigned e, Index n, const MatZ& span_rows);

/// Per-Hensel-factor exponents a_i of the code (component p^{a_i} in the
/// Galois-ring decomposition). Order matches factor_xn_minus_1(n, p, e).
std::vector<unsigned> factor_exponents(const ChainRingCode& code);

/// Code with prescribed per-factor exponents; inverse of factor_exponents.
ChainRingCode chain_code_from_exponents(Scalar p, unsigned e, Index n,
                                        const std::vector<unsigned>& exps);

}  // namespace pir
