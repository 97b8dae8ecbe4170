#pragma once

#include <vector>

#include "pir/chaincode.hpp"
#include "pir/polyring.hpp"
#include "pir/rng.hpp"
#include "pir/zmod.hpp"

namespace pir {

/// Z_m cyclic code of length n assembled from one chain-ring component per
/// prime factor of m via the CRT map. Membership, duals, intersections and
/// torsion all reduce to the components; the Z_m generator and parity-check
/// matrices are cached at construction.
class CrtCyclicCode {
 public:
  const Modulus& modulus() const { return modulus_; }
  Index n() const { return n_; }
  const std::vector<ChainRingCode>& components() const { return components_; }

  /// CRT-combined componentwise standard generators (zero-padded in the
  /// other components). Rowspan over Z_m is the code.
  const MatZ& generator_zm() const { return gen_zm_; }

  /// Parity check H: canonical (Howell-form) generator matrix of the dual
  /// CRT code; c H^T = 0 for every codeword c.
  const MatZ& parity_zm() const { return parity_zm_; }

  bool is_zero() const { return gen_zm_.rows() == 0; }
  bool operator==(const CrtCyclicCode& o) const {
    return modulus_ == o.modulus_ && n_ == o.n_ && same_matrix(gen_zm_, o.gen_zm_);
  }

  friend CrtCyclicCode crt_code(const Modulus& modulus, std::vector<ChainRingCode> components);

 private:
  Modulus modulus_;
  Index n_ = 0;
  std::vector<ChainRingCode> components_;
  MatZ gen_zm_;
  MatZ parity_zm_;
};

CrtCyclicCode crt_code(const Modulus& modulus, std::vector<ChainRingCode> components);

/// Non-free iff component ranks differ or some component is itself
/// non-free.
bool is_nonfree(const CrtCyclicCode& code);

MatZ parity_check_zm(const CrtCyclicCode& code);

/// The non-free part nf(C): the torsion submodule, generated componentwise
/// by {p^j f_j : j >= 1}.
CrtCyclicCode torsion_part(const CrtCyclicCode& code);

CrtCyclicCode dual_code(const CrtCyclicCode& code);
CrtCyclicCode intersect(const CrtCyclicCode& a, const CrtCyclicCode& b);
bool is_lcd(const CrtCyclicCode& code);

bool contains(const CrtCyclicCode& code, const VecZ& word);
bool is_subset(const CrtCyclicCode& a, const CrtCyclicCode& b);

/// Single ideal generator: Phi^-1 of (f_0 + p f_1 + ... + p^{e-1} f_{e-1})
/// per prime. The ring-multiples of this element span the whole code.
RingElem principal_generator(const CrtCyclicCode& code);

/// Uniform over the code (random Z_m-combination of the generator rows).
RingElem sample_codeword(const CrtCyclicCode& code, Rng& rng);

/// The domain sample_torsion draws from: nf(code) for primes with e_i > 1;
/// for e_i = 1 components (only reachable on noncompliant instances) the
/// torsion constraint is vacuous and the whole component is kept.
CrtCyclicCode sampling_torsion_domain(const CrtCyclicCode& code);

/// Uniform over sampling_torsion_domain(code).
RingElem sample_torsion(const CrtCyclicCode& code, Rng& rng);

/// The domain sample_u draws from: sampling_torsion_domain of
/// constituent_s ∩ inner^⊥ (callers doing many queries can build it once).
CrtCyclicCode u_sample_domain(const CrtCyclicCode& constituent_s, const CrtCyclicCode& inner);

/// Payload-marker sample: an element of the u domain that is not in inner,
/// whose product with the inner parity check is nonzero mod every p_i^{e_i}
/// and annihilated by p_i there (unique and solvable recovery). Bounded
/// resampling; throws EmptySampleSet.
RingElem sample_u(const CrtCyclicCode& constituent_s, const CrtCyclicCode& inner, Rng& rng);
RingElem sample_u_from_domain(const CrtCyclicCode& domain, const CrtCyclicCode& inner, Rng& rng);

}  // namespace pir
