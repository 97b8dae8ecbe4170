#include "pir/zmod.hpp"

#include <algorithm>

namespace pir {

Scalar gcd_u64(Scalar a, Scalar b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

Scalar pow_mod(Scalar base, Scalar exp, Scalar m) {
  unsigned __int128 acc = 1, b = base % m;
  while (exp) {
    if (exp & 1) acc = acc * b % m;
    b = b * b % m;
    exp >>= 1;
  }
  return static_cast<Scalar>(acc);
}

bool is_prime_u64(Scalar n) {
  if (n < 2) return false;
  for (Scalar p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    if (n % p == 0) return n == p;
  }
  Scalar d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // bases {2, 7, 61} are exact below 4'759'123'141, which covers the
  // library-wide m < 2^32 bound
  for (Scalar a : {2ull, 7ull, 61ull}) {
    Scalar x = pow_mod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = static_cast<Scalar>(static_cast<unsigned __int128>(x) * x % n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Modulus validate_modulus(const std::vector<std::pair<Scalar, unsigned>>& factors) {
  if (factors.empty()) fail(Err::NonPrimeFactor, "empty factor list");
  Modulus out;
  for (auto [p, e] : factors) {
    if (e < 1) fail(Err::NonPrimeFactor, "exponent must be >= 1");
    if (!is_prime_u64(p)) fail(Err::NonPrimeFactor, "not a prime: " + std::to_string(p));
    out.factors_.push_back({p, e, 0});
  }
  std::sort(out.factors_.begin(), out.factors_.end(),
            [](const Factor& a, const Factor& b) { return a.p < b.p; });
  for (size_t i = 1; i < out.factors_.size(); ++i)
    if (out.factors_[i].p == out.factors_[i - 1].p)
      fail(Err::DuplicatePrime, "duplicate prime: " + std::to_string(out.factors_[i].p));

  constexpr Scalar kLimit = Scalar(1) << 32;
  unsigned __int128 m = 1, mp = 1;
  for (auto& f : out.factors_) {
    unsigned __int128 pe = 1;
    for (unsigned i = 0; i < f.e; ++i) {
      pe *= f.p;
      if (pe >= kLimit) fail(Err::Overflow, "modulus exceeds 2^32");
    }
    f.pe = static_cast<Scalar>(pe);
    m *= pe;
    mp *= f.p;
    if (m >= kLimit) fail(Err::Overflow, "modulus exceeds 2^32");
  }
  out.m_ = static_cast<Scalar>(m);
  out.m_prime_ = static_cast<Scalar>(mp);
  return out;
}

namespace {

// extended gcd over signed 128-bit; returns g and x with x*a = g (mod b0)
struct Xgcd {
  Scalar g;
  __int128 x;
};

Xgcd xgcd(Scalar a, Scalar b) {
  __int128 old_r = a, r = b, old_s = 1, s = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  return {static_cast<Scalar>(old_r), old_s};
}

}  // namespace

Scalar mod_inv(Scalar a, Scalar m) {
  auto [g, x] = xgcd(a % m, m);
  if (g != 1) fail(Err::NotAUnit, "not a unit mod " + std::to_string(m));
  __int128 r = x % static_cast<__int128>(m);
  if (r < 0) r += m;
  return static_cast<Scalar>(r);
}

Scalar crt_lift(std::span<const Scalar> residues, std::span<const Scalar> moduli) {
  if (residues.size() != moduli.size())
    fail(Err::LengthMismatch, "residue/modulus count mismatch");
  unsigned __int128 prod = 1;
  for (size_t i = 0; i < moduli.size(); ++i) {
    for (size_t j = i + 1; j < moduli.size(); ++j)
      if (gcd_u64(moduli[i], moduli[j]) != 1)
        fail(Err::NonCoprimeModuli, "moduli not pairwise coprime");
    prod *= moduli[i];
  }
  // iterative lift: x valid mod cur, extend one modulus at a time
  unsigned __int128 x = 0, cur = 1;
  for (size_t i = 0; i < moduli.size(); ++i) {
    const Scalar mi = moduli[i];
    const Scalar ri = residues[i] % mi;
    const Scalar xc = static_cast<Scalar>(x % mi);
    const Scalar diff = (ri + mi - xc) % mi;
    const Scalar inv = mod_inv(static_cast<Scalar>(cur % mi), mi);
    const Scalar k = static_cast<Scalar>(static_cast<unsigned __int128>(diff) * inv % mi);
    x += cur * k;
    cur *= mi;
  }
  (void)prod;
  return static_cast<Scalar>(x);
}

}  // namespace pir
