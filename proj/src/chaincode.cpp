#include "pir/chaincode.hpp"

#include <map>
#include <mutex>
#include <numeric>

#include "pir/error.hpp"
#include "pir/poly.hpp"
#include "pir/rng.hpp"
#include "pir/zmod.hpp"

namespace pir {

namespace {

std::uint64_t mul_order(std::uint64_t q, std::uint64_t d) {
  // multiplicative order of q mod d, gcd(q, d) = 1
  if (d == 1) return 1;
  std::uint64_t x = q % d, ord = 1;
  while (x != 1) {
    x = x * q % d;
    ++ord;
  }
  return ord;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace

std::uint64_t coset_count_formula(std::uint64_t n, std::uint64_t q) {
  std::uint64_t t = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    t += euler_phi(d) / mul_order(q, d);
    if (d != n / d) t += euler_phi(n / d) / mul_order(q, n / d);
  }
  return t;
}

CyclotomicCosets cyclotomic_cosets(std::uint64_t n, std::uint64_t q) {
  if (n == 0 || gcd_u64(n, q) != 1) fail(Err::NotCoprime, "gcd(n, q) must be 1");
  CyclotomicCosets out;
  std::vector<char> seen(n, 0);
  for (std::uint64_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<std::uint64_t> coset;
    std::uint64_t x = start;
    do {
      seen[x] = 1;
      coset.push_back(x);
      x = x * (q % n) % n;
    } while (x != start);
    out.cosets.push_back(std::move(coset));
  }
  out.count = out.cosets.size();
  if (out.count != coset_count_formula(n, q))
    fail(Err::NotCoprime, "coset count disagrees with divisor-sum formula");
  return out;
}

namespace {

// ---- factorization of x^n - 1 over F_p (distinct/equal degree) ----

std::vector<VecZ> equal_degree_split(const VecZ& f, Index d, Scalar p, Rng& rng) {
  using namespace poly;
  std::vector<VecZ> done, work{f};
  while (!work.empty()) {
    VecZ g = work.back();
    work.pop_back();
    if (degree(g) == d) {
      done.push_back(g);
      continue;
    }
    // random splitting polynomial
    VecZ h(degree(g));
    for (Index i = 0; i < h.size(); ++i) h[i] = rng.uniform(p);
    if (degree(h) < 1 && degree(h) != 0) continue;
    VecZ split;
    if (p == 2) {
      // trace map over F_{2^d}: h + h^2 + ... + h^(2^(d-1))
      VecZ tr = VecZ::Zero(1), cur = rem(h, g, p);
      for (Index i = 0; i < d; ++i) {
        tr = add(tr, cur, p);
        cur = rem(mul(cur, cur, p), g, p);
      }
      split = gcd_fp(tr, g, p);
    } else {
      // norm map: N(h) = prod h^(p^i), then N(h)^((p-1)/2) - 1
      VecZ nh = VecZ::Ones(1), cur = rem(h, g, p);
      for (Index i = 0; i < d; ++i) {
        nh = rem(mul(nh, cur, p), g, p);
        cur = pow_mod_fp(cur, p, g, p);
      }
      VecZ t = pow_mod_fp(nh, (p - 1) / 2, g, p);
      t = sub(t, VecZ::Ones(1), p);
      split = gcd_fp(t, g, p);
    }
    if (degree(split) <= 0 || degree(split) == degree(g)) {
      work.push_back(g);  // unlucky draw, retry
      continue;
    }
    work.push_back(split);
    work.push_back(divmod(g, split, p).first);
  }
  return done;
}

std::vector<VecZ> factor_squarefree_fp(VecZ f, Scalar p, Rng& rng) {
  using namespace poly;
  std::vector<VecZ> factors;
  VecZ x = VecZ::Zero(2);
  x[1] = 1;
  VecZ w = x;
  Index d = 0;
  while (degree(f) > 0) {
    ++d;
    if (2 * d > degree(f)) {
      factors.push_back(f);  // what remains is irreducible
      break;
    }
    w = pow_mod_fp(w, p, f, p);
    VecZ g = gcd_fp(sub(w, x, p), f, p);
    if (degree(g) > 0) {
      for (VecZ& piece : equal_degree_split(g, d, p, rng)) factors.push_back(std::move(piece));
      f = divmod(f, g, p).first;
      w = rem(w, f, p);
    }
  }
  return factors;
}

// ---- Hensel lifting mod p -> mod p^e ----

// f = g*h mod p^k with gcd(g,h) = 1 mod p; returns (g', h') mod p^{k+1}
std::pair<VecZ, VecZ> hensel_step(const VecZ& f, VecZ g, VecZ h, Scalar p, Scalar pk,
                                  Scalar pk1) {
  using namespace poly;
  // E = (f - g h) / p^k, computed over Z_{p^{k+1}} then divided exactly
  VecZ gh = mul(g, h, pk1);
  VecZ diff = sub(f.unaryExpr([pk1](Scalar x) { return x % pk1; }), gh, pk1);
  VecZ E = VecZ::Zero(std::max<Index>(diff.size(), 1));
  for (Index i = 0; i < diff.size(); ++i) E[i] = (diff[i] / pk) % p;

  // Bezout over F_p: s g + t h = 1
  VecZ gp = g.unaryExpr([p](Scalar x) { return x % p; });
  VecZ hp = h.unaryExpr([p](Scalar x) { return x % p; });
  // extended Euclid over F_p[x]
  VecZ r0 = gp, r1 = hp, s0 = VecZ::Ones(1), s1 = VecZ::Zero(1);
  while (degree(r1) >= 0) {
    Scalar lead = r1[degree(r1)];
    VecZ r1m = scale(r1, mod_inv(lead, p), p);
    auto [q, r] = divmod(r0, r1m, p);
    q = scale(q, mod_inv(lead, p), p);
    VecZ s2 = sub(s0, mul(q, s1, p), p);
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
  }
  // r0 = gcd = nonzero constant; s0 g = r0 mod h
  Scalar c = mod_inv(r0[0], p);
  VecZ s = scale(s0, c, p);  // s g = 1 mod h over F_p
  // t follows from (1 - s g)/h but is not needed explicitly below

  // want G, H with G h + H g = E mod p, deg G < deg g: G = t E mod g.
  // using s g = 1 mod h: H' = s E mod h, then G = (E - H' g)/h
  VecZ Hc = rem(mul(s, E, p), hp, p);
  VecZ num = sub(E, mul(Hc, gp, p), p);
  auto [G, r] = divmod(num, scale(hp, mod_inv(hp[degree(hp)], p), p), p);
  G = scale(G, mod_inv(hp[degree(hp)], p), p);
  if (degree(r) >= 0) fail(Err::BrokenTower, "hensel step: non-exact division");

  VecZ g1 = add(g, scale(G, pk, pk1), pk1);
  VecZ h1 = add(h, scale(Hc, pk, pk1), pk1);
  return {g1, h1};
}

VecZ lift_factor(const VecZ& f_target, const VecZ& g0, const VecZ& rest0, Scalar p, unsigned e) {
  using namespace poly;
  VecZ g = g0, h = rest0;
  Scalar pk = p;
  for (unsigned k = 1; k < e; ++k) {
    Scalar pk1 = pk * p;
    auto [g1, h1] = hensel_step(f_target, g, h, p, pk, pk1);
    g = g1;
    h = h1;
    pk = pk1;
  }
  return g;
}

struct FactorKey {
  Index n;
  Scalar p;
  unsigned e;
  auto operator<=>(const FactorKey&) const = default;
};

std::map<FactorKey, std::vector<VecZ>> factor_cache;
std::mutex factor_cache_mutex;

}  // namespace

std::vector<VecZ> factor_xn_minus_1(Index n, Scalar p, unsigned e) {
  if (n <= 0 || gcd_u64(static_cast<Scalar>(n), p) != 1)
    fail(Err::NotCoprime, "gcd(n, p) must be 1");
  {
    std::scoped_lock lock(factor_cache_mutex);
    auto it = factor_cache.find({n, p, e});
    if (it != factor_cache.end()) return it->second;
  }
  Scalar pe = 1;
  for (unsigned i = 0; i < e; ++i) pe *= p;

  Rng rng(0x9e3779b97f4a7c15ULL ^ (static_cast<Scalar>(n) << 16) ^ p);  // fixed seed: deterministic output
  VecZ f1 = poly::xn_minus_1(n, p);
  std::vector<VecZ> mod_p = factor_squarefree_fp(f1, p, rng);

  // lift each factor against the product of the others
  std::vector<VecZ> lifted;
  if (e == 1) {
    lifted = mod_p;
  } else {
    VecZ remaining = poly::xn_minus_1(n, pe);
    std::vector<VecZ> rest = mod_p;
    while (rest.size() > 1) {
      VecZ g0 = rest.back();
      rest.pop_back();
      VecZ prod = VecZ::Ones(1);
      for (const VecZ& r : rest) prod = poly::mul(prod, r, p);
      VecZ g = lift_factor(remaining, g0, prod, p, e);
      lifted.push_back(g);
      remaining = poly::divmod(remaining, g, pe).first;
    }
    lifted.push_back(remaining);
  }

  // sanity: count matches the coset bound and the product multiplies back
  if (lifted.size() != cyclotomic_cosets(n, p).count)
    fail(Err::BrokenTower, "factor count does not match cyclotomic coset count");
  VecZ prod = VecZ::Ones(1);
  for (const VecZ& g : lifted) prod = poly::mul(prod, g, pe);
  if (!poly::is_zero(poly::sub(prod, poly::xn_minus_1(n, pe), pe)))
    fail(Err::BrokenTower, "lifted factors do not multiply back to x^n - 1");

  // canonical order: by degree, then lexicographic on coefficients
  std::sort(lifted.begin(), lifted.end(), [](const VecZ& a, const VecZ& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (Index i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  });
  std::scoped_lock lock(factor_cache_mutex);
  factor_cache[{n, p, e}] = lifted;
  return lifted;
}

ChainRingCode make_chain_code(Scalar p, unsigned e, Index n, std::vector<VecZ> tower) {
  if (e < 1 || tower.size() != e) fail(Err::BrokenTower, "tower must have exactly e entries");
  if (!is_prime_u64(p)) fail(Err::NonPrimeFactor, "p must be prime");
  if (gcd_u64(static_cast<Scalar>(n), p) != 1) fail(Err::NotCoprime, "gcd(n, p) must be 1");
  ChainRingCode code;
  code.p_ = p;
  code.e_ = e;
  code.n_ = n;
  Scalar pe = 1;
  for (unsigned i = 0; i < e; ++i) pe *= p;
  code.pe_ = pe;

  for (auto& f : tower) {
    f = f.unaryExpr([pe](Scalar x) { return x % pe; });
    f = poly::trim(f);
    if (!poly::is_monic(f, pe)) fail(Err::NotMonic, "tower entries must be monic");
  }
  VecZ xn1 = poly::xn_minus_1(n, pe);
  if (!poly::is_zero(poly::rem(xn1, tower[0], pe)))
    fail(Err::NotADivisor, "f_0 does not divide x^n - 1");
  for (unsigned j = 1; j < e; ++j)
    if (!poly::is_zero(poly::rem(tower[j - 1], tower[j], pe)))
      fail(Err::BrokenTower, "tower divisibility fails at level " + std::to_string(j));
  code.tower_ = std::move(tower);

  // standard generator matrix: shifts x^i p^j f_j, i < deg f_{j-1} - deg f_j
  std::vector<VecZ> rows;
  Scalar pj = 1;
  Index prev_deg = n;
  for (unsigned j = 0; j < e; ++j) {
    const VecZ& f = code.tower_[j];
    Index d = poly::degree(f);
    for (Index i = 0; i < prev_deg - d; ++i) {
      VecZ row = VecZ::Zero(n);
      for (Index k = 0; k <= d; ++k) row[(k + i) % n] = f[k] * pj % pe;
      rows.push_back(std::move(row));
    }
    prev_deg = d;
    pj *= p;
  }
  code.gen_.resize(static_cast<Index>(rows.size()), n);
  for (size_t i = 0; i < rows.size(); ++i) code.gen_.row(static_cast<Index>(i)) = rows[i];
  code.howell_ = HowellForm(pe, n);
  code.howell_.add_rows(code.gen_);
  return code;
}

ModuleType module_type(const ChainRingCode& code) {
  ModuleType mt;
  Index prev = code.n();
  for (const VecZ& f : code.tower()) {
    Index d = poly::degree(f);
    mt.ks.push_back(prev - d);
    prev = d;
  }
  return mt;
}

bool is_hensel_lift(const ChainRingCode& code) {
  ModuleType mt = module_type(code);
  for (size_t j = 1; j < mt.ks.size(); ++j)
    if (mt.ks[j] != 0) return false;
  return true;
}

MatZ standard_generator_matrix(const ChainRingCode& code) { return code.generator_matrix(); }

bool contains(const ChainRingCode& code, const VecZ& word) {
  return code.howell().contains(word);
}

namespace {

// per-factor exponents of a span: min valuation of the rows mod each h_i
std::vector<unsigned> exponents_from_rows(const std::vector<VecZ>& factors, const MatZ& rows,
                                          Scalar p, unsigned e, Scalar pe) {
  std::vector<unsigned> exps(factors.size(), e);
  for (size_t i = 0; i < factors.size(); ++i) {
    for (Index r = 0; r < rows.rows(); ++r) {
      VecZ res = poly::rem(rows.row(r), factors[i], pe);
      unsigned v = e;
      for (Index k = 0; k < res.size(); ++k) {
        Scalar x = res[k];
        if (x == 0) continue;
        unsigned vx = 0;
        while (x % p == 0) {
          x /= p;
          ++vx;
        }
        v = std::min(v, vx);
      }
      exps[i] = std::min(exps[i], v);
      if (exps[i] == 0) break;
    }
  }
  return exps;
}

}  // namespace

std::vector<unsigned> factor_exponents(const ChainRingCode& code) {
  const auto factors = factor_xn_minus_1(code.n(), code.p(), code.e());
  return exponents_from_rows(factors, code.generator_matrix(), code.p(), code.e(), code.pe());
}

ChainRingCode chain_code_from_exponents(Scalar p, unsigned e, Index n,
                                        const std::vector<unsigned>& exps) {
  const auto factors = factor_xn_minus_1(n, p, e);
  if (exps.size() != factors.size())
    fail(Err::ComponentMismatch, "one exponent per Hensel factor required");
  Scalar pe = 1;
  for (unsigned i = 0; i < e; ++i) pe *= p;
  std::vector<VecZ> tower;
  for (unsigned j = 0; j < e; ++j) {
    VecZ f = VecZ::Ones(1);
    for (size_t i = 0; i < factors.size(); ++i)
      if (exps[i] > j) f = poly::mul(f, factors[i], pe);
    tower.push_back(f);
  }
  return make_chain_code(p, e, n, std::move(tower));
}

ChainRingCode chain_code_from_span(Scalar p, unsigned e, Index n, const MatZ& span_rows) {
  const auto factors = factor_xn_minus_1(n, p, e);
  Scalar pe = 1;
  for (unsigned i = 0; i < e; ++i) pe *= p;
  return chain_code_from_exponents(p, e, n,
                                   exponents_from_rows(factors, span_rows, p, e, pe));
}

ChainRingCode dual_chain_code(const ChainRingCode& code) {
  MatZ dual_gens = right_annihilator(code.generator_matrix(), code.pe());
  ChainRingCode dual = chain_code_from_span(code.p(), code.e(), code.n(), dual_gens);
  // the extraction is only valid if the kernel span is reproduced exactly
  if (!same_matrix(howell_form(dual_gens, code.pe()),
                   howell_form(dual.generator_matrix(), code.pe())))
    fail(Err::BrokenTower, "dual span is not a cyclic code in tower form");
  return dual;
}

}  // namespace pir
