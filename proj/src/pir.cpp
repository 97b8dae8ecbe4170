#include "pir/pir.hpp"

#include "pir/error.hpp"

namespace pir {

namespace {

CrtCyclicCode code_from_spec(const Modulus& modulus, Index n, const CodeSpec& spec) {
  const auto& factors = modulus.factors();
  if (spec.towers.size() != factors.size())
    fail(Err::ComponentCountMismatch, "one tower per prime factor required");
  std::vector<ChainRingCode> comps;
  for (size_t i = 0; i < factors.size(); ++i)
    comps.push_back(make_chain_code(factors[i].p, factors[i].e, n, spec.towers[i]));
  return crt_code(modulus, comps);
}

MatZ random_mixing(Index s, Scalar m, Rng& rng) {
  MatZ out = MatZ::Identity(s, s);
  for (Index i = 0; i < s; ++i)
    for (Index j = i + 1; j < s; ++j) out(i, j) = rng.uniform(m);
  return out;
}

// randomized draw of per-prime exponent vectors for inner + nested
// constituents; shaped so the technical conditions usually hold
struct ExponentDraw {
  std::vector<std::vector<unsigned>> inner;                  // per prime
  std::vector<std::vector<std::vector<unsigned>>> tilde;     // per constituent, per prime
};

ExponentDraw draw_exponents(const Modulus& modulus, Index n, Index s, Rng& rng) {
  ExponentDraw d;
  d.tilde.resize(s);
  for (const Factor& f : modulus.factors()) {
    const auto T = factor_xn_minus_1(n, f.p, f.e).size();
    const unsigned e = f.e;
    // frozen positions: one keeps every constituent non-Hensel, one carries
    // the payload (constituents <= e-1 there, inner = e)
    const size_t fixed_one = rng.uniform(T);
    size_t payload = rng.uniform(T);
    while (T > 1 && payload == fixed_one) payload = rng.uniform(T);

    std::vector<unsigned> base(T);
    for (auto& x : base) x = static_cast<unsigned>(rng.uniform(2));  // {0,1}
    if (e > 1) base[fixed_one] = 1;
    if (base[payload] > e - 1) base[payload] = e - 1;

    std::vector<std::vector<unsigned>> tiers(s, base);
    for (Index i = 1; i < s; ++i) {
      tiers[i] = tiers[i - 1];
      for (size_t k = 0; k < T; ++k) {
        if (k == fixed_one || k == payload) continue;
        if (tiers[i][k] < e && rng.uniform(5) == 0) ++tiers[i][k];
      }
    }

    std::vector<unsigned> inner_exp(T);
    for (auto& x : inner_exp) {
      const auto roll = rng.uniform(100);
      x = roll < 35 ? 0u : (roll < 75 ? std::min(1u, e) : e);
    }
    inner_exp[payload] = e;
    if (e > 1) {
      // keep the inner non-free
      bool has_mid = false;
      for (unsigned x : inner_exp) has_mid = has_mid || (x >= 1 && x < e);
      if (!has_mid) inner_exp[fixed_one] = 1;
    }

    d.inner.push_back(std::move(inner_exp));
    for (Index i = 0; i < s; ++i) d.tilde[i].push_back(tiers[i]);
  }
  return d;
}

bool trial_u_sample(const OuterCode& outer, const CrtCyclicCode& inner, Rng& rng) {
  try {
    (void)sample_u(outer.constituents().back(), inner, rng);
    return true;
  } catch (const Error& err) {
    if (err.code() == Err::EmptySampleSet) return false;
    throw;
  }
}

}  // namespace

PirParams setup(const SetupConfig& cfg, Rng& rng) {
  if (cfg.s <= 0 || cfg.r <= 0 || cfg.t <= 0 || cfg.L <= 0)
    fail(Err::IncompatibleDimensions, "t, L, r, s must all be positive");
  if (cfg.r > cfg.s) fail(Err::IncompatibleDimensions, "r must not exceed s");
  if (cfg.n <= 0 || gcd_u64(static_cast<Scalar>(cfg.n), cfg.modulus.m()) != 1)
    fail(Err::NotCoprime, "gcd(n, m) must be 1");

  PirParams params;
  params.modulus = cfg.modulus;
  params.t = cfg.t;
  params.L = cfg.L;
  params.r = cfg.r;
  params.n = cfg.n;
  params.s = cfg.s;

  const bool explicit_codes = cfg.inner.has_value() && cfg.constituents.has_value();
  if (cfg.inner.has_value() != cfg.constituents.has_value())
    fail(Err::ComponentCountMismatch, "inner and constituent specs come together");

  MatZ mixing = cfg.mixing ? reduced(*cfg.mixing, cfg.modulus.m())
                           : random_mixing(cfg.s, cfg.modulus.m(), rng);
  if (mixing.rows() != cfg.s || mixing.cols() != cfg.s)
    fail(Err::DimensionMismatch, "mixing matrix must be s x s");

  if (explicit_codes) {
    if (static_cast<Index>(cfg.constituents->size()) != cfg.s)
      fail(Err::ComponentCountMismatch, "need s constituent specs");
    params.inner = code_from_spec(cfg.modulus, cfg.n, *cfg.inner);
    std::vector<CrtCyclicCode> cs;
    for (const auto& spec : *cfg.constituents) cs.push_back(code_from_spec(cfg.modulus, cfg.n, spec));
    params.outer = build_outer(std::move(cs), mixing);
    ConditionReport rep = validate_technical_conditions(params.outer, params.inner);
    params.compliant = rep.overall && is_nonfree(params.inner);
    if (!params.compliant && !cfg.allow_noncompliant)
      fail(Err::NoCompliantInstance, "explicit codes fail the technical conditions");
    if (!trial_u_sample(params.outer, params.inner, rng))
      fail(Err::EmptySampleSet, "payload sample set is empty for these codes");
    return params;
  }

  for (int attempt = 0; attempt < cfg.attempts; ++attempt) {
    ExponentDraw d = draw_exponents(cfg.modulus, cfg.n, cfg.s, rng);
    const auto& factors = cfg.modulus.factors();
    std::vector<ChainRingCode> inner_comps;
    for (size_t i = 0; i < factors.size(); ++i)
      inner_comps.push_back(
          chain_code_from_exponents(factors[i].p, factors[i].e, cfg.n, d.inner[i]));
    CrtCyclicCode inner = crt_code(cfg.modulus, std::move(inner_comps));

    std::vector<CrtCyclicCode> cs;
    for (Index i = 0; i < cfg.s; ++i) {
      std::vector<ChainRingCode> comps;
      for (size_t pi = 0; pi < factors.size(); ++pi)
        comps.push_back(
            chain_code_from_exponents(factors[pi].p, factors[pi].e, cfg.n, d.tilde[i][pi]));
      cs.push_back(crt_code(cfg.modulus, std::move(comps)));
    }
    OuterCode outer = build_outer(std::move(cs), mixing);

    ConditionReport rep = validate_technical_conditions(outer, inner);
    if (!(rep.overall && is_nonfree(inner)) && !cfg.allow_noncompliant) continue;
    if (!trial_u_sample(outer, inner, rng)) continue;

    params.inner = std::move(inner);
    params.outer = std::move(outer);
    params.compliant = rep.overall && is_nonfree(params.inner);
    return params;
  }
  fail(Err::NoCompliantInstance, "no compliant instance within the attempt budget");
}

Database make_database(MatZ entries, Index t, Scalar m_prime) {
  if (t <= 0 || entries.cols() % t != 0)
    fail(Err::DimensionMismatch, "database width must be t * r");
  for (Index i = 0; i < entries.rows(); ++i)
    for (Index j = 0; j < entries.cols(); ++j)
      if (entries(i, j) >= m_prime) fail(Err::Overflow, "database entry not in Z_{m'}");
  return {std::move(entries), t, m_prime};
}

MatZ file_slice(const Database& db, Index d) {
  const Index r = db.file_cols();
  return db.entries.middleCols((d - 1) * r, r);
}

namespace {

QueryStreams draw_streams(const PirParams& params, Rng& rng) {
  QueryStreams st;
  const Scalar m = params.modulus.m();
  const Scalar mp = params.modulus.m_prime();
  const Scalar ratio = m / mp;  // coefficients of A live in m' * Z_{m/m'}
  const Index count = params.t * params.r * params.s;
  for (Index i = 0; i < count; ++i) {
    VecZ c(params.n);
    for (Index j = 0; j < params.n; ++j) c[j] = mp * rng.uniform(ratio) % m;
    st.a.push_back({std::move(c), m});
  }
  const CrtCyclicCode e_domain = sampling_torsion_domain(params.inner);
  for (Index i = 0; i < count; ++i) st.e.push_back(sample_codeword(e_domain, rng));
  const CrtCyclicCode u_domain =
      u_sample_domain(params.outer.constituents().back(), params.inner);
  for (Index i = 0; i < params.r; ++i)
    st.u.push_back(sample_u_from_domain(u_domain, params.inner, rng));
  st.gamma = 1 + static_cast<Index>(rng.uniform(params.s - params.r + 1));
  return st;
}

}  // namespace

std::pair<QueryMatrix, QuerySecrets> gen_query_with_streams(const PirParams& params, Index d,
                                                            const QueryStreams& streams) {
  if (d < 1 || d > params.t) fail(Err::InvalidFileIndex, "file index out of range");
  const Index t = params.t, r = params.r, s = params.s, n = params.n;
  const Scalar m = params.modulus.m();
  const Index expected = t * r * s;
  if (static_cast<Index>(streams.a.size()) != expected ||
      static_cast<Index>(streams.e.size()) != expected ||
      static_cast<Index>(streams.u.size()) != r)
    fail(Err::DimensionMismatch, "stream lengths do not match t*r*s / r");
  if (streams.gamma < 1 || streams.gamma > s - r + 1)
    fail(Err::DimensionMismatch, "gamma out of range");

  QuerySecrets sec;
  sec.d = d;
  sec.gamma = streams.gamma;
  sec.a = RingMatrix(t * r, s, n, m);
  sec.e = RingMatrix(t * r, s, n, m);
  sec.u = RingMatrix(t * r, s, n, m);
  Index pos = 0;
  for (Index row = 0; row < t * r; ++row)
    for (Index j = 0; j < s; ++j) {
      sec.a.at(row, j) = streams.a[pos];
      sec.e.at(row, j) = streams.e[pos];
      ++pos;
    }
  for (Index lambda = 0; lambda < r; ++lambda)
    sec.u.at((d - 1) * r + lambda, streams.gamma - 1 + lambda) = streams.u[lambda];

  // delta = a * G_OUT + e + u, file by file
  RingMatrix delta(t * r, s, n, m);
  for (Index i = 0; i < t; ++i) {
    RingMatrix ai(r, s, n, m);
    for (Index k = 0; k < r; ++k)
      for (Index j = 0; j < s; ++j) ai.at(k, j) = sec.a.at(i * r + k, j);
    RingMatrix wi = ring_matmul(ai, params.outer.g_out());
    for (Index k = 0; k < r; ++k)
      for (Index j = 0; j < s; ++j) {
        RingElem v = ring_add(wi.at(k, j), sec.e.at(i * r + k, j));
        delta.at(i * r + k, j) = ring_add(v, sec.u.at(i * r + k, j));
      }
  }

  QueryMatrix q;
  q.modulus = m;
  q.rows.resize(t * r, 2 * n * s);
  q.rows.leftCols(n * s) = expand_matrix(sec.a);
  q.rows.rightCols(n * s) = expand_matrix(delta);
  return {std::move(q), std::move(sec)};
}

std::pair<QueryMatrix, QuerySecrets> gen_query(const PirParams& params, Index d, Rng& rng) {
  if (d < 1 || d > params.t) fail(Err::InvalidFileIndex, "file index out of range");
  return gen_query_with_streams(params, d, draw_streams(params, rng));
}

ResponseMatrix server_respond(const Database& db, const QueryMatrix& q) {
  if (db.entries.cols() != q.rows.rows())
    fail(Err::DimensionMismatch, "query row count must equal database width");
  return {matmul_mod(db.entries, q.rows, q.modulus), q.modulus};
}

MatZ recover(const PirParams& params, const QuerySecrets& secrets, const ResponseMatrix& resp) {
  const Index n = params.n, s = params.s, r = params.r, L = params.L;
  const Scalar m = params.modulus.m();
  if (resp.rows.cols() != 2 * n * s || resp.rows.rows() != L)
    fail(Err::DimensionMismatch, "response shape mismatch");

  RingMatrix rring = contract_matrix(resp.rows, n, m);
  RingMatrix r1(L, s, n, m), r2(L, s, n, m);
  for (Index i = 0; i < L; ++i)
    for (Index j = 0; j < s; ++j) {
      r1.at(i, j) = rring.at(i, j);
      r2.at(i, j) = rring.at(i, s + j);
    }
  RingMatrix r1g = ring_matmul(r1, params.outer.g_out());

  const MatZ& h = params.inner.parity_zm();
  const MatZ ht = h.transpose();
  const auto& factors = params.modulus.factors();
  std::vector<Scalar> primes(factors.size());
  for (size_t i = 0; i < factors.size(); ++i) primes[i] = factors[i].p;

  MatZ out(L, r);
  for (Index lambda = 0; lambda < r; ++lambda) {
    const Index block = secrets.gamma - 1 + lambda;
    // S restricted to this column block, expanded over Z_m
    MatZ sblock(L, n);
    for (Index i = 0; i < L; ++i) {
      RingElem v = ring_sub(r2.at(i, block), r1g.at(i, block));
      sblock.row(i) = v.coeffs;
    }
    MatZ mrows = matmul_mod(sblock, ht, m);

    const RingElem& u = secrets.u.at((secrets.d - 1) * r + lambda, block);
    MatZ urow(1, n);
    urow.row(0) = u.coeffs;
    MatZ crow = matmul_mod(urow, ht, m);

    for (Index i = 0; i < L; ++i) {
      std::vector<Scalar> residues(factors.size());
      for (size_t pi = 0; pi < factors.size(); ++pi) {
        const Scalar p = factors[pi].p, pe = factors[pi].pe;
        Scalar found = 0;
        int hits = 0;
        for (Scalar x = 0; x < p; ++x) {
          bool match = true;
          for (Index j = 0; j < crow.cols(); ++j)
            if (x * (crow(0, j) % pe) % pe != mrows(i, j) % pe) {
              match = false;
              break;
            }
          if (match) {
            found = x;
            ++hits;
          }
        }
        if (hits == 0) fail(Err::NoSolution, "no per-prime solution; corrupted response?");
        if (hits > 1) fail(Err::AmbiguousSolution, "payload marker does not separate values");
        residues[pi] = found;
      }
      out(i, lambda) = crt_lift(residues, primes);
    }
  }
  return out;
}

}  // namespace pir
