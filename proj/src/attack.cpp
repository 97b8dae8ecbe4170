#include "pir/attack.hpp"

#include <algorithm>
#include <functional>

#include "pir/error.hpp"
#include "pir/howell.hpp"
#include "pir/poly.hpp"

namespace pir {

std::uint64_t RankProfile::log_size() const {
  std::uint64_t total = 0;
  for (const auto& c : components)
    for (unsigned v : c.valuations) total += c.e - v;
  return total;
}

RankProfile rank_profile(const MatZ& mat, const Modulus& modulus) {
  RankProfile out;
  for (const Factor& f : modulus.factors()) {
    HowellForm h(f.pe, mat.cols());
    const Scalar pe = f.pe;
    for (Index i = 0; i < mat.rows(); ++i)
      h.add_row(mat.row(i).unaryExpr([pe](Scalar x) { return x % pe; }));
    RankProfile::Component comp{f.p, f.e, {}};
    for (auto [col, piv] : h.pivots()) {
      unsigned v = 0;
      while (piv % f.p == 0) {
        piv /= f.p;
        ++v;
      }
      comp.valuations.push_back(v);
    }
    std::sort(comp.valuations.begin(), comp.valuations.end());
    out.components.push_back(std::move(comp));
  }
  return out;
}

DeletionReport row_deletion_scan(const MatZ& q, const Modulus& modulus, Index rows_per_file) {
  if (rows_per_file <= 0 || q.rows() % rows_per_file != 0)
    fail(Err::DimensionMismatch, "row count not divisible by rows per file");
  const Index t = q.rows() / rows_per_file;
  DeletionReport rep;
  rep.full = rank_profile(q, modulus);
  for (Index i = 0; i < t; ++i) {
    MatZ rest(q.rows() - rows_per_file, q.cols());
    rest.topRows(i * rows_per_file) = q.topRows(i * rows_per_file);
    rest.bottomRows(q.rows() - (i + 1) * rows_per_file) =
        q.bottomRows(q.rows() - (i + 1) * rows_per_file);
    rep.per_file.push_back(rank_profile(rest, modulus));
    rep.drops.push_back(rep.full.log_size() - rep.per_file.back().log_size());
  }
  rep.uniform = std::all_of(rep.per_file.begin(), rep.per_file.end(),
                            [&](const RankProfile& p) { return p == rep.per_file[0]; });
  if (!rep.uniform) {
    auto it = std::max_element(rep.drops.begin(), rep.drops.end());
    if (std::count(rep.drops.begin(), rep.drops.end(), *it) == 1)
      rep.distinguished = 1 + static_cast<Index>(it - rep.drops.begin());
  }
  return rep;
}

Index scan_best_guess(const DeletionReport& rep, Rng& rng) {
  const std::uint64_t best = *std::max_element(rep.drops.begin(), rep.drops.end());
  std::vector<Index> ties;
  for (size_t i = 0; i < rep.drops.size(); ++i)
    if (rep.drops[i] == best) ties.push_back(static_cast<Index>(i) + 1);
  return ties[rng.uniform(ties.size())];
}

// ---- field-based baseline ----

namespace {

// arithmetic in F_{q^s} as polynomials over F_q modulo an irreducible f
struct GfCtx {
  Scalar q;
  Index s;
  VecZ f;  // monic irreducible of degree s
};

VecZ gf_mul(const GfCtx& g, const VecZ& a, const VecZ& b) {
  return poly::rem(poly::mul(a, b, g.q), g.f, g.q);
}

VecZ gf_add(const GfCtx& g, const VecZ& a, const VecZ& b) { return poly::add(a, b, g.q); }

bool gf_is_zero(const VecZ& a) { return poly::degree(a) < 0; }

VecZ gf_inv(const GfCtx& g, const VecZ& a) {
  // extended Euclid over F_q[x]
  VecZ r0 = g.f, r1 = poly::rem(a, g.f, g.q);
  VecZ t0 = VecZ::Zero(1), t1 = VecZ::Ones(1);
  while (poly::degree(r1) > 0) {
    Scalar lead = r1[poly::degree(r1)];
    VecZ r1m = poly::scale(r1, mod_inv(lead, g.q), g.q);
    auto [qq, rr] = poly::divmod(r0, r1m, g.q);
    qq = poly::scale(qq, mod_inv(lead, g.q), g.q);
    VecZ t2 = poly::sub(t0, poly::mul(qq, t1, g.q), g.q);
    r0 = r1;
    r1 = rr;
    t0 = t1;
    t1 = t2;
  }
  if (poly::degree(r1) < 0) fail(Err::NotAUnit, "zero has no inverse in the field");
  return poly::scale(t1, mod_inv(r1[0], g.q), g.q);
}

bool is_irreducible(const VecZ& f, Scalar q) {
  const Index s = poly::degree(f);
  VecZ x = VecZ::Zero(2);
  x[1] = 1;
  // x^(q^s) == x mod f, and gcd(x^(q^(s/t)) - x, f) = 1 for prime t | s
  VecZ w = x;
  for (Index i = 0; i < s; ++i) w = poly::pow_mod_fp(w, q, f, q);
  if (!poly::is_zero(poly::sub(w, x, q))) return false;
  for (Index t = 2; t <= s; ++t) {
    if (s % t != 0) continue;
    bool t_prime = true;
    for (Index d = 2; d * d <= t; ++d)
      if (t % d == 0) t_prime = false;
    if (!t_prime) continue;
    VecZ w2 = x;
    for (Index i = 0; i < s / t; ++i) w2 = poly::pow_mod_fp(w2, q, f, q);
    if (poly::degree(poly::gcd_fp(poly::sub(w2, x, q), f, q)) != 0) return false;
  }
  return true;
}

GfCtx make_gf(Scalar q, Index s, Rng& rng) {
  if (!is_prime_u64(q)) fail(Err::NonPrimeFactor, "baseline needs prime q");
  for (;;) {
    VecZ f = VecZ::Zero(s + 1);
    f[s] = 1;
    for (Index i = 0; i < s; ++i) f[i] = rng.uniform(q);
    if (f[0] == 0) f[0] = 1;
    if (is_irreducible(f, q)) return {q, s, f};
  }
}

using GfRow = std::vector<VecZ>;

// column indices of an information set, or empty if the code is degenerate
std::vector<Index> information_set(const GfCtx& g, std::vector<GfRow> gen) {
  std::vector<Index> cols;
  const Index k = static_cast<Index>(gen.size());
  const Index n = static_cast<Index>(gen[0].size());
  Index row = 0;
  for (Index c = 0; c < n && row < k; ++c) {
    Index pivot = -1;
    for (Index i = row; i < k; ++i)
      if (!gf_is_zero(gen[i][c])) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(gen[row], gen[pivot]);
    VecZ inv = gf_inv(g, gen[row][c]);
    for (Index j = 0; j < n; ++j) gen[row][j] = gf_mul(g, gen[row][j], inv);
    for (Index i = 0; i < k; ++i) {
      if (i == row || gf_is_zero(gen[i][c])) continue;
      VecZ factor = gen[i][c];
      for (Index j = 0; j < n; ++j) {
        VecZ prod = gf_mul(g, factor, gen[row][j]);
        // subtraction over F_q
        gen[i][j] = poly::sub(gen[i][j], prod, g.q);
      }
    }
    cols.push_back(c);
    ++row;
  }
  if (row < k) return {};
  return cols;
}

}  // namespace

MatZ hhwz_baseline_query(const HhwzConfig& cfg, Index d, Rng& rng) {
  if (d < 1 || d > cfg.t) fail(Err::InvalidFileIndex, "file index out of range");
  if (cfg.v >= cfg.s) fail(Err::DimensionMismatch, "v must be below s");
  GfCtx gf = make_gf(cfg.q, cfg.s, rng);

  auto rand_elem = [&](Index lo, Index hi) {  // support in basis positions [lo, hi)
    VecZ c = VecZ::Zero(cfg.s);
    for (Index i = lo; i < hi; ++i) c[i] = rng.uniform(cfg.q);
    return c;
  };

  // random [n, k] code with an information set
  std::vector<GfRow> gen;
  std::vector<Index> info;
  do {
    gen.assign(cfg.k, GfRow(cfg.n));
    for (Index i = 0; i < cfg.k; ++i)
      for (Index j = 0; j < cfg.n; ++j) gen[i][j] = rand_elem(0, cfg.s);
    info = information_set(gf, gen);
  } while (info.empty());
  std::vector<char> in_info(cfg.n, 0);
  for (Index c : info) in_info[c] = 1;

  const Index rows = cfg.t * cfg.rows_per_file;
  MatZ out = MatZ::Zero(rows, cfg.n * cfg.s);
  for (Index file = 1; file <= cfg.t; ++file) {
    for (Index rr = 0; rr < cfg.rows_per_file; ++rr) {
      GfRow row(cfg.n, VecZ::Zero(cfg.s));
      // w: random codeword
      for (Index i = 0; i < cfg.k; ++i) {
        VecZ msg = rand_elem(0, cfg.s);
        if (gf_is_zero(msg)) continue;
        for (Index j = 0; j < cfg.n; ++j)
          row[j] = gf_add(gf, row[j], gf_mul(gf, msg, gen[i][j]));
      }
      for (Index j = 0; j < cfg.n; ++j) {
        if (!in_info[j]) {
          // e: V-part, zero on the information set
          row[j] = gf_add(gf, row[j], rand_elem(0, cfg.v));
        } else if (file == d) {
          // u: nonzero V^c-part on the information set of the desired file
          VecZ u;
          do {
            u = rand_elem(cfg.v, cfg.s);
          } while (gf_is_zero(u));
          row[j] = gf_add(gf, row[j], u);
        }
      }
      const Index out_row = (file - 1) * cfg.rows_per_file + rr;
      for (Index j = 0; j < cfg.n; ++j)
        for (Index b = 0; b < cfg.s; ++b)
          if (b < row[j].size()) out(out_row, j * cfg.s + b) = row[j][b];
    }
  }
  return out;
}

namespace {

double advantage_loop(Index t, int trials, Rng& rng,
                      const std::function<MatZ(Index)>& make_query,
                      const Modulus& modulus, Index rows_per_file) {
  int hits = 0;
  for (int i = 0; i < trials; ++i) {
    const Index d = 1 + static_cast<Index>(rng.uniform(t));
    DeletionReport rep = row_deletion_scan(make_query(d), modulus, rows_per_file);
    if (scan_best_guess(rep, rng) == d) ++hits;
  }
  const double adv = static_cast<double>(hits) / trials - 1.0 / static_cast<double>(t);
  return adv < 0 ? 0.0 : adv;
}

}  // namespace

double ring_advantage(const PirParams& params, int trials, Rng& rng) {
  if (trials < 1) fail(Err::DimensionMismatch, "trials must be positive");
  return advantage_loop(
      params.t, trials, rng,
      [&](Index d) { return gen_query(params, d, rng).first.rows; }, params.modulus, params.r);
}

double baseline_advantage(const HhwzConfig& cfg, int trials, Rng& rng) {
  if (trials < 1) fail(Err::DimensionMismatch, "trials must be positive");
  const Modulus fq = validate_modulus({{cfg.q, 1}});
  return advantage_loop(
      cfg.t, trials, rng, [&](Index d) { return hhwz_baseline_query(cfg, d, rng); }, fq,
      cfg.rows_per_file);
}

}  // namespace pir
