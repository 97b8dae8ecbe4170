// Acceptance suite: runs each release criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exit code is the failure count.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pir/analysis.hpp"
#include "pir/attack.hpp"
#include "pir/formats.hpp"
#include "pir/wire.hpp"
#include "toy_fixtures.hpp"

using namespace pir;

namespace {

struct Criterion {
  std::string name;
  std::function<void()> run;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw std::runtime_error(what);
}

PirParams table1_params(std::uint64_t seed) {
  SetupConfig cfg;
  cfg.modulus = validate_modulus({{2, 2}, {3, 2}});
  cfg.n = 91;
  cfg.s = 5;
  cfg.r = 4;
  cfg.t = 4;
  cfg.L = 8;
  Rng rng(seed);
  return setup(cfg, rng);
}

// 1. golden toy example, bit exact
void criterion_toy_golden() {
  Rng rng(1);
  PirParams params = toy::params(rng);
  auto [q, sec] = gen_query_with_streams(params, 1, toy::streams());
  require(q.rows == toy::q_matrix(), "query matrix mismatch");
  Database db = make_database(toy::db_row(), 3, 15);
  ResponseMatrix resp = server_respond(db, q);
  require(resp.rows.row(0) == toy::r_row(), "response mismatch");
  MatZ file = recover(params, sec, resp);
  require(file(0, 0) == 1, "recovered value is not DB^1 = 1");
}

// 2. intermediate toy checkpoints, bit exact
void criterion_toy_checkpoints() {
  Rng rng(2);
  PirParams params = toy::params(rng);
  auto [q, sec] = gen_query_with_streams(params, 1, toy::streams());
  auto deltas = toy::delta_polys();
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 2; ++j)
      require(q.rows.row(i).segment(26 + 13 * j, 13) == deltas[2 * i + j],
              "delta polynomial mismatch");

  // recompute S from the printed response and check the recovery vector
  Database db = make_database(toy::db_row(), 3, 15);
  ResponseMatrix resp = server_respond(db, q);
  RingMatrix rring = contract_matrix(resp.rows, 13, 15);
  RingMatrix r1(1, 2, 13, 15), r2(1, 2, 13, 15);
  for (Index j = 0; j < 2; ++j) {
    r1.at(0, j) = rring.at(0, j);
    r2.at(0, j) = rring.at(0, 2 + j);
  }
  RingMatrix r1g = ring_matmul(r1, params.outer.g_out());
  VecZ s1 = ring_sub(r2.at(0, 0), r1g.at(0, 0)).coeffs;
  require(s1 == toy::recovery_vector(), "S block mismatch");
  MatZ v(1, 13);
  v.row(0) = s1;
  MatZ syn = matmul_mod(v, MatZ(toy::h_in().transpose()), 15);
  require(syn.row(0) == toy::recovery_syndrome(), "recovery syndrome mismatch");
}

// 3. 100 exact round trips at table-1 scale
void criterion_roundtrips() {
  PirParams params = table1_params(3);
  Rng rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    MatZ entries(params.L, params.t * params.r);
    for (Index i = 0; i < entries.rows(); ++i)
      for (Index j = 0; j < entries.cols(); ++j)
        entries(i, j) = rng.uniform(params.modulus.m_prime());
    Database db = make_database(std::move(entries), params.t, params.modulus.m_prime());
    const Index d = 1 + static_cast<Index>(rng.uniform(params.t));
    auto [q, sec] = gen_query(params, d, rng);
    ResponseMatrix resp = server_respond(db, q);
    require(recover(params, sec, resp) == file_slice(db, d), "round trip mismatch");
  }
}

// 4. rate column of the parameter table, exact rationals
void criterion_rates() {
  Modulus m36 = validate_modulus({{2, 2}, {3, 2}});
  Modulus m216 = validate_modulus({{2, 3}, {3, 3}});
  struct Row {
    const Modulus& m;
    Index n, s, r;
    Rational expect;
  };
  const Row rows[] = {
      {m36, 91, 5, 4, {1, 455}},  {m36, 91, 5, 5, {1, 364}}, {m36, 91, 6, 6, {1, 364}},
      {m36, 91, 10, 10, {1, 364}}, {m216, 91, 5, 5, {1, 546}},
  };
  for (const Row& row : rows) {
    RateReport rep = pir_rate(row.m, row.n, row.s, row.r, 4, 1000);
    require(rep.approx_rate.has_value(), "rate not exactly rational");
    require(*rep.approx_rate == row.expect, "rate mismatch");
  }
}

// 5. work-factor column, exact integers
void criterion_work_factor() {
  Modulus m36 = validate_modulus({{2, 2}, {3, 2}});
  require(cyclotomic_cosets(91, 2).count == 10, "T(91,2) != 10");
  require(cyclotomic_cosets(91, 3).count == 18, "T(91,3) != 18");
  const Index table_s[] = {5, 5, 6, 10, 5};
  for (Index s : table_s) {
    WorkFactor wf = work_factor(m36, 91, s);
    require(wf.t_sum == 28, "per-code bound is not 2^28");
    require(wf.total_exponent == 28 * static_cast<std::uint64_t>(s + 1),
            "total bound is not (2^28)^(s+1)");
  }
}

// 6. attack resistance: identical deletion profiles over 50 compliant queries
void criterion_attack_resistance() {
  SetupConfig cfg;
  cfg.modulus = validate_modulus({{2, 2}, {3, 2}});
  cfg.n = 91;
  cfg.s = 5;
  cfg.r = 4;
  cfg.t = 4;
  cfg.L = 2;
  Rng rng(6);
  PirParams params = setup(cfg, rng);
  for (int trial = 0; trial < 50; ++trial) {
    const Index d = 1 + static_cast<Index>(rng.uniform(params.t));
    auto [q, sec] = gen_query(params, d, rng);
    DeletionReport rep = row_deletion_scan(q.rows, params.modulus, params.r);
    require(rep.uniform, "a deletion profile differed between file blocks");
    require(!rep.distinguished.has_value(), "a file block was distinguished");
  }
}

// 7. attack effectiveness on the field baseline: >= 60% over 200 trials
void criterion_attack_baseline() {
  HhwzConfig cfg;  // q=2, s=4, v=2, n=10, k=4, t=4
  Modulus f2 = validate_modulus({{2, 1}});
  Rng rng(7);
  int hits = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Index d = 1 + static_cast<Index>(rng.uniform(cfg.t));
    DeletionReport rep = row_deletion_scan(hhwz_baseline_query(cfg, d, rng), f2,
                                           cfg.rows_per_file);
    if (rep.distinguished == d) ++hits;
  }
  require(hits >= 120, "baseline identification below 60% (" + std::to_string(hits) + "/200)");
}

// 8. algebra property suites
void criterion_algebra() {
  Modulus m15 = validate_modulus({{3, 1}, {5, 1}});
  Rng rng(8);

  // CRT round trip on 1000 random elements
  for (int k = 0; k < 1000; ++k) {
    VecZ c(13);
    for (Index j = 0; j < 13; ++j) c[j] = rng.uniform(15);
    RingElem a{c, 15};
    require(crt_combine({project(a, m15, 3, 1), project(a, m15, 5, 1)}, m15) == a,
            "CRT round trip failed");
  }

  // parity-check annihilation on 1000 random inner codewords
  CrtCyclicCode cin = crt_code(m15, {make_chain_code(3, 1, 13, {toy::g1()}),
                                     make_chain_code(5, 1, 13, {toy::g2()})});
  const MatZ ht = cin.parity_zm().transpose();
  for (int k = 0; k < 1000; ++k) {
    MatZ row(1, 13);
    row.row(0) = sample_codeword(cin, rng).coeffs;
    require(matmul_mod(row, ht, 15).isZero(), "annihilation failed");
  }

  // exhaustive brute-force agreement at n = 7 for both moduli
  const Modulus m36 = validate_modulus({{2, 2}, {3, 2}});
  for (const Modulus& mod : {m15, m36}) {
    std::vector<std::vector<unsigned>> per_prime_choices;
    std::vector<CrtCyclicCode> codes;
    // enumerate all exponent vectors with a span small enough to enumerate
    std::function<void(std::vector<std::vector<unsigned>>&, size_t)> walk =
        [&](std::vector<std::vector<unsigned>>& exps, size_t prime) {
          if (prime == mod.factors().size()) {
            std::vector<ChainRingCode> comps;
            for (size_t i = 0; i < exps.size(); ++i)
              comps.push_back(chain_code_from_exponents(mod.factors()[i].p, mod.factors()[i].e,
                                                        7, exps[i]));
            CrtCyclicCode code = crt_code(mod, comps);
            std::uint64_t log_total = 0;
            for (size_t i = 0; i < comps.size(); ++i)
              log_total += module_type(comps[i]).log_size(mod.factors()[i].e) *
                           (mod.factors()[i].p == 2 ? 1 : 2);
            if (log_total <= 14) codes.push_back(std::move(code));
            return;
          }
          const Factor& f = mod.factors()[prime];
          const size_t count = factor_xn_minus_1(7, f.p, f.e).size();
          std::vector<unsigned> cur(count, 0);
          std::function<void(size_t)> inner = [&](size_t at) {
            if (at == count) {
              exps.push_back(cur);
              walk(exps, prime + 1);
              exps.pop_back();
              return;
            }
            for (unsigned v = 0; v <= f.e; ++v) {
              cur[at] = v;
              inner(at + 1);
            }
          };
          inner(0);
        };
    std::vector<std::vector<unsigned>> scratch;
    walk(scratch, 0);

    for (const CrtCyclicCode& code : codes) {
      auto span = oracle::span_set(code.generator_zm(), mod.m());

      // contains agrees with the closure on members and random words
      for (const auto& w : span) {
        VecZ v(7);
        for (Index j = 0; j < 7; ++j) v[j] = w[j];
        require(contains(code, v), "span element rejected");
      }
      for (int k = 0; k < 40; ++k) {
        VecZ v(7);
        for (Index j = 0; j < 7; ++j) v[j] = rng.uniform(mod.m());
        require(contains(code, v) == (span.count(oracle::to_word(v)) > 0),
                "membership mismatch");
      }

      // module_type sizes and ranks against the enumeration
      std::size_t predicted = 1;
      for (size_t i = 0; i < code.components().size(); ++i) {
        const auto& comp = code.components()[i];
        auto cs = oracle::span_set(comp.generator_matrix(), comp.pe());
        ModuleType mt = module_type(comp);
        std::size_t size = 1;
        for (std::uint64_t b = 0; b < mt.log_size(comp.e()); ++b) size *= comp.p();
        require(cs.size() == size, "module size mismatch");
        std::size_t killed = 0;
        for (const auto& w : cs) {
          bool k0 = true;
          for (Scalar x : w) k0 = k0 && (x * comp.p() % comp.pe() == 0);
          if (k0) ++killed;
        }
        std::size_t rank_size = 1;
        for (Index b = 0; b < mt.rank(); ++b) rank_size *= comp.p();
        require(killed == rank_size, "module rank mismatch");
        predicted *= size;
      }
      require(span.size() == predicted, "CRT size is not the product of components");

      // is_nonfree against the p-torsion counting oracle
      bool free_bf = true;
      std::vector<std::uint64_t> ranks;
      for (const auto& comp : code.components()) {
        auto cs = oracle::span_set(comp.generator_matrix(), comp.pe());
        std::size_t killed = 0;
        for (const auto& w : cs) {
          bool k0 = true;
          for (Scalar x : w) k0 = k0 && (x * comp.p() % comp.pe() == 0);
          if (k0) ++killed;
        }
        std::uint64_t rank = 0;
        for (std::size_t s = killed; s > 1; s /= comp.p()) ++rank;
        ranks.push_back(rank);
        std::size_t full = 1;
        for (unsigned b = 0; b < comp.e() * rank; ++b) full *= comp.p();
        free_bf = free_bf && (cs.size() == full);
      }
      for (std::uint64_t rk : ranks) free_bf = free_bf && rk == ranks[0];
      require(is_nonfree(code) == !free_bf, "is_nonfree oracle mismatch");
    }

    // intersect against set intersection on random pairs
    for (int k = 0; k < 30 && codes.size() >= 2; ++k) {
      const CrtCyclicCode& a = codes[rng.uniform(codes.size())];
      const CrtCyclicCode& b = codes[rng.uniform(codes.size())];
      CrtCyclicCode inter = intersect(a, b);
      auto expect = oracle::intersect_sets(oracle::span_set(a.generator_zm(), mod.m()),
                                           oracle::span_set(b.generator_zm(), mod.m()));
      auto got = inter.is_zero() ? std::set<oracle::Word>{oracle::Word(7, 0)}
                                 : oracle::span_set(inter.generator_zm(), mod.m());
      require(got == expect, "intersection oracle mismatch");
    }
  }
}

// 9. serialization round trips and the malformed-frame fuzz corpus
void criterion_wire_formats() {
  Rng rng(9);

  // 500 random instances across the three formats
  for (int k = 0; k < 200; ++k) {  // params files
    ParamsDoc doc;
    const bool big = rng.uniform(2) == 0;
    doc.factors = big ? std::vector<std::pair<Scalar, unsigned>>{{2, 2}, {3, 2}}
                      : std::vector<std::pair<Scalar, unsigned>>{{3, 1}, {5, 1}};
    doc.n = 7;
    auto rand_tower = [&](Scalar p, unsigned e) {
      const auto count = factor_xn_minus_1(7, p, e).size();
      std::vector<unsigned> exps(count);
      for (auto& x : exps) x = static_cast<unsigned>(rng.uniform(e + 1));
      return chain_code_from_exponents(p, e, 7, exps).tower();
    };
    doc.inner_towers = {rand_tower(doc.factors[0].first, doc.factors[0].second),
                        rand_tower(doc.factors[1].first, doc.factors[1].second)};
    doc.s = 2;
    doc.mixing = MatZ::Identity(2, 2);
    doc.mixing(0, 1) = rng.uniform(big ? 36 : 15);
    for (Index c = 0; c < 2; ++c)
      doc.constituent_towers.push_back(
          {rand_tower(doc.factors[0].first, doc.factors[0].second),
           rand_tower(doc.factors[1].first, doc.factors[1].second)});
    doc.t = 1 + static_cast<Index>(rng.uniform(4));
    doc.L = 1 + static_cast<Index>(rng.uniform(4));
    doc.r = 1 + static_cast<Index>(rng.uniform(2));
    std::string text = serialize_params(doc);
    require(parse_params(text) == doc, "params round trip value mismatch");
    require(serialize_params(parse_params(text)) == text, "params round trip byte mismatch");
  }
  for (int k = 0; k < 200; ++k) {  // matrix files
    MatrixFileData m;
    m.modulus = 2 + rng.uniform((1ull << 32) - 2);
    m.values.resize(1 + rng.uniform(6), 1 + rng.uniform(6));
    for (Index i = 0; i < m.values.rows(); ++i)
      for (Index j = 0; j < m.values.cols(); ++j) m.values(i, j) = rng.uniform(m.modulus);
    auto bytes = serialize_matrix(m);
    require(parse_matrix(bytes) == m, "matrix round trip value mismatch");
    require(serialize_matrix(parse_matrix(bytes)) == bytes, "matrix round trip byte mismatch");
  }
  for (int k = 0; k < 100; ++k) {  // wire frames
    Frame f;
    f.type = static_cast<MsgType>(1 + rng.uniform(5));
    f.payload.resize(rng.uniform(128));
    for (auto& b : f.payload) b = static_cast<std::uint8_t>(rng.uniform(256));
    require(decode_frame(encode_frame(f)) == f, "frame round trip mismatch");
  }

  // 1000-frame fuzz corpus against the server handler
  Database db = make_database(toy::db_row(), 3, 15);
  Frame good;
  good.type = MsgType::kQuery;
  good.payload = serialize_matrix({toy::q_matrix(), 15});
  const auto good_bytes = encode_frame(good);
  int errors = 0;
  for (int k = 0; k < 1000; ++k) {
    std::vector<std::uint8_t> blob;
    if (rng.uniform(3) == 0) {
      blob.resize(rng.uniform(200));
      for (auto& b : blob) b = static_cast<std::uint8_t>(rng.uniform(256));
    } else {
      blob = good_bytes;
      const int edits = 1 + static_cast<int>(rng.uniform(10));
      for (int m = 0; m < edits; ++m)
        blob[rng.uniform(blob.size())] = static_cast<std::uint8_t>(rng.uniform(256));
      if (rng.uniform(4) == 0) blob.resize(rng.uniform(blob.size() + 1));
    }
    auto reply = handle_frame_bytes(db, blob);
    Frame parsed = decode_frame(reply);  // must always be a well-formed frame
    if (parsed.type == MsgType::kError) ++errors;
  }
  require(errors > 0, "fuzz corpus produced no error frames at all");
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"1 golden toy example (Q, R, recovered file) bit-exact", criterion_toy_golden},
      {"2 toy intermediate checkpoints bit-exact", criterion_toy_checkpoints},
      {"3 100 round trips at m=36, n=91, s=5, r=4, t=4, L=8", criterion_roundtrips},
      {"4 rate column reproduced as exact rationals", criterion_rates},
      {"5 work-factor column reproduced exactly", criterion_work_factor},
      {"6 deletion profiles identical on 50 compliant queries", criterion_attack_resistance},
      {"7 baseline attack identifies the file in >= 60% of 200 trials",
       criterion_attack_baseline},
      {"8 algebra property suites (CRT, annihilation, brute-force oracles)",
       criterion_algebra},
      {"9 format round trips and 1000-frame fuzz corpus", criterion_wire_formats},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string verdict = "PASS", detail;
    try {
      c.run();
    } catch (const std::exception& ex) {
      verdict = "FAIL";
      detail = ex.what();
      ++failures;
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    std::printf("[%s] criterion %s (%lld ms)%s%s\n", verdict.c_str(), c.name.c_str(),
                static_cast<long long>(ms), detail.empty() ? "" : " — ", detail.c_str());
  }
  return failures;
}
