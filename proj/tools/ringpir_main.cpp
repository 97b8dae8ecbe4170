// Command-line front end: setup / query / respond / serve / send / recover /
// attack / rate / gendb. One-line diagnostics and a nonzero exit code on any
// validation failure.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <thread>
#include <iostream>

#include "pir/analysis.hpp"
#include "pir/attack.hpp"
#include "pir/formats.hpp"
#include "pir/wire.hpp"

using namespace pir;

namespace {

std::vector<std::pair<Scalar, unsigned>> parse_factor_list(const std::string& text) {
  std::vector<std::pair<Scalar, unsigned>> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    auto caret = cur.find('^');
    if (caret == std::string::npos)
      out.emplace_back(std::stoull(cur), 1u);
    else
      out.emplace_back(std::stoull(cur.substr(0, caret)),
                       static_cast<unsigned>(std::stoul(cur.substr(caret + 1))));
    cur.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ')
      flush();
    else
      cur += c;
  }
  flush();
  return out;
}

std::uint64_t seed_from(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("PIR_SEED")) return std::stoull(env);
  return std::random_device{}();
}

std::pair<std::string, std::uint16_t> parse_addr(const std::string& addr) {
  auto colon = addr.rfind(':');
  if (colon == std::string::npos) fail(Err::ParseError, "address must be host:port");
  return {addr.substr(0, colon),
          static_cast<std::uint16_t>(std::stoul(addr.substr(colon + 1)))};
}

QueryStreams streams_from_secrets(const SecretsDoc& doc) {
  QueryStreams st;
  st.gamma = doc.gamma;
  for (Index i = 0; i < doc.a.rows(); ++i)
    for (Index j = 0; j < doc.a.cols(); ++j) {
      st.a.push_back(doc.a.at(i, j));
      st.e.push_back(doc.e.at(i, j));
    }
  for (Index lambda = 0; lambda < doc.r; ++lambda)
    st.u.push_back(doc.u.at((doc.d - 1) * doc.r + lambda, doc.gamma - 1 + lambda));
  return st;
}

int run(int argc, char** argv) {
  CLI::App app{"single-server PIR over Z_m cyclic codes"};
  app.require_subcommand(1);

  // --- setup ---
  auto* setup_cmd = app.add_subcommand("setup", "search codes and write a params file");
  std::string setup_out, setup_factors;
  std::uint64_t su_n = 0, su_s = 0, su_r = 0, su_t = 0, su_L = 0;
  std::optional<std::uint64_t> setup_seed;
  bool allow_noncompliant = false;
  setup_cmd->add_option("--params", setup_out, "output params file")->required();
  setup_cmd->add_option("--m-factors", setup_factors, "prime powers, e.g. 2^2,3^2")->required();
  setup_cmd->add_option("--n", su_n)->required();
  setup_cmd->add_option("--s", su_s)->required();
  setup_cmd->add_option("--r", su_r)->required();
  setup_cmd->add_option("--t", su_t)->required();
  setup_cmd->add_option("--L", su_L)->required();
  setup_cmd->add_option("--seed", setup_seed);
  setup_cmd->add_flag("--allow-noncompliant", allow_noncompliant);

  // --- gendb ---
  auto* gendb_cmd = app.add_subcommand("gendb", "write a random database file");
  std::string gendb_out, gendb_params;
  std::optional<std::uint64_t> gendb_seed;
  gendb_cmd->add_option("--params", gendb_params, "params file fixing shape and alphabet")
      ->required();
  gendb_cmd->add_option("--out", gendb_out)->required();
  gendb_cmd->add_option("--seed", gendb_seed);

  // --- query ---
  auto* query_cmd = app.add_subcommand("query", "generate a query matrix and secrets");
  std::string q_params, q_out, q_secrets, q_inject;
  std::uint64_t q_d = 0;
  std::optional<std::uint64_t> q_seed;
  query_cmd->add_option("--params", q_params)->required();
  query_cmd->add_option("--d", q_d, "desired file index, 1-based")->required();
  query_cmd->add_option("--out", q_out, "query matrix file")->required();
  query_cmd->add_option("--secrets", q_secrets, "query secrets file")->required();
  query_cmd->add_option("--seed", q_seed);
  query_cmd->add_option("--inject", q_inject,
                        "secrets file providing fixed randomness (test mode)");

  // --- respond ---
  auto* respond_cmd = app.add_subcommand("respond", "offline server response");
  std::string rp_db, rp_query, rp_out;
  respond_cmd->add_option("--db", rp_db)->required();
  respond_cmd->add_option("--query", rp_query)->required();
  respond_cmd->add_option("--out", rp_out)->required();

  // --- serve ---
  auto* serve_cmd = app.add_subcommand("serve", "run the PIR server");
  std::string sv_db, sv_bind = "127.0.0.1:7777";
  std::uint64_t sv_t = 0;
  serve_cmd->add_option("--db", sv_db)->required();
  serve_cmd->add_option("--bind", sv_bind, "host:port");
  serve_cmd->add_option("--t", sv_t, "file count (for DB_INFO; default: one column per file)");

  // --- send ---
  auto* send_cmd = app.add_subcommand("send", "send a query to a server");
  std::string sd_addr, sd_query, sd_out;
  send_cmd->add_option("--addr", sd_addr, "host:port")->required();
  send_cmd->add_option("--query", sd_query)->required();
  send_cmd->add_option("--out", sd_out, "response matrix file")->required();

  // --- recover ---
  auto* recover_cmd = app.add_subcommand("recover", "decode the desired file");
  std::string rc_params, rc_secrets, rc_resp, rc_out;
  recover_cmd->add_option("--params", rc_params)->required();
  recover_cmd->add_option("--secrets", rc_secrets)->required();
  recover_cmd->add_option("--response", rc_resp)->required();
  recover_cmd->add_option("--out", rc_out)->required();

  // --- attack ---
  auto* attack_cmd = app.add_subcommand("attack", "row-deletion rank-profile scan");
  std::string at_query, at_factors, at_params;
  std::uint64_t at_r = 1;
  int at_trials = 0;
  bool at_baseline = false;
  std::optional<std::uint64_t> at_seed;
  attack_cmd->add_option("--query", at_query, "query matrix to scan");
  attack_cmd->add_option("--m-factors", at_factors, "public factorization of m");
  attack_cmd->add_option("--rows-per-file", at_r);
  attack_cmd->add_option("--trials", at_trials,
                         "Monte-Carlo advantage trials (needs --params)");
  attack_cmd->add_option("--params", at_params, "params file for advantage estimation");
  attack_cmd->add_flag("--baseline", at_baseline, "run the field-based baseline bench");
  attack_cmd->add_option("--seed", at_seed);

  // --- rate ---
  auto* rate_cmd = app.add_subcommand("rate", "PIR rate and work-factor report");
  std::string rt_factors;
  std::uint64_t rt_n = 0, rt_s = 0, rt_r = 0, rt_t = 4, rt_L = 1000;
  rate_cmd->add_option("--m-factors", rt_factors)->required();
  rate_cmd->add_option("--n", rt_n)->required();
  rate_cmd->add_option("--s", rt_s)->required();
  rate_cmd->add_option("--r", rt_r)->required();
  rate_cmd->add_option("--t", rt_t);
  rate_cmd->add_option("--L", rt_L);

  CLI11_PARSE(app, argc, argv);

  if (*setup_cmd) {
    SetupConfig cfg;
    cfg.modulus = validate_modulus(parse_factor_list(setup_factors));
    cfg.n = static_cast<Index>(su_n);
    cfg.s = static_cast<Index>(su_s);
    cfg.r = static_cast<Index>(su_r);
    cfg.t = static_cast<Index>(su_t);
    cfg.L = static_cast<Index>(su_L);
    cfg.allow_noncompliant = allow_noncompliant;
    Rng rng(seed_from(setup_seed));
    PirParams params = setup(cfg, rng);
    write_file(setup_out, serialize_params(doc_from_params(params)));
    std::cout << "wrote " << setup_out << (params.compliant ? " (compliant)" : " (NONCOMPLIANT)")
              << "\n";
    return 0;
  }

  if (*gendb_cmd) {
    Rng rng(seed_from(gendb_seed));
    Rng unused(0);
    PirParams params = params_from_doc(parse_params(read_text_file(gendb_params)), unused);
    MatZ entries(params.L, params.t * params.r);
    for (Index i = 0; i < entries.rows(); ++i)
      for (Index j = 0; j < entries.cols(); ++j)
        entries(i, j) = rng.uniform(params.modulus.m_prime());
    write_file(gendb_out, serialize_matrix({entries, params.modulus.m_prime()}));
    std::cout << "wrote " << gendb_out << " (" << params.L << " x " << params.t * params.r
              << " over Z_" << params.modulus.m_prime() << ")\n";
    return 0;
  }

  if (*query_cmd) {
    Rng rng(seed_from(q_seed));
    PirParams params = params_from_doc(parse_params(read_text_file(q_params)), rng);
    std::pair<QueryMatrix, QuerySecrets> out;
    if (!q_inject.empty()) {
      SecretsDoc injected = parse_secrets(read_text_file(q_inject));
      out = gen_query_with_streams(params, static_cast<Index>(q_d),
                                   streams_from_secrets(injected));
    } else {
      out = gen_query(params, static_cast<Index>(q_d), rng);
    }
    write_file(q_out, serialize_matrix({out.first.rows, out.first.modulus}));
    write_file(q_secrets, serialize_secrets(doc_from_secrets(params, out.second)));
    std::cout << "wrote " << q_out << " and " << q_secrets << "\n";
    return 0;
  }

  if (*respond_cmd) {
    MatrixFileData dbm = parse_matrix(read_binary_file(rp_db));
    MatrixFileData qm = parse_matrix(read_binary_file(rp_query));
    Database db = make_database(dbm.values, dbm.values.cols(), dbm.modulus);
    ResponseMatrix resp = server_respond(db, {qm.values, qm.modulus});
    write_file(rp_out, serialize_matrix({resp.rows, resp.modulus}));
    std::cout << "wrote " << rp_out << "\n";
    return 0;
  }

  if (*serve_cmd) {
    MatrixFileData dbm = parse_matrix(read_binary_file(sv_db));
    const Index t = sv_t ? static_cast<Index>(sv_t) : dbm.values.cols();
    Database db = make_database(dbm.values, t, dbm.modulus);
    auto [host, port] = parse_addr(sv_bind);
    Server server(std::move(db), host, port);
    std::cout << "serving " << sv_db << " on " << host << ":" << server.port() << "\n";
    for (;;) std::this_thread::sleep_for(std::chrono::hours(1));
  }

  if (*send_cmd) {
    auto [host, port] = parse_addr(sd_addr);
    Frame f;
    f.type = MsgType::kQuery;
    f.payload = read_binary_file(sd_query);
    Frame reply = wire_roundtrip(host, port, f);
    if (reply.type == MsgType::kError)
      fail(Err::IoError, "server error: " +
                             std::string(reply.payload.begin(), reply.payload.end()));
    if (reply.type != MsgType::kResponse) fail(Err::IoError, "unexpected reply type");
    write_file(sd_out, reply.payload);
    std::cout << "wrote " << sd_out << "\n";
    return 0;
  }

  if (*recover_cmd) {
    Rng rng(0);
    PirParams params = params_from_doc(parse_params(read_text_file(rc_params)), rng);
    QuerySecrets sec = secrets_from_doc(parse_secrets(read_text_file(rc_secrets)));
    MatrixFileData rm = parse_matrix(read_binary_file(rc_resp));
    MatZ file = recover(params, sec, {rm.values, rm.modulus});
    write_file(rc_out, serialize_matrix({file, params.modulus.m_prime()}));
    std::cout << "wrote " << rc_out << " (file " << sec.d << ", " << file.rows() << " x "
              << file.cols() << ")\n";
    return 0;
  }

  if (*attack_cmd) {
    Rng rng(seed_from(at_seed));
    if (at_baseline) {
      HhwzConfig cfg;
      const int trials = at_trials > 0 ? at_trials : 200;
      std::cout << "baseline advantage over " << trials
                << " trials: " << baseline_advantage(cfg, trials, rng) << "\n";
      return 0;
    }
    if (at_query.empty() || at_factors.empty())
      fail(Err::ParseError, "attack needs --query and --m-factors (or --baseline)");
    Modulus modulus = validate_modulus(parse_factor_list(at_factors));
    MatrixFileData qm = parse_matrix(read_binary_file(at_query));
    DeletionReport rep =
        row_deletion_scan(qm.values, modulus, static_cast<Index>(at_r));
    for (size_t i = 0; i < rep.per_file.size(); ++i) {
      std::cout << "file " << i + 1 << ": drop " << rep.drops[i] << " [";
      for (const auto& comp : rep.per_file[i].components) {
        std::cout << " p=" << comp.p << ":";
        for (unsigned v : comp.valuations) std::cout << v;
      }
      std::cout << " ]\n";
    }
    if (rep.distinguished)
      std::cout << "distinguished file: " << *rep.distinguished << "\n";
    else
      std::cout << "no distinguished file\n";
    if (at_trials > 0) {
      if (at_params.empty()) fail(Err::ParseError, "--trials needs --params");
      PirParams params = params_from_doc(parse_params(read_text_file(at_params)), rng);
      std::cout << "ring advantage over " << at_trials
                << " trials: " << ring_advantage(params, at_trials, rng) << "\n";
    }
    return 0;
  }

  if (*rate_cmd) {
    Modulus modulus = validate_modulus(parse_factor_list(rt_factors));
    RateReport rep = pir_rate(modulus, static_cast<Index>(rt_n), static_cast<Index>(rt_s),
                              static_cast<Index>(rt_r), static_cast<Index>(rt_t),
                              static_cast<Index>(rt_L));
    std::cout << "upload bits   H(Q) = " << rep.upload_bits << "\n"
              << "download bits H(R) = " << rep.download_bits << "\n"
              << "file bits          = " << rep.file_bits << "\n"
              << "exact rate         = " << rep.exact_rate_value;
    if (rep.exact_rate) std::cout << " = " << rep.exact_rate->num << "/" << rep.exact_rate->den;
    std::cout << "\napprox rate        = " << rep.approx_rate_value;
    if (rep.approx_rate)
      std::cout << " = " << rep.approx_rate->num << "/" << rep.approx_rate->den;
    std::cout << "\n";
    WorkFactor wf = work_factor(modulus, static_cast<Index>(rt_n), static_cast<Index>(rt_s));
    for (auto [p, t] : wf.per_prime) std::cout << "T(n, " << p << ") = " << t << "\n";
    std::cout << "per-code bound     = 2^" << wf.t_sum << "\n"
              << "total bound        = (2^" << wf.t_sum << ")^" << wf.s + 1 << " = 2^"
              << wf.total_exponent << "\n";
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
}
