#include "doctest.h"
#include "pir/attack.hpp"
#include "pir/howell.hpp"
#include "pir/pir.hpp"
#include "toy_fixtures.hpp"

using namespace pir;

namespace {

PirParams compliant_params(Index s, Index r, Index t, Index L, std::uint64_t seed) {
  SetupConfig cfg;
  cfg.modulus = validate_modulus({{2, 2}, {3, 2}});
  cfg.n = 13;
  cfg.s = s;
  cfg.r = r;
  cfg.t = t;
  cfg.L = L;
  Rng rng(seed);
  return setup(cfg, rng);
}

Database random_db(const PirParams& params, Rng& rng) {
  MatZ entries(params.L, params.t * params.r);
  for (Index i = 0; i < entries.rows(); ++i)
    for (Index j = 0; j < entries.cols(); ++j)
      entries(i, j) = rng.uniform(params.modulus.m_prime());
  return make_database(std::move(entries), params.t, params.modulus.m_prime());
}

}  // namespace

TEST_CASE("toy setup builds the worked instance") {
  Rng rng(61);
  PirParams params = toy::params(rng);
  CHECK(!params.compliant);
  CHECK(params.n == 13);
  CHECK(params.s == 2);
  CHECK(principal_generator(params.inner) == ring_from(toy::g_in(), 13, 15));
  CHECK(params.inner.parity_zm() == toy::h_in());
}

TEST_CASE("setup rejects r > s and degenerate shapes") {
  SetupConfig cfg;
  cfg.modulus = validate_modulus({{2, 2}, {3, 2}});
  cfg.n = 13;
  cfg.s = 2;
  cfg.r = 3;
  cfg.t = 2;
  cfg.L = 1;
  Rng rng(62);
  CHECK_THROWS_AS(setup(cfg, rng), Error);
  cfg.r = 1;
  cfg.L = 0;
  CHECK_THROWS_AS(setup(cfg, rng), Error);
  cfg.L = 1;
  cfg.n = 12;  // gcd(n, m) != 1
  CHECK_THROWS_AS(setup(cfg, rng), Error);
}

TEST_CASE("randomized search finds a compliant instance") {
  PirParams params = compliant_params(2, 1, 2, 1, 63);
  CHECK(params.compliant);
  CHECK(is_nonfree(params.inner));
}

TEST_CASE("golden query: injected streams reproduce the printed Q") {
  Rng rng(64);
  PirParams params = toy::params(rng);
  auto [q, sec] = gen_query_with_streams(params, 1, toy::streams());

  CHECK(q.rows.rows() == 3);
  CHECK(q.rows.cols() == 52);
  CHECK(q.rows == toy::q_matrix());

  // delta intermediate checkpoints
  auto deltas = toy::delta_polys();
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 2; ++j)
      CHECK(q.rows.row(i).segment(26 + 13 * j, 13) == deltas[2 * i + j]);

  CHECK(sec.d == 1);
  CHECK(sec.gamma == 1);
  CHECK_THROWS_AS(gen_query_with_streams(params, 4, toy::streams()), Error);
}

TEST_CASE("forced gamma when r = s") {
  SetupConfig cfg;
  cfg.modulus = validate_modulus({{3, 1}, {5, 1}});
  cfg.n = 13;
  cfg.s = 2;
  cfg.r = 2;
  cfg.t = 1;
  cfg.L = 1;
  cfg.allow_noncompliant = true;
  Rng rng(65);
  // reuse the toy codes
  PirParams toyp = toy::params(rng);
  cfg.inner = CodeSpec{{toyp.inner.components()[0].tower(), toyp.inner.components()[1].tower()}};
  std::vector<CodeSpec> cs;
  for (const auto& c : toyp.outer.constituents())
    cs.push_back(CodeSpec{{c.components()[0].tower(), c.components()[1].tower()}});
  cfg.constituents = cs;
  cfg.mixing = toyp.outer.mixing();
  PirParams params = setup(cfg, rng);

  auto [q, sec] = gen_query(params, 1, rng);
  CHECK(sec.gamma == 1);  // s - r + 1 = 1
  CHECK(!sec.u.at(0, 0).is_zero());
  CHECK(!sec.u.at(1, 1).is_zero());
  CHECK(sec.u.at(0, 1).is_zero());
  CHECK(sec.u.at(1, 0).is_zero());
}

TEST_CASE("theorem-1 membership: delta rows live in C_OUT + Gamma_s(C_IN)") {
  PirParams params = compliant_params(2, 1, 3, 1, 66);
  const Index n = params.n, s = params.s;
  const Scalar m = params.modulus.m();

  HowellForm span(m, n * s);
  span.add_rows(quasi_cyclic_expansion(params.outer));
  const MatZ& inner_gen = params.inner.generator_zm();
  for (Index block = 0; block < s; ++block)
    for (Index g = 0; g < inner_gen.rows(); ++g) {
      VecZ row = VecZ::Zero(n * s);
      row.segment(block * n, n) = inner_gen.row(g);
      span.add_row(row);
    }

  Rng rng(67);
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = 1 + static_cast<Index>(rng.uniform(params.t));
    auto [q, sec] = gen_query(params, d, rng);
    for (Index i = 0; i < q.rows.rows(); ++i)
      CHECK(span.contains(q.rows.row(i).tail(n * s)));
  }
}

TEST_CASE("server response on the golden query") {
  Database db = make_database(toy::db_row(), 3, 15);
  QueryMatrix q{toy::q_matrix(), 15};
  ResponseMatrix r = server_respond(db, q);
  CHECK(r.rows.row(0) == toy::r_row());

  Database zero = make_database(MatZ(MatZ::Zero(1, 3)), 3, 15);
  CHECK(server_respond(zero, q).rows.isZero());

  // an indicator database row selects the matching query row
  MatZ ind = MatZ::Zero(1, 3);
  ind(0, 1) = 1;
  Database sel = make_database(std::move(ind), 3, 15);
  CHECK(server_respond(sel, q).rows.row(0) == toy::q_matrix().row(1));

  QueryMatrix bad{MatZ::Zero(4, 52), 15};
  CHECK_THROWS_AS(server_respond(db, bad), Error);
}

TEST_CASE("golden recovery returns the desired file") {
  Rng rng(68);
  PirParams params = toy::params(rng);
  auto [q, sec] = gen_query_with_streams(params, 1, toy::streams());
  Database db = make_database(toy::db_row(), 3, 15);
  ResponseMatrix resp = server_respond(db, q);
  MatZ file = recover(params, sec, resp);
  CHECK(file.rows() == 1);
  CHECK(file.cols() == 1);
  CHECK(file(0, 0) == 1);

  // zero desired file recovers zero
  MatZ db0 = toy::db_row();
  db0(0, 0) = 0;
  ResponseMatrix resp0 = server_respond(make_database(std::move(db0), 3, 15), q);
  CHECK(recover(params, sec, resp0)(0, 0) == 0);

  // corrupting the payload block makes recovery fail loudly
  ResponseMatrix bad = resp;
  bad.rows(0, 26) = (bad.rows(0, 26) + 1) % 15;
  CHECK_THROWS_AS(recover(params, sec, bad), Error);
}

TEST_CASE("round trips on a compliant instance") {
  PirParams params = compliant_params(3, 2, 3, 4, 69);
  Rng rng(70);
  for (int trial = 0; trial < 30; ++trial) {
    Database db = random_db(params, rng);
    const Index d = 1 + static_cast<Index>(rng.uniform(params.t));
    auto [q, sec] = gen_query(params, d, rng);
    ResponseMatrix resp = server_respond(db, q);
    CHECK(recover(params, sec, resp) == file_slice(db, d));
  }
}

TEST_CASE("annihilation of non-payload blocks") {
  PirParams params = compliant_params(3, 1, 2, 2, 71);
  Rng rng(72);
  Database db = random_db(params, rng);
  auto [q, sec] = gen_query(params, 2, rng);
  ResponseMatrix resp = server_respond(db, q);

  // recompute S and check the blocks away from gamma die under H^T
  RingMatrix rring = contract_matrix(resp.rows, params.n, params.modulus.m());
  RingMatrix r1(params.L, params.s, params.n, params.modulus.m());
  RingMatrix r2 = r1;
  for (Index i = 0; i < params.L; ++i)
    for (Index j = 0; j < params.s; ++j) {
      r1.at(i, j) = rring.at(i, j);
      r2.at(i, j) = rring.at(i, params.s + j);
    }
  RingMatrix r1g = ring_matmul(r1, params.outer.g_out());
  const MatZ ht = params.inner.parity_zm().transpose();
  for (Index j = 0; j < params.s; ++j) {
    if (j == sec.gamma - 1) continue;
    for (Index i = 0; i < params.L; ++i) {
      MatZ row(1, params.n);
      row.row(0) = ring_sub(r2.at(i, j), r1g.at(i, j)).coeffs;
      CHECK(matmul_mod(row, ht, params.modulus.m()).isZero());
    }
  }
}
