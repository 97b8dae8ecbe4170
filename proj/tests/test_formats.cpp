#include "doctest.h"
#include "pir/formats.hpp"
#include "toy_fixtures.hpp"

using namespace pir;

namespace {

ParamsDoc random_doc(Rng& rng) {
  ParamsDoc doc;
  const bool big = rng.uniform(2) == 0;
  doc.factors = big ? std::vector<std::pair<Scalar, unsigned>>{{2, 2}, {3, 2}}
                    : std::vector<std::pair<Scalar, unsigned>>{{3, 1}, {5, 1}};
  doc.n = 7;
  auto rand_code = [&](Scalar p, unsigned e) {
    const auto count = factor_xn_minus_1(7, p, e).size();
    std::vector<unsigned> exps(count);
    for (auto& x : exps) x = static_cast<unsigned>(rng.uniform(e + 1));
    return chain_code_from_exponents(p, e, 7, exps).tower();
  };
  doc.inner_towers = {rand_code(doc.factors[0].first, doc.factors[0].second),
                      rand_code(doc.factors[1].first, doc.factors[1].second)};
  doc.s = 2 + static_cast<Index>(rng.uniform(2));
  doc.mixing.resize(doc.s, doc.s);
  const Scalar m = big ? 36 : 15;
  for (Index i = 0; i < doc.s; ++i)
    for (Index j = 0; j < doc.s; ++j) doc.mixing(i, j) = rng.uniform(m);
  for (Index c = 0; c < doc.s; ++c)
    doc.constituent_towers.push_back({rand_code(doc.factors[0].first, doc.factors[0].second),
                                      rand_code(doc.factors[1].first, doc.factors[1].second)});
  doc.t = 1 + static_cast<Index>(rng.uniform(4));
  doc.L = 1 + static_cast<Index>(rng.uniform(4));
  doc.r = 1 + static_cast<Index>(rng.uniform(doc.s));
  doc.allow_noncompliant = rng.uniform(2) == 0;
  return doc;
}

}  // namespace

TEST_CASE("params round trip") {
  Rng rng(91);
  for (int k = 0; k < 150; ++k) {
    ParamsDoc doc = random_doc(rng);
    std::string text = serialize_params(doc);
    ParamsDoc back = parse_params(text);
    CHECK(back == doc);
    CHECK(serialize_params(back) == text);
  }
}

TEST_CASE("params parse failures") {
  CHECK_THROWS_AS(parse_params(""), Error);
  CHECK_THROWS_AS(parse_params("[modulus]\nfactors = 4^1\n"), Error);
  CHECK_THROWS_AS(parse_params("junk without a section\n"), Error);
}

TEST_CASE("toy params survive serialization and rebuild") {
  Rng rng(92);
  PirParams params = toy::params(rng);
  ParamsDoc doc = doc_from_params(params);
  ParamsDoc back = parse_params(serialize_params(doc));
  Rng rng2(93);
  PirParams rebuilt = params_from_doc(back, rng2);
  CHECK(rebuilt.inner.parity_zm() == params.inner.parity_zm());
  CHECK(rebuilt.outer.g_out() == params.outer.g_out());
  CHECK(rebuilt.t == params.t);
}

TEST_CASE("matrix file round trip") {
  Rng rng(94);
  for (int k = 0; k < 150; ++k) {
    MatrixFileData m;
    m.modulus = 2 + rng.uniform((1ull << 32) - 2);
    m.values.resize(1 + rng.uniform(8), 1 + rng.uniform(8));
    for (Index i = 0; i < m.values.rows(); ++i)
      for (Index j = 0; j < m.values.cols(); ++j) m.values(i, j) = rng.uniform(m.modulus);
    auto bytes = serialize_matrix(m);
    CHECK(parse_matrix(bytes) == m);
    CHECK(serialize_matrix(parse_matrix(bytes)) == bytes);
  }
}

TEST_CASE("matrix file rejects malformed bytes") {
  MatrixFileData m{MatZ::Zero(2, 2), 7};
  auto bytes = serialize_matrix(m);

  auto truncated = bytes;
  truncated.pop_back();
  CHECK_THROWS_AS(parse_matrix(truncated), Error);

  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  CHECK_THROWS_AS(parse_matrix(bad_magic), Error);

  auto bad_value = bytes;
  bad_value[32] = 9;  // 9 >= modulus 7
  CHECK_THROWS_AS(parse_matrix(bad_value), Error);
}

TEST_CASE("secrets round trip") {
  Rng rng(95);
  PirParams params = toy::params(rng);
  auto [q, sec] = gen_query_with_streams(params, 1, toy::streams());
  SecretsDoc doc = doc_from_secrets(params, sec);
  std::string text = serialize_secrets(doc);
  SecretsDoc back = parse_secrets(text);
  CHECK(back == doc);
  CHECK(serialize_secrets(back) == text);

  QuerySecrets sec2 = secrets_from_doc(back);
  CHECK(sec2.a == sec.a);
  CHECK(sec2.e == sec.e);
  CHECK(sec2.u == sec.u);
  CHECK(sec2.d == sec.d);
  CHECK(sec2.gamma == sec.gamma);
}
