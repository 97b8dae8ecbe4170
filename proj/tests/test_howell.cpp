#include "doctest.h"
#include "oracles.hpp"
#include "pir/howell.hpp"
#include "pir/rng.hpp"

using namespace pir;

namespace {

MatZ random_matrix(Rng& rng, Index rows, Index cols, Scalar n) {
  MatZ m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = rng.uniform(n);
  return m;
}

}  // namespace

TEST_CASE("howell form preserves the rowspan") {
  Rng rng(11);
  for (int trial = 0; trial < 120; ++trial) {
    const Scalar n = std::vector<Scalar>{4, 8, 9, 15, 36}[rng.uniform(5)];
    MatZ a = random_matrix(rng, 1 + rng.uniform(4), 1 + rng.uniform(4), n);
    MatZ h = howell_form(a, n);
    CHECK(oracle::span_set(a, n) == oracle::span_set(h, n));
  }
}

TEST_CASE("howell form is canonical across generating sets") {
  Rng rng(12);
  for (int trial = 0; trial < 120; ++trial) {
    const Scalar n = std::vector<Scalar>{4, 9, 15, 36}[rng.uniform(4)];
    MatZ a = random_matrix(rng, 2 + rng.uniform(3), 1 + rng.uniform(4), n);
    // same span, different presentation: shuffle plus a summed row
    MatZ b(a.rows() + 1, a.cols());
    b.topRows(a.rows()) = a;
    b.row(a.rows()) = add_mod(a.row(0), a.row(a.rows() - 1), n);
    for (Index i = 0; i < b.rows(); ++i) {
      Index j = static_cast<Index>(rng.uniform(b.rows()));
      b.row(i).swap(b.row(j));
    }
    CHECK(howell_form(a, n) == howell_form(b, n));
  }
}

TEST_CASE("membership agrees with the closure oracle") {
  Rng rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const Scalar n = std::vector<Scalar>{4, 9, 15}[rng.uniform(3)];
    MatZ a = random_matrix(rng, 1 + rng.uniform(3), 1 + rng.uniform(3), n);
    auto span = oracle::span_set(a, n);
    HowellForm h(n, a.cols());
    h.add_rows(a);
    for (int k = 0; k < 25; ++k) {
      VecZ v(a.cols());
      for (Index j = 0; j < a.cols(); ++j) v[j] = rng.uniform(n);
      CHECK(h.contains(v) == (span.count(oracle::to_word(v)) > 0));
    }
  }
}

TEST_CASE("left kernel matches brute force") {
  Rng rng(14);
  for (int trial = 0; trial < 80; ++trial) {
    const Scalar n = std::vector<Scalar>{4, 9, 15, 8}[rng.uniform(4)];
    const Index rows = 1 + rng.uniform(3), cols = 1 + rng.uniform(3);
    MatZ a = random_matrix(rng, rows, cols, n);
    MatZ k = left_kernel(a, n);
    // every kernel row annihilates a
    if (k.rows() > 0) CHECK(matmul_mod(k, a, n).isZero());
    // and spans all annihilators
    std::set<oracle::Word> expect;
    std::vector<Scalar> x(rows, 0);
    for (;;) {
      VecZ xv(rows);
      for (Index i = 0; i < rows; ++i) xv[i] = x[i];
      MatZ prod = matmul_mod(xv, a, n);
      if (prod.isZero()) expect.insert(oracle::to_word(xv));
      Index i = 0;
      while (i < rows && ++x[i] == n) x[i++] = 0;
      if (i == rows) break;
    }
    auto got = k.rows() ? oracle::span_set(k, n)
                        : std::set<oracle::Word>{oracle::Word(rows, 0)};
    CHECK(got == expect);
  }
}

TEST_CASE("span intersection matches set intersection") {
  Rng rng(15);
  for (int trial = 0; trial < 60; ++trial) {
    const Scalar n = std::vector<Scalar>{4, 9, 15}[rng.uniform(3)];
    const Index cols = 2 + rng.uniform(2);
    MatZ a = random_matrix(rng, 1 + rng.uniform(2), cols, n);
    MatZ b = random_matrix(rng, 1 + rng.uniform(2), cols, n);
    MatZ inter = span_intersection(a, b, n);
    auto expect = oracle::intersect_sets(oracle::span_set(a, n), oracle::span_set(b, n));
    auto got = inter.rows() ? oracle::span_set(inter, n)
                            : std::set<oracle::Word>{oracle::Word(cols, 0)};
    CHECK(got == expect);
  }
}

TEST_CASE("right annihilator edge cases") {
  // dual of the zero module is everything
  MatZ zero(0, 3);
  CHECK(howell_form(right_annihilator(zero, 15), 15) ==
        howell_form(MatZ(MatZ::Identity(3, 3)), 15));
  // dual of everything is zero
  MatZ full = MatZ::Identity(3, 3);
  CHECK(right_annihilator(full, 15).rows() == 0);
}
