#include "pir/polyring.hpp"

#include "pir/error.hpp"

namespace pir {

namespace {

void check_same_ambient(const RingElem& a, const RingElem& b) {
  if (a.mod != b.mod || a.n() != b.n())
    fail(Err::MixedAmbient, "ring elements from different ambient rings");
}

}  // namespace

RingElem ring_zero(Index n, Scalar mod) { return {VecZ::Zero(n), mod}; }

RingElem ring_one(Index n, Scalar mod) {
  RingElem r = ring_zero(n, mod);
  r.coeffs[0] = 1 % mod;
  return r;
}

RingElem ring_from(VecZ coeffs, Index n, Scalar mod) {
  VecZ c = VecZ::Zero(n);
  if (coeffs.size() > n) fail(Err::DimensionMismatch, "coefficient vector longer than n");
  for (Index i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i] % mod;
  return {std::move(c), mod};
}

RingElem ring_add(const RingElem& a, const RingElem& b) {
  check_same_ambient(a, b);
  const Scalar m = a.mod;
  return {(a.coeffs + b.coeffs).unaryExpr([m](Scalar x) { return x % m; }), m};
}

RingElem ring_sub(const RingElem& a, const RingElem& b) {
  check_same_ambient(a, b);
  const Scalar m = a.mod;
  VecZ c(a.n());
  for (Index i = 0; i < a.n(); ++i) c[i] = (a.coeffs[i] + m - b.coeffs[i]) % m;
  return {std::move(c), m};
}

RingElem ring_mul(const RingElem& a, const RingElem& b) {
  check_same_ambient(a, b);
  const Scalar m = a.mod;
  const Index n = a.n();
  VecZ c = VecZ::Zero(n);
  for (Index i = 0; i < n; ++i) {
    const Scalar ai = a.coeffs[i];
    if (ai == 0) continue;
    for (Index j = 0; j < n; ++j) {
      Index k = i + j;
      if (k >= n) k -= n;
      c[k] = (c[k] + ai * b.coeffs[j]) % m;
    }
  }
  return {std::move(c), m};
}

RingElem ring_scale(const RingElem& a, Scalar c) {
  const Scalar m = a.mod;
  c %= m;
  return {a.coeffs.unaryExpr([c, m](Scalar x) { return x * c % m; }), m};
}

RingElem ring_shift(const RingElem& a, Index k) {
  const Index n = a.n();
  k %= n;
  if (k == 0) return a;
  VecZ c(n);
  for (Index i = 0; i < n; ++i) c[(i + k) % n] = a.coeffs[i];
  return {std::move(c), a.mod};
}

RingElem project(const RingElem& a, const Modulus& modulus, Scalar p, unsigned e) {
  if (a.mod != modulus.m()) fail(Err::MixedAmbient, "element does not live over this modulus");
  for (const Factor& f : modulus.factors()) {
    if (f.p == p && f.e == e) {
      const Scalar pe = f.pe;
      return {a.coeffs.unaryExpr([pe](Scalar x) { return x % pe; }), pe};
    }
  }
  fail(Err::UnknownComponent, "no such prime-power component");
}

RingElem crt_combine(const std::vector<RingElem>& components, const Modulus& modulus) {
  const auto& factors = modulus.factors();
  if (components.size() != factors.size())
    fail(Err::ComponentMismatch, "one component per prime factor required");
  const Index n = components.empty() ? 0 : components[0].n();
  std::vector<Scalar> moduli(factors.size());
  for (size_t i = 0; i < factors.size(); ++i) {
    moduli[i] = factors[i].pe;
    if (components[i].mod != factors[i].pe || components[i].n() != n)
      fail(Err::ComponentMismatch, "component has wrong modulus or length");
  }
  VecZ c(n);
  std::vector<Scalar> residues(factors.size());
  for (Index j = 0; j < n; ++j) {
    for (size_t i = 0; i < factors.size(); ++i) residues[i] = components[i].coeffs[j];
    c[j] = crt_lift(residues, moduli);
  }
  return {std::move(c), modulus.m()};
}

VecZ expand(const RingVector& v) {
  if (v.empty()) return VecZ(0);
  const Index n = v[0].n();
  VecZ out(static_cast<Index>(v.size()) * n);
  for (size_t i = 0; i < v.size(); ++i) out.segment(static_cast<Index>(i) * n, n) = v[i].coeffs;
  return out;
}

RingVector contract(const VecZ& row, Index n, Scalar mod) {
  if (n <= 0 || row.size() % n != 0) fail(Err::DimensionMismatch, "row width not a multiple of n");
  RingVector v;
  v.reserve(row.size() / n);
  for (Index i = 0; i < row.size(); i += n) v.push_back({row.segment(i, n), mod});
  return v;
}

RingMatrix::RingMatrix(Index rows, Index cols, Index n, Scalar mod)
    : rows_(rows), cols_(cols), n_(n), mod_(mod) {
  data_.assign(static_cast<size_t>(rows * cols), ring_zero(n, mod));
}

RingMatrix ring_matmul(const RingMatrix& a, const RingMatrix& b) {
  if (a.cols() != b.rows() || a.mod() != b.mod() || a.n() != b.n())
    fail(Err::DimensionMismatch, "ring matrix product shape mismatch");
  RingMatrix r(a.rows(), b.cols(), a.n(), a.mod());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < a.cols(); ++k) {
      const RingElem& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (Index j = 0; j < b.cols(); ++j)
        r.at(i, j) = ring_add(r.at(i, j), ring_mul(aik, b.at(k, j)));
    }
  return r;
}

RingMatrix ring_mat_add(const RingMatrix& a, const RingMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(Err::DimensionMismatch, "ring matrix sum shape mismatch");
  RingMatrix r(a.rows(), a.cols(), a.n(), a.mod());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) r.at(i, j) = ring_add(a.at(i, j), b.at(i, j));
  return r;
}

MatZ expand_matrix(const RingMatrix& m) {
  MatZ out(m.rows(), m.cols() * m.n());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      out.row(i).segment(j * m.n(), m.n()) = m.at(i, j).coeffs;
  return out;
}

RingMatrix contract_matrix(const MatZ& flat, Index n, Scalar mod) {
  if (n <= 0 || flat.cols() % n != 0) fail(Err::DimensionMismatch, "width not a multiple of n");
  RingMatrix r(flat.rows(), flat.cols() / n, n, mod);
  for (Index i = 0; i < flat.rows(); ++i)
    for (Index j = 0; j < r.cols(); ++j)
      r.at(i, j) = {flat.row(i).segment(j * n, n).unaryExpr([mod](Scalar x) { return x % mod; }),
                    mod};
  return r;
}

}  // namespace pir
