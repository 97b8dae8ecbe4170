#include "pir/poly.hpp"

#include "pir/error.hpp"
#include "pir/zmod.hpp"

namespace pir::poly {

Index degree(const VecZ& f) {
  for (Index i = f.size() - 1; i >= 0; --i)
    if (f[i] != 0) return i;
  return -1;
}

bool is_zero(const VecZ& f) { return degree(f) < 0; }

bool eq(const VecZ& a, const VecZ& b) {
  const Index n = std::max(a.size(), b.size());
  for (Index i = 0; i < n; ++i) {
    const Scalar x = i < a.size() ? a[i] : 0;
    const Scalar y = i < b.size() ? b[i] : 0;
    if (x != y) return false;
  }
  return true;
}

VecZ trim(const VecZ& f) {
  Index d = degree(f);
  if (d < 0) return VecZ::Zero(1);  // canonical zero polynomial
  if (d == f.size() - 1) return f;
  return f.head(d + 1);
}

VecZ xn_minus_1(Index n, Scalar N) {
  VecZ f = VecZ::Zero(n + 1);
  f[0] = N - 1;
  f[n] = 1;
  return f;
}

bool is_monic(const VecZ& f, Scalar N) {
  Index d = degree(f);
  return d >= 0 && f[d] % N == 1;
}

VecZ add(const VecZ& a, const VecZ& b, Scalar N) {
  VecZ r = VecZ::Zero(std::max(a.size(), b.size()));
  for (Index i = 0; i < a.size(); ++i) r[i] = a[i] % N;
  for (Index i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % N;
  return trim(r);
}

VecZ sub(const VecZ& a, const VecZ& b, Scalar N) {
  VecZ r = VecZ::Zero(std::max(a.size(), b.size()));
  for (Index i = 0; i < a.size(); ++i) r[i] = a[i] % N;
  for (Index i = 0; i < b.size(); ++i) r[i] = (r[i] + N - b[i] % N) % N;
  return trim(r);
}

VecZ mul(const VecZ& a, const VecZ& b, Scalar N) {
  Index da = degree(a), db = degree(b);
  if (da < 0 || db < 0) return VecZ::Zero(1);
  VecZ r = VecZ::Zero(da + db + 1);
  for (Index i = 0; i <= da; ++i) {
    if (a[i] == 0) continue;
    for (Index j = 0; j <= db; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % N;
  }
  return r;
}

VecZ scale(const VecZ& a, Scalar c, Scalar N) {
  c %= N;
  VecZ r = a.unaryExpr([c, N](Scalar x) { return x * c % N; });
  return trim(r);
}

std::pair<VecZ, VecZ> divmod(const VecZ& a, const VecZ& b, Scalar N) {
  Index db = degree(b);
  if (db < 0 || b[db] % N != 1) fail(Err::NotMonic, "divisor must be monic");
  VecZ r = a.unaryExpr([N](Scalar x) { return x % N; });
  Index da = degree(r);
  if (da < db) return {VecZ::Zero(1), trim(r)};
  VecZ q = VecZ::Zero(da - db + 1);
  for (Index i = da; i >= db; --i) {
    Scalar c = r[i];
    if (c == 0) continue;
    q[i - db] = c;
    for (Index j = 0; j <= db; ++j) r[i - db + j] = (r[i - db + j] + (N - b[j] % N) * c) % N;
  }
  return {trim(q), trim(r)};
}

VecZ rem(const VecZ& a, const VecZ& b, Scalar N) { return divmod(a, b, N).second; }

VecZ gcd_fp(VecZ a, VecZ b, Scalar p) {
  a = a.unaryExpr([p](Scalar x) { return x % p; });
  b = b.unaryExpr([p](Scalar x) { return x % p; });
  while (degree(b) >= 0) {
    VecZ r = rem(a, scale(b, mod_inv(b[degree(b)], p), p), p);
    a = b;
    b = r;
  }
  Index d = degree(a);
  if (d < 0) return VecZ::Zero(1);
  return scale(a, mod_inv(a[d], p), p);
}

VecZ pow_mod_fp(const VecZ& base, Scalar exp, const VecZ& f, Scalar p) {
  VecZ acc = VecZ::Ones(1);
  VecZ b = rem(base, f, p);
  while (exp) {
    if (exp & 1) acc = rem(mul(acc, b, p), f, p);
    b = rem(mul(b, b, p), f, p);
    exp >>= 1;
  }
  return acc;
}

}  // namespace pir::poly
