#include "pir/howell.hpp"

#include <deque>

#include "pir/error.hpp"
#include "pir/zmod.hpp"

namespace pir {

namespace {

struct XgcdResult {
  Scalar g;
  __int128 s, t;  // s*a + t*b = g
};

XgcdResult xgcd(Scalar a, Scalar b) {
  __int128 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  return {static_cast<Scalar>(old_r), old_s, old_t};
}

Scalar to_mod(__int128 x, Scalar n) {
  __int128 r = x % static_cast<__int128>(n);
  if (r < 0) r += n;
  return static_cast<Scalar>(r);
}

/// Unit u with u*a = gcd(a, N) (mod N).
Scalar unit_for(Scalar a, Scalar N) {
  Scalar g = gcd_u64(a % N, N);
  if (g == 0 || g == N) return 1;
  Scalar b = (a % N) / g;
  Scalar Ng = N / g;
  Scalar u = mod_inv(b % Ng, Ng);
  while (gcd_u64(u, N) != 1) u += Ng;
  return u % N;
}

Index leading(const VecZ& v) {
  for (Index j = 0; j < v.size(); ++j)
    if (v[j] != 0) return j;
  return -1;
}

}  // namespace

HowellForm::HowellForm(Scalar modulus, Index cols) : modulus_(modulus), cols_(cols) {}

void HowellForm::add_rows(const MatZ& m) {
  for (Index i = 0; i < m.rows(); ++i) add_row(m.row(i));
}

void HowellForm::add_row(VecZ v) {
  if (v.size() != cols_) fail(Err::DimensionMismatch, "row width mismatch");
  const Scalar N = modulus_;
  canonical_ = false;
  std::deque<VecZ> queue;
  queue.push_back(v.unaryExpr([N](Scalar x) { return x % N; }));
  while (!queue.empty()) {
    VecZ w = std::move(queue.front());
    queue.pop_front();
    for (;;) {
      Index j = leading(w);
      if (j < 0) break;
      auto it = rows_.find(j);
      if (it == rows_.end()) {
        // fresh pivot; normalize so the pivot divides N, and queue the
        // annihilator multiple that the Howell property requires
        Scalar u = unit_for(w[j], N);
        if (u != 1) w = w.unaryExpr([u, N](Scalar x) { return x * u % N; });
        Scalar piv = w[j];
        rows_.emplace(j, w);
        if (piv > 1) {
          Scalar q = N / piv;
          queue.push_back(w.unaryExpr([q, N](Scalar x) { return x * q % N; }));
        }
        break;
      }
      VecZ& P = it->second;
      Scalar d = P[j];
      if (w[j] % d == 0) {
        Scalar q = w[j] / d;
        for (Index k = j; k < cols_; ++k) w[k] = (w[k] + (N - P[k]) * q) % N;
      } else {
        // unimodular 2x2 gcd transform of (pivot row, incoming row)
        auto [g, s, t] = xgcd(d, w[j]);
        Scalar sa = to_mod(s, N), tb = to_mod(t, N);
        Scalar qa = d / g, qb = w[j] / g;
        VecZ newP(cols_), neww(cols_);
        for (Index k = 0; k < cols_; ++k) {
          newP[k] = (sa * P[k] + tb * w[k]) % N;
          neww[k] = (qa * w[k] % N + (N - P[k]) * qb) % N;
        }
        Scalar u = unit_for(newP[j], N);
        if (u != 1) newP = newP.unaryExpr([u, N](Scalar x) { return x * u % N; });
        Scalar piv = newP[j];
        it->second = newP;
        if (piv > 1) {
          Scalar q = N / piv;
          queue.push_back(newP.unaryExpr([q, N](Scalar x) { return x * q % N; }));
        }
        w = std::move(neww);
      }
    }
  }
}

void HowellForm::reduce_above() {
  // canonicity pass: per row, sweep later pivot columns left to right
  const Scalar N = modulus_;
  for (auto& [j0, row] : rows_) {
    for (auto it = rows_.upper_bound(j0); it != rows_.end(); ++it) {
      const Index j = it->first;
      const VecZ& P = it->second;
      Scalar q = row[j] / P[j];
      if (q == 0) continue;
      for (Index k = j; k < cols_; ++k) row[k] = (row[k] + (N - P[k]) * q) % N;
    }
  }
  canonical_ = true;
}

MatZ HowellForm::matrix() const {
  auto* self = const_cast<HowellForm*>(this);
  if (!canonical_) self->reduce_above();
  MatZ out(static_cast<Index>(rows_.size()), cols_);
  Index i = 0;
  for (const auto& [j, row] : rows_) out.row(i++) = row;
  return out;
}

bool HowellForm::contains(VecZ v) const {
  const Scalar N = modulus_;
  v = v.unaryExpr([N](Scalar x) { return x % N; });
  for (;;) {
    Index j = leading(v);
    if (j < 0) return true;
    auto it = rows_.find(j);
    if (it == rows_.end()) return false;
    const VecZ& P = it->second;
    if (v[j] % P[j] != 0) return false;
    Scalar q = v[j] / P[j];
    for (Index k = j; k < cols_; ++k) v[k] = (v[k] + (N - P[k]) * q) % N;
  }
}

std::vector<std::pair<Index, Scalar>> HowellForm::pivots() const {
  std::vector<std::pair<Index, Scalar>> out;
  out.reserve(rows_.size());
  for (const auto& [j, row] : rows_) out.emplace_back(j, row[j]);
  return out;
}

MatZ howell_form(const MatZ& a, Scalar modulus) {
  HowellForm h(modulus, a.cols());
  h.add_rows(a);
  return h.matrix();
}

bool span_contains(const MatZ& gens, const VecZ& v, Scalar modulus) {
  HowellForm h(modulus, gens.cols());
  h.add_rows(gens);
  return h.contains(v);
}

bool spans_equal(const MatZ& a, const MatZ& b, Scalar modulus) {
  return same_matrix(howell_form(a, modulus), howell_form(b, modulus));
}

MatZ left_kernel(const MatZ& a, Scalar modulus) {
  const Index r = a.rows(), c = a.cols();
  // Howell form of [a | I]: rows with zero a-part have their identity part
  // spanning exactly {x : x a = 0}
  MatZ aug = MatZ::Zero(r, c + r);
  aug.leftCols(c) = reduced(a, modulus);
  for (Index i = 0; i < r; ++i) aug(i, c + i) = 1;
  MatZ h = howell_form(aug, modulus);
  Index first = h.rows();
  for (Index i = 0; i < h.rows(); ++i) {
    if (h.row(i).head(c).isZero()) {
      first = i;
      break;
    }
  }
  return MatZ(h.bottomRightCorner(h.rows() - first, r));
}

MatZ right_annihilator(const MatZ& a, Scalar modulus) {
  if (a.rows() == 0) {
    // dual of the zero module is the full space
    return MatZ(MatZ::Identity(a.cols(), a.cols()));
  }
  return left_kernel(MatZ(a.transpose()), modulus);
}

MatZ span_intersection(const MatZ& a, const MatZ& b, Scalar modulus) {
  if (a.rows() == 0 || b.rows() == 0) return MatZ(0, a.cols());
  MatZ stacked = vstack(a, b);
  MatZ k = left_kernel(stacked, modulus);
  // (x|y) with x a + y b = 0  =>  x a ranges over the intersection
  MatZ xa = matmul_mod(MatZ(k.leftCols(a.rows())), a, modulus);
  return howell_form(xa, modulus);
}

}  // namespace pir
