#include "pir/outercode.hpp"

#include "pir/error.hpp"

namespace pir {

OuterCode build_outer(std::vector<CrtCyclicCode> constituents, MatZ m) {
  const Index s = static_cast<Index>(constituents.size());
  if (s == 0 || m.rows() != s || m.cols() != s)
    fail(Err::DimensionMismatch, "mixing matrix must be s x s");
  const Index n = constituents[0].n();
  const Scalar mod = constituents[0].modulus().m();
  for (const auto& c : constituents)
    if (c.n() != n || c.modulus().m() != mod)
      fail(Err::AmbientMismatch, "constituents over different ambients");

  OuterCode out;
  out.g_out_ = RingMatrix(s, s, n, mod);
  for (Index i = 0; i < s; ++i) {
    RingElem gi = principal_generator(constituents[i]);
    for (Index j = 0; j < s; ++j) out.g_out_.at(i, j) = ring_scale(gi, m(i, j) % mod);
  }
  out.constituents_ = std::move(constituents);
  out.m_ = reduced(m, mod);
  return out;
}

ConditionReport validate_technical_conditions(const OuterCode& outer,
                                              const CrtCyclicCode& inner) {
  ConditionReport rep;
  const auto& cs = outer.constituents();

  rep.nested = true;
  for (size_t i = 0; i + 1 < cs.size(); ++i)
    if (!(intersect(cs[i + 1], cs[i]) == cs[i + 1])) rep.nested = false;

  const CrtCyclicCode inner_dual = dual_code(inner);
  for (const auto& c : cs) {
    rep.intersections_nonzero.push_back(!intersect(c, inner).is_zero());
    // nonzero intersection with the dual that is not fully inside C_IN
    CrtCyclicCode with_dual = intersect(c, inner_dual);
    rep.dual_intersections_nonzero.push_back(!with_dual.is_zero() &&
                                             !is_subset(with_dual, inner));
  }

  rep.exponents_ok = true;
  for (const Factor& f : inner.modulus().factors())
    if (f.e <= 1) rep.exponents_ok = false;

  for (const auto& c : cs) {
    std::vector<bool> row;
    for (const auto& comp : c.components()) row.push_back(!is_hensel_lift(comp));
    rep.non_hensel.push_back(std::move(row));
  }

  rep.overall = rep.nested && rep.exponents_ok;
  for (bool b : rep.intersections_nonzero) rep.overall = rep.overall && b;
  for (bool b : rep.dual_intersections_nonzero) rep.overall = rep.overall && b;
  for (const auto& row : rep.non_hensel)
    for (bool b : row) rep.overall = rep.overall && b;
  return rep;
}

MatZ quasi_cyclic_expansion(const OuterCode& outer) {
  const Index s = outer.s(), n = outer.n();
  std::vector<VecZ> rows;
  for (Index i = 0; i < s; ++i) {
    bool zero_row = true;
    for (Index j = 0; j < s; ++j) zero_row = zero_row && outer.g_out().at(i, j).is_zero();
    if (zero_row) continue;
    for (Index k = 0; k < n; ++k) {
      RingVector shifted;
      for (Index j = 0; j < s; ++j) shifted.push_back(ring_shift(outer.g_out().at(i, j), k));
      rows.push_back(expand(shifted));
    }
  }
  MatZ out(static_cast<Index>(rows.size()), n * s);
  for (size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Index>(r)) = rows[r];
  return out;
}

}  // namespace pir
