#pragma once

#include <vector>

#include "pir/crtcode.hpp"
#include "pir/polyring.hpp"

namespace pir {

/// Matrix-product outer code [C~_1, ..., C~_s] M presented over the ring:
/// G_OUT[i][j] = M[i][j] * g~_i with g~_i the ideal generator of C~_i, so
/// the ring rowspan of G_OUT is the full matrix-product code.
class OuterCode {
 public:
  const std::vector<CrtCyclicCode>& constituents() const { return constituents_; }
  const MatZ& mixing() const { return m_; }
  const RingMatrix& g_out() const { return g_out_; }
  Index s() const { return static_cast<Index>(constituents_.size()); }
  Index n() const { return constituents_.empty() ? 0 : constituents_[0].n(); }
  Scalar mod() const { return g_out_.mod(); }

  friend OuterCode build_outer(std::vector<CrtCyclicCode> constituents, MatZ m);

 private:
  std::vector<CrtCyclicCode> constituents_;
  MatZ m_;
  RingMatrix g_out_;
};

OuterCode build_outer(std::vector<CrtCyclicCode> constituents, MatZ m);

/// Flags for the protocol's technical conditions; overall is their
/// conjunction.
struct ConditionReport {
  bool nested = false;
  std::vector<bool> intersections_nonzero;       // C~_i ∩ C_IN != 0
  std::vector<bool> dual_intersections_nonzero;  // C~_i ∩ (C_IN^⊥ \ C_IN) != 0
  bool exponents_ok = false;                     // e_i > 1 for every prime
  std::vector<std::vector<bool>> non_hensel;     // per constituent, per prime
  bool overall = false;
};

ConditionReport validate_technical_conditions(const OuterCode& outer, const CrtCyclicCode& inner);

/// Z_m generator matrix of the expanded code [C_OUT] of length n*s: the
/// expansions of all x^k multiples of the G_OUT rows.
MatZ quasi_cyclic_expansion(const OuterCode& outer);

}  // namespace pir
