#pragma once

#include <map>
#include <vector>

#include "pir/matz.hpp"

namespace pir {

/// Canonical Howell form over Z_N. Two row sets span the same Z_N-module iff
/// their Howell forms are identical, which is what makes it usable both as
/// the membership/kernel workhorse and as the attack's rank-profile
/// invariant. Pivot entries divide N; entries above a pivot are reduced mod
/// the pivot; rows are sorted by pivot column.
class HowellForm {
 public:
  HowellForm(Scalar modulus, Index cols);

  void add_row(VecZ v);
  void add_rows(const MatZ& m);

  /// Canonical matrix (no zero rows). Empty matrix for the zero module.
  MatZ matrix() const;

  bool contains(VecZ v) const;

  /// (pivot column, pivot value) sorted by column.
  std::vector<std::pair<Index, Scalar>> pivots() const;

  Scalar modulus() const { return modulus_; }
  Index cols() const { return cols_; }
  Index rank() const { return static_cast<Index>(rows_.size()); }

 private:
  void reduce_above();

  Scalar modulus_;
  Index cols_;
  std::map<Index, VecZ> rows_;  // pivot column -> row
  mutable bool canonical_ = true;
};

MatZ howell_form(const MatZ& a, Scalar modulus);
bool span_contains(const MatZ& gens, const VecZ& v, Scalar modulus);
bool spans_equal(const MatZ& a, const MatZ& b, Scalar modulus);

/// Generators of {x : x * a = 0} (row convention).
MatZ left_kernel(const MatZ& a, Scalar modulus);

/// Generators of {v : a * v^T = 0}, i.e. the dual of rowspan(a).
MatZ right_annihilator(const MatZ& a, Scalar modulus);

/// Generators of rowspan(a) ∩ rowspan(b), in Howell form.
MatZ span_intersection(const MatZ& a, const MatZ& b, Scalar modulus);

}  // namespace pir
