#pragma once

#include <optional>
#include <vector>

#include "pir/pir.hpp"

namespace pir {

/// Rowspan invariant of a matrix over Z_m: per prime, the multiset of
/// Howell-form pivot valuations of the projected matrix (the module type of
/// the rowspan). Over a prime field it degenerates to the rank.
struct RankProfile {
  struct Component {
    Scalar p = 0;
    unsigned e = 0;
    std::vector<unsigned> valuations;  // sorted
    bool operator==(const Component&) const = default;
  };
  std::vector<Component> components;

  /// Total log-size of the rowspan (sum over primes of sum (e - v)); the
  /// "mass" whose drop the deletion scan compares.
  std::uint64_t log_size() const;
  bool operator==(const RankProfile&) const = default;
};

RankProfile rank_profile(const MatZ& mat, const Modulus& modulus);

struct DeletionReport {
  RankProfile full;
  std::vector<RankProfile> per_file;      // profile with that file's rows removed
  std::vector<std::uint64_t> drops;       // full mass minus per-file mass
  bool uniform = false;                   // all per-file profiles identical
  std::optional<Index> distinguished;     // 1-based, set when one block stands out
};

/// Row-deletion scan: delete each file's block of rows_per_file rows and
/// compare the resulting rank profiles.
DeletionReport row_deletion_scan(const MatZ& q, const Modulus& modulus, Index rows_per_file);

/// Simplified field-based HHWZ-style query, the attack-demo target. q must
/// be prime; entries of F_{q^s} are expanded to s coordinates over F_q.
struct HhwzConfig {
  Scalar q = 2;
  Index s = 4, v = 2;
  Index n = 10, k = 4;
  Index t = 4;
  Index rows_per_file = 16;
};

MatZ hhwz_baseline_query(const HhwzConfig& cfg, Index d, Rng& rng);

/// Monte-Carlo distinguishing advantage of the scan's best-guess rule
/// (largest profile drop, uniform tie-break): success rate minus 1/t,
/// clamped at zero.
double ring_advantage(const PirParams& params, int trials, Rng& rng);
double baseline_advantage(const HhwzConfig& cfg, int trials, Rng& rng);

/// The best-guess rule itself (1-based file index).
Index scan_best_guess(const DeletionReport& rep, Rng& rng);

}  // namespace pir
