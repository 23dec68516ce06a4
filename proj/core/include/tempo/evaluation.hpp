#pragma once

#include <cstdint>
#include <span>

namespace tempo {

/// Kendall rank correlation with tie bookkeeping. Pairs tied only in the
/// actual scores (O) and pairs tied only in the predicted scores (U) enter
/// the denominator; pairs tied in both enter neither:
///   tau = (C - D) / sqrt((C + D + O) * (C + D + U)).
struct KendallResult {
  double tau = 0.0;
  int64_t concordant = 0;
  int64_t discordant = 0;
  int64_t ties_actual_only = 0;     // O
  int64_t ties_predicted_only = 0;  // U
};

/// O(n log n) merge-sort implementation. Throws std::domain_error when either
/// ranking is constant (zero denominator) and std::invalid_argument on
/// length mismatch, fewer than two entries, or non-finite scores.
KendallResult kendall_tau_b(std::span<const double> predicted, std::span<const double> actual);

/// Overlap between the predicted and actual top-f% node sets, as a fraction
/// of the set size round-half-up(f% * n), at least 1. Score ties are broken
/// towards smaller node ids in both rankings.
double recognition_rate(std::span<const double> predicted, std::span<const double> actual,
                        double f_percent);

/// Mean over defined entries (NaN marks an undefined evaluation, e.g. a
/// start time whose correlation had a zero denominator).
struct StartAverage {
  double mean = 0.0;
  int excluded = 0;
};

StartAverage average_over_starts(std::span<const double> values);

}  // namespace tempo
