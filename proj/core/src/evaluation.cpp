#include "tempo/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace tempo {

namespace {

/// Pairs (i < j) with values[i] > values[j], via merge sort. Ties do not
/// count, so on input sorted by (predicted, actual) this is exactly the
/// number of strictly discordant pairs.
int64_t count_inversions(std::vector<double>& values, std::vector<double>& scratch, size_t lo,
                         size_t hi) {
  if (hi - lo < 2) return 0;
  const size_t mid = lo + (hi - lo) / 2;
  int64_t count = count_inversions(values, scratch, lo, mid) +
                  count_inversions(values, scratch, mid, hi);
  size_t a = lo, b = mid, out = lo;
  while (a < mid && b < hi) {
    if (values[a] <= values[b]) {
      scratch[out++] = values[a++];
    } else {
      count += static_cast<int64_t>(mid - a);
      scratch[out++] = values[b++];
    }
  }
  while (a < mid) scratch[out++] = values[a++];
  while (b < hi) scratch[out++] = values[b++];
  std::copy(scratch.begin() + static_cast<ptrdiff_t>(lo),
            scratch.begin() + static_cast<ptrdiff_t>(hi),
            values.begin() + static_cast<ptrdiff_t>(lo));
  return count;
}

int64_t tied_pairs(int64_t run) { return run * (run - 1) / 2; }

}  // namespace

KendallResult kendall_tau_b(std::span<const double> predicted, std::span<const double> actual) {
  const size_t n = predicted.size();
  if (n != actual.size()) throw std::invalid_argument("rankings differ in length");
  if (n < 2) throw std::invalid_argument("need at least two observations");
  for (size_t i = 0; i < n; ++i)
    if (!std::isfinite(predicted[i]) || !std::isfinite(actual[i]))
      throw std::invalid_argument("scores must be finite");

  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), size_t{0});
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    if (predicted[a] != predicted[b]) return predicted[a] < predicted[b];
    return actual[a] < actual[b];
  });

  const int64_t total = tied_pairs(static_cast<int64_t>(n));

  // Runs tied in predicted, and sub-runs tied in both.
  int64_t ties_pred = 0, ties_both = 0;
  for (size_t i = 0; i < n;) {
    size_t j = i;
    while (j < n && predicted[idx[j]] == predicted[idx[i]]) ++j;
    ties_pred += tied_pairs(static_cast<int64_t>(j - i));
    size_t a = i;
    while (a < j) {
      size_t b = a;
      while (b < j && actual[idx[b]] == actual[idx[a]]) ++b;
      ties_both += tied_pairs(static_cast<int64_t>(b - a));
      a = b;
    }
    i = j;
  }

  int64_t ties_act = 0;
  {
    std::vector<double> sorted(actual.begin(), actual.end());
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < n;) {
      size_t j = i;
      while (j < n && sorted[j] == sorted[i]) ++j;
      ties_act += tied_pairs(static_cast<int64_t>(j - i));
      i = j;
    }
  }

  std::vector<double> seq(n), scratch(n);
  for (size_t i = 0; i < n; ++i) seq[i] = actual[idx[i]];
  const int64_t discordant = count_inversions(seq, scratch, 0, n);

  KendallResult res;
  res.discordant = discordant;
  res.concordant = total - ties_pred - ties_act + ties_both - discordant;
  res.ties_predicted_only = ties_pred - ties_both;
  res.ties_actual_only = ties_act - ties_both;
  if (total == ties_pred || total == ties_act)
    throw std::domain_error("rank correlation undefined: a ranking is constant");
  res.tau = static_cast<double>(res.concordant - res.discordant) /
            (std::sqrt(static_cast<double>(total - ties_pred)) *
             std::sqrt(static_cast<double>(total - ties_act)));
  return res;
}

double recognition_rate(std::span<const double> predicted, std::span<const double> actual,
                        double f_percent) {
  const size_t n = predicted.size();
  if (n != actual.size()) throw std::invalid_argument("rankings differ in length");
  if (n == 0) throw std::invalid_argument("need at least one observation");
  if (!(f_percent > 0.0) || f_percent > 100.0)
    throw std::invalid_argument("f must lie in (0, 100]");
  for (size_t i = 0; i < n; ++i)
    if (!std::isfinite(predicted[i]) || !std::isfinite(actual[i]))
      throw std::invalid_argument("scores must be finite");

  const auto k = static_cast<size_t>(std::max<int64_t>(
      1, static_cast<int64_t>(std::floor(f_percent / 100.0 * static_cast<double>(n) + 0.5))));

  auto top_set = [k, n](std::span<const double> scores) {
    std::vector<int32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
      if (scores[static_cast<size_t>(a)] != scores[static_cast<size_t>(b)])
        return scores[static_cast<size_t>(a)] > scores[static_cast<size_t>(b)];
      return a < b;
    });
    order.resize(k);
    std::sort(order.begin(), order.end());
    return order;
  };

  const auto top_pred = top_set(predicted);
  const auto top_act = top_set(actual);
  std::vector<int32_t> overlap;
  std::set_intersection(top_pred.begin(), top_pred.end(), top_act.begin(), top_act.end(),
                        std::back_inserter(overlap));
  return static_cast<double>(overlap.size()) / static_cast<double>(k);
}

StartAverage average_over_starts(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("need at least one evaluation");
  double sum = 0.0;
  int defined = 0;
  for (const double v : values) {
    if (std::isnan(v)) continue;
    sum += v;
    ++defined;
  }
  if (defined == 0) throw std::runtime_error("every evaluation is undefined");
  return {sum / defined, static_cast<int>(values.size()) - defined};
}

}  // namespace tempo
