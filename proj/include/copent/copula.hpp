#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "copent/data.hpp"

namespace copent {

/// Denominator used to map ranks into the unit interval.
enum class RankScaling {
  T,         // rank / T, the plain empirical CDF; values in (0, 1]
  T_plus_1,  // rank / (T + 1); values strictly inside (0, 1)
};

/// How tied values within a column are ranked.
enum class TiePolicy {
  occurrence_order,  // ties ranked by ascending row index; ranks distinct per column
  average,           // tied values share the mean of their ranks
};

inline std::string_view to_string(RankScaling s) { return s == RankScaling::T ? "T" : "T+1"; }
inline std::string_view to_string(TiePolicy p) {
  return p == TiePolicy::occurrence_order ? "occurrence" : "average";
}

/// Samples from the empirical copula density: every column rank-transformed.
class PseudoObservations {
 public:
  PseudoObservations(std::size_t rows, std::size_t cols, std::vector<double> values,
                     RankScaling scaling, TiePolicy ties)
      : rows_(rows), cols_(cols), values_(std::move(values)), scaling_(scaling), ties_(ties) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t t, std::size_t i) const { return values_[t * cols_ + i]; }
  std::span<const double> values() const noexcept { return values_; }
  RankScaling scaling() const noexcept { return scaling_; }
  TiePolicy tie_policy() const noexcept { return ties_; }

  std::vector<double> column(std::size_t i) const {
    std::vector<double> out(rows_);
    for (std::size_t t = 0; t < rows_; ++t) out[t] = (*this)(t, i);
    return out;
  }

  PointsView view() const { return {values_, rows_, cols_}; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
  RankScaling scaling_;
  TiePolicy ties_;
};

/// Fraction of `column` entries that are <= x.
inline double empirical_cdf(std::span<const double> column, double x) {
  const auto count = std::count_if(column.begin(), column.end(), [x](double v) { return v <= x; });
  return static_cast<double>(count) / static_cast<double>(column.size());
}

/// 1-based ranks of one column. Under average ties the result may hold
/// half-integers.
inline std::vector<double> column_ranks(std::span<const double> column, TiePolicy ties) {
  const std::size_t n = column.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Stable on equal values, so ties keep ascending row order.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return column[a] < column[b]; });

  std::vector<double> ranks(n);
  if (ties == TiePolicy::occurrence_order) {
    for (std::size_t r = 0; r < n; ++r) ranks[order[r]] = static_cast<double>(r + 1);
    return ranks;
  }
  for (std::size_t g = 0; g < n;) {
    std::size_t e = g + 1;
    while (e < n && column[order[e]] == column[order[g]]) ++e;
    // Mean of ranks g+1 .. e.
    const double mean = static_cast<double>(g + 1 + e) / 2.0;
    for (std::size_t r = g; r < e; ++r) ranks[order[r]] = mean;
    g = e;
  }
  return ranks;
}

/// Column-wise empirical CDF transform, one sort per column.
inline PseudoObservations rank_transform(const SampleMatrix& m,
                                         RankScaling scaling = RankScaling::T_plus_1,
                                         TiePolicy ties = TiePolicy::occurrence_order) {
  for (double v : m.values()) {
    if (!std::isfinite(v)) throw DataError("rank_transform: input contains non-finite values");
  }
  const std::size_t rows = m.rows(), cols = m.cols();
  const double den = static_cast<double>(scaling == RankScaling::T ? rows : rows + 1);
  std::vector<double> out(rows * cols);
  for (std::size_t i = 0; i < cols; ++i) {
    const auto col = m.column(i);
    const auto ranks = column_ranks(col, ties);
    for (std::size_t t = 0; t < rows; ++t) out[t * cols + i] = ranks[t] / den;
  }
  return PseudoObservations(rows, cols, std::move(out), scaling, ties);
}

}  // namespace copent
