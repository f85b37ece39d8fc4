#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "copent/copula.hpp"
#include "copent/data.hpp"
#include "copent/error.hpp"
#include "copent/knn.hpp"
#include "copent/special.hpp"

namespace copent {

struct EstimatorConfig {
  std::size_t k = 3;
  Norm norm = Norm::chebyshev;
  RankScaling rank_scaling = RankScaling::T_plus_1;
  TiePolicy tie_policy = TiePolicy::occurrence_order;
  Backend backend = Backend::kdtree;
  std::size_t threads = 1;  // neighbor-query workers; never changes results
};

struct EntropyEstimate {
  double nats = 0.0;
  std::size_t T = 0;
  std::size_t d = 0;
  std::size_t k = 0;
  std::string method;
};

enum class MIMethod { copula_entropy, ksg };

inline std::string_view to_string(MIMethod m) {
  return m == MIMethod::copula_entropy ? "copula_entropy" : "ksg";
}

struct MIEstimate {
  double nats = 0.0;
  MIMethod method = MIMethod::copula_entropy;
  EstimatorConfig config;
  std::size_t T = 0;
};

inline constexpr double kNatsPerBit = std::numbers::ln2;

/// log of the ball-volume constant for a ball of diameter eps: V = c_d * eps^d.
/// Zero for the max norm (the ball is the cube of side eps).
inline double log_unit_ball_constant(std::size_t d, Norm norm) {
  if (norm == Norm::chebyshev) return 0.0;
  const double dd = static_cast<double>(d);
  return dd * std::log(std::sqrt(std::numbers::pi)) - std::lgamma(dd / 2.0 + 1.0) - dd * std::log(2.0);
}

namespace detail {

inline std::vector<NeighborResult> neighbors_or_throw(const PointsView& points,
                                                      const EstimatorConfig& config) {
  if (config.k == 0) throw std::invalid_argument("k must be at least 1");
  if (points.rows <= config.k) {
    throw std::invalid_argument("need more than k=" + std::to_string(config.k) + " samples, got " +
                                std::to_string(points.rows));
  }
  auto nn = kth_neighbor_distances(points, config.k, config.norm, config.backend, config.threads);
  for (const auto& r : nn) {
    if (r.neighbor_distances.front() == 0.0) {
      throw EstimationError("coincident points at rows " + std::to_string(r.query_index) + " and " +
                            std::to_string(r.neighbor_indices.front()) +
                            ": the kNN estimator needs distinct points (for copula estimates use "
                            "--ties occurrence)");
    }
  }
  return nn;
}

inline PointsView column_view(const std::vector<double>& column) { return {column, column.size(), 1}; }

}  // namespace detail

/// Kozachenko-Leonenko kNN differential entropy in nats:
///   H = -psi(k) + psi(T) + log c_d + (d/T) * sum_t log eps_t,
/// with eps_t twice the distance from point t to its k-th neighbor.
inline EntropyEstimate kl_entropy(const PointsView& points, const EstimatorConfig& config = {},
                                  std::string method = "kl_entropy") {
  const auto nn = detail::neighbors_or_throw(points, config);
  std::vector<double> log_eps;
  log_eps.reserve(nn.size());
  for (const auto& r : nn) log_eps.push_back(std::log(2.0 * r.kth_distance));
  // Summed in sorted order so the estimate does not depend on row order.
  std::sort(log_eps.begin(), log_eps.end());
  double sum_log = 0.0;
  for (double v : log_eps) sum_log += v;

  const double T = static_cast<double>(points.rows);
  const double d = static_cast<double>(points.dim);
  const double h = -digamma(static_cast<double>(config.k)) + digamma(T) +
                   log_unit_ball_constant(points.dim, config.norm) + d * sum_log / T;
  return {h, points.rows, points.dim, config.k, std::move(method)};
}

inline EntropyEstimate kl_entropy(const SampleMatrix& m, const EstimatorConfig& config = {}) {
  return kl_entropy(m.view(), config);
}

/// Entropy of the empirical copula: kl_entropy of the rank-transformed sample.
inline EntropyEstimate copula_entropy(const SampleMatrix& m, const EstimatorConfig& config = {}) {
  const auto u = rank_transform(m, config.rank_scaling, config.tie_policy);
  return kl_entropy(u.view(), config, "copula_entropy");
}

/// Mutual information as negative copula entropy. Works for any N >= 2.
inline MIEstimate mi_copula(const SampleMatrix& m, const EstimatorConfig& config = {}) {
  if (m.cols() < 2) throw std::invalid_argument("mutual information needs at least 2 variables");
  const auto hc = copula_entropy(m, config);
  return {-hc.nats, MIMethod::copula_entropy, config, m.rows()};
}

/// Kraskov-Stoegbauer-Grassberger estimator (algorithm 1) for two variables:
///   I = psi(k) + psi(T) - < psi(n_x + 1) + psi(n_y + 1) >,
/// n_x, n_y counting marginal points strictly closer than the joint k-th
/// neighbor distance.
inline MIEstimate mi_ksg(const SampleMatrix& m, const EstimatorConfig& config = {}) {
  if (m.cols() != 2) {
    throw std::invalid_argument("the KSG baseline is bivariate; got " + std::to_string(m.cols()) +
                                " columns");
  }
  if (config.norm != Norm::chebyshev) throw std::invalid_argument("the KSG baseline requires the chebyshev norm");

  const auto nn = detail::neighbors_or_throw(m.view(), config);
  const auto x = m.column(0), y = m.column(1);
  const MarginalCounter cx(x), cy(y);

  double sum = 0.0;
  for (const auto& r : nn) {
    const auto nx = cx.count(r.query_index, r.kth_distance, true);
    const auto ny = cy.count(r.query_index, r.kth_distance, true);
    sum += digamma(static_cast<double>(nx) + 1.0) + digamma(static_cast<double>(ny) + 1.0);
  }
  const double T = static_cast<double>(m.rows());
  const double mi = digamma(static_cast<double>(config.k)) + digamma(T) - sum / T;
  return {mi, MIMethod::ksg, config, m.rows()};
}

/// H(x) - sum_i H(x_i) - H_c(x), each term estimated independently. The
/// true value is zero; the estimate measures combined estimator bias.
inline double decomposition_residual(const SampleMatrix& m, const EstimatorConfig& config = {}) {
  if (m.cols() < 2) throw std::invalid_argument("decomposition needs at least 2 variables");
  const double joint = kl_entropy(m.view(), config).nats;
  double marginals = 0.0;
  for (std::size_t i = 0; i < m.cols(); ++i) {
    const auto col = m.column(i);
    marginals += kl_entropy(detail::column_view(col), config).nats;
  }
  return joint - marginals - copula_entropy(m, config).nats;
}

}  // namespace copent
