#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "copent/data.hpp"
#include "copent/estimators.hpp"
#include "copent/parallel.hpp"
#include "copent/synth.hpp"

namespace copent {

/// rho values from `lo` to `hi` inclusive in steps of `step`, rounded to 12
/// decimals so that 0.1 * 3 prints as 0.3.
inline std::vector<double> rho_grid(double lo, double hi, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("rho step must be positive");
  if (hi < lo) throw std::invalid_argument("rho max must not be below rho min");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12;
  }
  return out;
}

struct SweepConfig {
  std::vector<double> rho_values = rho_grid(0.0, 0.9, 0.1);
  std::size_t T = 1000;
  std::size_t trials = 30;
  std::uint64_t base_seed = 0;
  EstimatorConfig estimator;
  std::size_t threads = 1;  // trial workers; never changes results

  void check() const {
    if (rho_values.empty()) throw std::invalid_argument("sweep needs at least one rho value");
    for (double r : rho_values)
      if (!(std::abs(r) < 1.0)) throw std::invalid_argument("sweep rho values must satisfy |rho| < 1");
    if (trials < 1) throw std::invalid_argument("sweep needs at least one trial");
    if (T < 2) throw std::invalid_argument("sweep needs at least 2 samples per trial");
  }
};

struct SweepRow {
  double rho;
  double analytic_mi;
  double copent_mean;
  double copent_sd;
  double ksg_mean;
  double ksg_sd;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  SweepConfig config;
};

/// Mean and sample standard deviation (n - 1 denominator; 0 for one value).
struct MeanSd {
  double mean;
  double sd;
};

inline MeanSd mean_sd(std::span<const double> v) {
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  if (v.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

/// Runs `trials` independent Gaussian trials per rho. Trial t of every rho
/// draws from seed base_seed + t. Results are aggregated by trial index.
inline SweepResult run_sweep(const SweepConfig& config) {
  config.check();
  const std::size_t n_rho = config.rho_values.size();
  const std::size_t n = n_rho * config.trials;
  std::vector<double> copent(n), ksg(n);

  EstimatorConfig est = config.estimator;
  est.threads = 1;
  parallel_for(n, config.threads, [&](std::size_t job) {
    const std::size_t r = job / config.trials, t = job % config.trials;
    const auto m = gaussian_sample({config.rho_values[r], config.T, config.base_seed + t});
    copent[job] = mi_copula(m, est).nats;
    ksg[job] = mi_ksg(m, est).nats;
  });

  SweepResult result{{}, config};
  for (std::size_t r = 0; r < n_rho; ++r) {
    const std::span<const double> c(copent.data() + r * config.trials, config.trials);
    const std::span<const double> k(ksg.data() + r * config.trials, config.trials);
    const auto cs = mean_sd(c), ks = mean_sd(k);
    const double rho = config.rho_values[r];
    result.rows.push_back({rho, gaussian_mi_analytic(rho), cs.mean, cs.sd, ks.mean, ks.sd});
  }
  return result;
}

inline constexpr const char* kSweepCsvHeader = "rho,analytic_mi,copent_mean,copent_sd,ksg_mean,ksg_sd";

namespace detail {
inline SweepRow scaled(SweepRow r, double unit) {
  return {r.rho, r.analytic_mi / unit, r.copent_mean / unit, r.copent_sd / unit, r.ksg_mean / unit,
          r.ksg_sd / unit};
}
}  // namespace detail

/// CSV with '#' metadata lines ahead of the header; values in nats unless
/// `bits` is set.
inline std::string sweep_to_csv(const SweepResult& res, bool bits = false) {
  const auto& c = res.config;
  const double unit = bits ? kNatsPerBit : 1.0;
  std::string out;
  out += "# T=" + std::to_string(c.T) + " k=" + std::to_string(c.estimator.k) +
         " trials=" + std::to_string(c.trials) + " seed=" + std::to_string(c.base_seed) +
         " norm=" + std::string(to_string(c.estimator.norm)) +
         " rank_scale=" + std::string(to_string(c.estimator.rank_scaling)) +
         " ties=" + std::string(to_string(c.estimator.tie_policy)) + " unit=" + (bits ? "bits" : "nats") +
         "\n";
  out += kSweepCsvHeader;
  out += '\n';
  for (const auto& raw : res.rows) {
    const auto r = detail::scaled(raw, unit);
    for (double v : {r.rho, r.analytic_mi, r.copent_mean, r.copent_sd, r.ksg_mean}) {
      out += format_double(v);
      out += ',';
    }
    out += format_double(r.ksg_sd);
    out += '\n';
  }
  return out;
}

inline nlohmann::ordered_json sweep_to_json(const SweepResult& res, bool bits = false) {
  const auto& c = res.config;
  const double unit = bits ? kNatsPerBit : 1.0;
  nlohmann::ordered_json j;
  j["metadata"] = {{"T", c.T},
                   {"k", c.estimator.k},
                   {"trials", c.trials},
                   {"seed", c.base_seed},
                   {"norm", to_string(c.estimator.norm)},
                   {"rank_scale", to_string(c.estimator.rank_scaling)},
                   {"ties", to_string(c.estimator.tie_policy)},
                   {"unit", bits ? "bits" : "nats"}};
  auto rows = nlohmann::ordered_json::array();
  for (const auto& raw : res.rows) {
    const auto r = detail::scaled(raw, unit);
    rows.push_back({{"rho", r.rho},
                    {"analytic_mi", r.analytic_mi},
                    {"copent_mean", r.copent_mean},
                    {"copent_sd", r.copent_sd},
                    {"ksg_mean", r.ksg_mean},
                    {"ksg_sd", r.ksg_sd}});
  }
  j["rows"] = std::move(rows);
  return j;
}

}  // namespace copent
