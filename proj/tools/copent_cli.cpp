// copent: command-line front end for copula-entropy mutual information.
//
//   copent estimate data.csv [--method copent|ksg] [--columns 0,1]
//   copent entropy data.csv [--copula]
//   copent sweep [--samples 1000 --trials 30 --seed 0] [--output f.csv]
//
// Exit codes: 0 success, 1 usage or data error, 2 estimation error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "copent/copent.hpp"

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kEstimation = 2 };

struct EstimatorFlags {
  std::size_t k = 3;
  std::string norm = "chebyshev";
  std::string rank_scale = "T+1";
  std::string ties = "occurrence";
  std::string backend = "kdtree";

  copent::EstimatorConfig config() const {
    copent::EstimatorConfig c;
    c.k = k;
    c.norm = norm == "euclidean" ? copent::Norm::euclidean : copent::Norm::chebyshev;
    c.rank_scaling = rank_scale == "T" ? copent::RankScaling::T : copent::RankScaling::T_plus_1;
    c.tie_policy = ties == "average" ? copent::TiePolicy::average : copent::TiePolicy::occurrence_order;
    c.backend = backend == "naive" ? copent::Backend::naive : copent::Backend::kdtree;
    return c;
  }
};

struct CommonFlags {
  copent::EstimatorConfig config;
  EstimatorFlags estimator;
  std::string header = "auto";
  std::vector<std::size_t> columns;
  bool bits = false;
  std::string format = "text";
};

void add_estimator_flags(CLI::App* cmd, EstimatorFlags& flags) {
  cmd->add_option("--k", flags.k, "Neighbor order")->check(CLI::PositiveNumber);
  cmd->add_option("--norm", flags.norm, "Distance norm")->check(CLI::IsMember({"chebyshev", "euclidean"}));
  cmd->add_option("--rank-scale", flags.rank_scale, "Rank denominator")->check(CLI::IsMember({"T", "T+1"}));
  cmd->add_option("--ties", flags.ties, "Tie policy for ranks")->check(CLI::IsMember({"occurrence", "average"}));
  cmd->add_option("--backend", flags.backend, "Neighbor search backend")
      ->check(CLI::IsMember({"naive", "kdtree"}));
}

void add_input_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--columns", flags.columns, "0-based columns to use (comma separated)")->delimiter(',');
  cmd->add_option("--header", flags.header, "Whether the first row is a header")
      ->check(CLI::IsMember({"auto", "yes", "no"}));
  cmd->add_flag("--bits", flags.bits, "Also report the value in bits");
  cmd->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"text", "json"}));
}

bool first_row_is_header(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto trimmed = copent::detail::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    for (auto cell : copent::detail::split_commas(trimmed))
      if (!copent::detail::parse_number(cell)) return true;
    return false;
  }
  return false;
}

copent::SampleMatrix load(const std::string& path, const CommonFlags& flags) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw copent::DataError("cannot open '" + path + "'");
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  const bool header = flags.header == "yes" || (flags.header == "auto" && first_row_is_header(text));

  std::optional<std::vector<copent::ColumnSpec>> columns;
  if (!flags.columns.empty()) {
    columns.emplace();
    for (auto c : flags.columns) columns->push_back({c, std::nullopt});
  }
  auto m = copent::parse_csv(text, header, columns);
  for (const auto& f : copent::validate(m)) std::cerr << "warning: " << f.message << "\n";
  return m;
}

void print_value(const std::string& method, double nats, std::size_t T, std::size_t N, std::size_t k,
                 const CommonFlags& flags) {
  if (flags.format == "json") {
    nlohmann::ordered_json j{{"method", method}, {"nats", nats}};
    if (flags.bits) j["bits"] = nats / copent::kNatsPerBit;
    j["T"] = T;
    j["N"] = N;
    j["k"] = k;
    std::cout << j.dump() << "\n";
    return;
  }
  std::cout << "method: " << method << "\n"
            << "nats: " << copent::format_double(nats) << "\n";
  if (flags.bits) std::cout << "bits: " << copent::format_double(nats / copent::kNatsPerBit) << "\n";
  std::cout << "T: " << T << "\nN: " << N << "\nk: " << k << "\n";
}

int cmd_estimate(const std::string& path, const std::string& method, CommonFlags& flags) {
  std::set<std::size_t> distinct(flags.columns.begin(), flags.columns.end());
  if (distinct.size() != flags.columns.size()) {
    throw copent::DataError(
        "duplicate column selection yields coincident ranks; select each column at most once");
  }
  const auto m = load(path, flags);
  if (m.cols() < 2) throw copent::DataError("mutual information needs at least 2 columns");
  if (method == "ksg" && m.cols() != 2) {
    throw copent::DataError("the KSG baseline is bivariate; select exactly 2 columns with --columns");
  }
  const auto est = method == "ksg" ? copent::mi_ksg(m, flags.config) : copent::mi_copula(m, flags.config);
  print_value(std::string(copent::to_string(est.method)), est.nats, m.rows(), m.cols(), flags.config.k,
              flags);
  return kOk;
}

int cmd_entropy(const std::string& path, bool copula, CommonFlags& flags) {
  const auto m = load(path, flags);
  const auto est = copula ? copent::copula_entropy(m, flags.config) : copent::kl_entropy(m, flags.config);
  print_value(est.method, est.nats, est.T, est.d, est.k, flags);
  return kOk;
}

struct SweepFlags {
  double rho_min = 0.0, rho_max = 0.9, rho_step = 0.1;
  std::string output;
  std::string format = "csv";
  bool bits = false;
};

int cmd_sweep(copent::SweepConfig config, const SweepFlags& flags) {
  config.rho_values = copent::rho_grid(flags.rho_min, flags.rho_max, flags.rho_step);
  config.threads = copent::default_thread_count();
  const auto result = copent::run_sweep(config);
  const std::string text = flags.format == "json" ? copent::sweep_to_json(result, flags.bits).dump(2) + "\n"
                                                  : copent::sweep_to_csv(result, flags.bits);
  if (flags.output.empty()) {
    std::cout << text;
    return kOk;
  }
  std::ofstream out(flags.output, std::ios::binary);
  if (!out || !(out << text) || !out.flush()) {
    throw copent::DataError("cannot write '" + flags.output + "'");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mutual information estimation via copula entropy"};
  app.require_subcommand(1);

  CommonFlags est_flags, ent_flags;
  std::string est_path, ent_path, method = "copent";
  bool copula = false;

  auto* estimate = app.add_subcommand("estimate", "Estimate mutual information of CSV columns");
  estimate->add_option("input", est_path, "CSV file")->required();
  estimate->add_option("--method", method, "Estimator")->check(CLI::IsMember({"copent", "ksg"}));
  add_estimator_flags(estimate, est_flags.estimator);
  add_input_flags(estimate, est_flags);

  auto* entropy = app.add_subcommand("entropy", "Estimate differential entropy of CSV columns");
  entropy->add_option("input", ent_path, "CSV file")->required();
  entropy->add_flag("--copula", copula, "Entropy of the empirical copula instead of the raw data");
  add_estimator_flags(entropy, ent_flags.estimator);
  add_input_flags(entropy, ent_flags);

  copent::SweepConfig sweep_config;
  SweepFlags sweep_flags;
  EstimatorFlags sweep_estimator;
  auto* sweep = app.add_subcommand("sweep", "Gaussian benchmark: analytic vs copula-entropy vs KSG");
  add_estimator_flags(sweep, sweep_estimator);
  sweep->add_option("--samples", sweep_config.T, "Samples per trial")->check(CLI::Range(2, 100000000));
  sweep->add_option("--trials", sweep_config.trials, "Trials per rho")->check(CLI::PositiveNumber);
  sweep->add_option("--rho-min", sweep_flags.rho_min, "First rho");
  sweep->add_option("--rho-max", sweep_flags.rho_max, "Last rho");
  sweep->add_option("--rho-step", sweep_flags.rho_step, "rho increment");
  sweep->add_option("--seed", sweep_config.base_seed, "Base seed; trial t uses seed + t");
  sweep->add_option("--output", sweep_flags.output, "Output file (default stdout)");
  sweep->add_option("--format", sweep_flags.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_flag("--bits", sweep_flags.bits, "Report values in bits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const auto threads = copent::default_thread_count();
  est_flags.config = est_flags.estimator.config();
  ent_flags.config = ent_flags.estimator.config();
  est_flags.config.threads = threads;
  ent_flags.config.threads = threads;
  sweep_config.estimator = sweep_estimator.config();

  try {
    if (*estimate) return cmd_estimate(est_path, method, est_flags);
    if (*entropy) return cmd_entropy(ent_path, copula, ent_flags);
    return cmd_sweep(sweep_config, sweep_flags);
  } catch (const copent::EstimationError& e) {
    std::cerr << "estimation error: " << e.what() << "\n";
    return kEstimation;
  } catch (const copent::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "estimation error: " << e.what() << "\n";
    return kEstimation;
  }
}
