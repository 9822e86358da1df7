/*
 * Copyright 2026 The permapprox Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end: exact permanents, expansion coefficients, column
// statistics, the average-case estimators and Monte Carlo sweeps.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "permapprox/approximator.hpp"
#include "permapprox/coefficients.hpp"
#include "permapprox/distributions.hpp"
#include "permapprox/experiment.hpp"
#include "permapprox/permanent.hpp"
#include "permapprox/serialization.hpp"
#include "permapprox/symmetric.hpp"

namespace pa = permapprox;

namespace {

pa::Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(text), 0.0};
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse complex value '" + text + "' (expected RE or RE,IM)");
  }
}

void print_log_complex(std::ostream& out, const pa::LogComplex& v) {
  if (v.is_zero()) {
    out << "log_mag: -inf\nphase: 0\nvalue: 0 0\n";
    return;
  }
  out << "log_mag: " << pa::format_double(v.log_mag()) << "\nphase: " << pa::format_double(v.phase()) << '\n';
  if (v.fits_double()) {
    const pa::Complex c = v.to_complex();
    out << "value: " << pa::format_double(c.real()) << ' ' << pa::format_double(c.imag()) << '\n';
  } else {
    out << "value: out of double range\n";
  }
}

pa::Json complex_array(const std::vector<pa::Complex>& xs) {
  pa::Json arr = pa::Json::array();
  for (const auto& x : xs) arr.push_back({x.real(), x.imag()});
  return arr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and average-case approximate permanents of random complex matrices"};
  app.require_subcommand(1);

  // sample
  auto* sample = app.add_subcommand("sample", "Draw a random matrix and write it as JSON");
  std::string sample_dist = "real-gaussian", sample_mu = "0", sample_out;
  int sample_n = 4;
  std::uint64_t sample_seed = 0;
  sample->add_option("--dist", sample_dist, "complex-gaussian | real-gaussian | shifted-rademacher");
  sample->add_option("--mu", sample_mu, "Mean, RE[,IM]");
  sample->add_option("--n", sample_n, "Dimension")->required();
  sample->add_option("--seed", sample_seed, "Seed");
  sample->add_option("--out", sample_out, "Output path (stdout when omitted)");

  // exact
  auto* exact = app.add_subcommand("exact", "Exact permanent");
  std::string exact_matrix, exact_method = "ryser";
  unsigned exact_threads = 1;
  int exact_max_n = pa::kRyserDefaultMaxN;
  exact->add_option("--matrix", exact_matrix, "Matrix JSON file")->required();
  exact->add_option("--method", exact_method, "ryser | naive")->check(CLI::IsMember({"ryser", "naive"}));
  exact->add_option("--threads", exact_threads, "Gray-code partitions evaluated concurrently");
  exact->add_option("--max-n", exact_max_n, "Ryser dimension guard");

  // coeffs
  auto* coeffs = app.add_subcommand("coeffs", "Expansion coefficients a_k of Per(J + zA) / n!");
  std::string coeffs_matrix, coeffs_method = "interp";
  std::optional<int> coeffs_kmax;
  coeffs->add_option("--matrix", coeffs_matrix, "Matrix JSON file (the centered matrix A)")->required();
  coeffs->add_option("--method", coeffs_method, "submatrix | interp")->check(CLI::IsMember({"submatrix", "interp"}));
  coeffs->add_option("--k-max", coeffs_kmax, "Highest order (submatrix default: n)");

  // stats
  auto* stats = app.add_subcommand("stats", "Column sums C, V_k and D_k of a centered matrix");
  std::string stats_matrix;
  int stats_m = 2;
  stats->add_option("--matrix", stats_matrix, "Matrix JSON file (the centered matrix A)")->required();
  stats->add_option("--m", stats_m, "Highest order");

  // approx
  auto* approx = app.add_subcommand("approx", "Average-case estimate of Per(R)");
  std::string approx_matrix, approx_mu, approx_algorithm = "truncated";
  std::optional<std::string> approx_xi, approx_dist;
  double approx_eps = 0.5;
  std::optional<int> approx_t;
  approx->add_option("--matrix", approx_matrix, "Matrix JSON file (R)")->required();
  approx->add_option("--mu", approx_mu, "Entry mean, RE[,IM]")->required();
  approx->add_option("--eps", approx_eps, "Target accuracy in (0, 1)");
  approx->add_option("--algorithm", approx_algorithm, "truncated | simple | ptas")
      ->check(CLI::IsMember({"truncated", "simple", "ptas"}));
  approx->add_option("--xi", approx_xi, "Quasi-variance of the entry distribution, RE[,IM]");
  approx->add_option("--dist", approx_dist, "Take xi from a built-in family instead of --xi");
  approx->add_option("--t", approx_t, "Override the truncation order");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo sweep from a JSON config");
  std::string exp_config, exp_out, exp_format = "csv";
  std::optional<unsigned> exp_threads;
  bool exp_progress = false;
  experiment->add_option("--config", exp_config, "Experiment config JSON")->required();
  experiment->add_option("--out", exp_out, "Output path (stdout when omitted)");
  experiment->add_option("--format", exp_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  experiment->add_option("--threads", exp_threads, "Worker threads (overrides the config)");
  experiment->add_flag("--progress", exp_progress, "Report progress on stderr");

  // diagnose
  auto* diagnose = app.add_subcommand("diagnose", "Statistical diagnostics with predicted values alongside");
  std::string diag_kind, diag_dist = "real-gaussian", diag_mu = "1", diag_format = "json";
  int diag_n = 10, diag_trials = 100, diag_kmax = 3;
  std::optional<int> diag_t;
  double diag_eps = 0.5;
  std::uint64_t diag_seed = 0;
  unsigned diag_threads = 1;
  diagnose->add_option("kind", diag_kind, "ak-moments | tail | vk-gap | magnitude | power-sums")
      ->required()
      ->check(CLI::IsMember({"ak-moments", "tail", "vk-gap", "magnitude", "power-sums"}));
  diagnose->add_option("--dist", diag_dist, "Entry family");
  diagnose->add_option("--mu", diag_mu, "Entry mean, RE[,IM]");
  diagnose->add_option("--n", diag_n, "Dimension");
  diagnose->add_option("--trials", diag_trials, "Number of sampled matrices");
  diagnose->add_option("--k-max", diag_kmax, "Highest order for ak-moments");
  diagnose->add_option("--t", diag_t, "Truncation order for tail / vk-gap");
  diagnose->add_option("--eps", diag_eps, "Accuracy parameter");
  diagnose->add_option("--seed", diag_seed, "Seed");
  diagnose->add_option("--threads", diag_threads, "Worker threads");
  diagnose->add_option("--format", diag_format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample) {
      const auto dist = pa::builtin_distribution(sample_dist, parse_complex(sample_mu));
      const auto m = pa::sample_matrix(dist, sample_n, sample_seed).matrix;
      if (sample_out.empty())
        std::cout << pa::matrix_to_json(m).dump() << '\n';
      else
        pa::save_matrix(sample_out, m);
    } else if (*exact) {
      const auto m = pa::load_matrix(exact_matrix);
      const auto value = exact_method == "naive"
                             ? pa::permanent_naive(m)
                             : pa::permanent_ryser(m, pa::RyserOptions{exact_max_n, exact_threads, false});
      print_log_complex(std::cout, value);
    } else if (*coeffs) {
      const auto a = pa::load_matrix(coeffs_matrix);
      const auto series = coeffs_method == "submatrix"
                              ? pa::coefficients_submatrix(a, coeffs_kmax.value_or(a.n()))
                              : pa::coefficients_interpolation(a);
      auto values = series.coeffs;
      if (coeffs_kmax && *coeffs_kmax + 1 < static_cast<int>(values.size())) values.resize(*coeffs_kmax + 1);
      std::cout << complex_array(values).dump() << '\n';
    } else if (*stats) {
      const auto a = pa::load_matrix(stats_matrix);
      const auto s = pa::compute_v_d(a, stats_m);
      pa::Json out{{"n", s.n},
                   {"C", complex_array(s.column_sums)},
                   {"V", complex_array(s.v)},
                   {"D", complex_array(s.d)},
                   {"recursion_residual", s.recursion_residual}};
      std::cout << out.dump(1) << '\n';
    } else if (*approx) {
      const auto r = pa::load_matrix(approx_matrix);
      const pa::Complex mu = parse_complex(approx_mu);
      const auto cfg = pa::default_config(approx_eps);
      const auto algorithm = pa::parse_algorithm(approx_algorithm);
      std::optional<pa::Complex> xi;
      if (approx_xi) xi = parse_complex(*approx_xi);
      else if (approx_dist) xi = pa::builtin_distribution(*approx_dist, mu).xi();
      if (algorithm != pa::Algorithm::Truncated && !xi)
        throw std::invalid_argument("--xi or --dist is required for the simple and ptas estimators");

      pa::Estimate est;
      if (algorithm == pa::Algorithm::Truncated)
        est = approx_t ? pa::approx_truncated(r, mu, cfg, *approx_t) : pa::approx_truncated(r, mu, cfg);
      else if (algorithm == pa::Algorithm::Simple)
        est = pa::approx_simple(r, mu, *xi, cfg);
      else
        est = pa::approx_ptas(r, mu, *xi, cfg);

      std::cout << "algorithm: " << pa::to_string(est.algorithm) << '\n';
      print_log_complex(std::cout, est.value);
      std::cout << "t_used: " << (est.t_used ? std::to_string(*est.t_used) : std::string("none")) << '\n';
      if (!est.z_admissible)
        std::cerr << "warning: |z| = " << std::abs(est.z) << " exceeds (ln n)^c; the estimate is outside the "
                  << "regime covered by the accuracy guarantee\n";
    } else if (*experiment) {
      auto cfg = pa::load_experiment_config(exp_config);
      if (exp_threads) cfg.threads = *exp_threads;
      pa::ProgressCallback progress;
      if (exp_progress)
        progress = [](std::size_t done, std::size_t total) {
          std::cerr << "\rtrials " << done << "/" << total << (done == total ? "\n" : "") << std::flush;
        };
      const auto records = pa::run_experiment(cfg, progress);
      const auto format = pa::parse_result_format(exp_format);
      if (exp_out.empty())
        pa::write_results(std::cout, records, format);
      else
        pa::write_results(records, exp_out, format);

      bool failed = false;
      for (const auto& check : pa::evaluate_checks(cfg, records)) {
        std::cerr << (check.passed ? "PASS " : "FAIL ") << check.name << " value=" << pa::format_double(check.value)
                  << " samples=" << check.samples << (check.acceptance ? "" : " (informational)") << '\n';
        failed = failed || (check.acceptance && !check.passed);
      }
      return failed ? EXIT_FAILURE : EXIT_SUCCESS;
    } else if (*diagnose) {
      const pa::Complex mu = parse_complex(diag_mu);
      const auto dist = pa::builtin_distribution(diag_dist, mu);
      auto params = pa::default_config(diag_eps);
      params.threads = diag_threads;
      pa::DiagnosticTable table;
      if (diag_kind == "ak-moments")
        table = pa::diagnostic_ak_moments(diag_n, diag_kmax, diag_trials, dist, diag_seed,
                                          pa::CoefficientOptions{pa::kDefaultCoefficientBudget,
                                                                 pa::kRyserDefaultMaxN, diag_threads});
      else if (diag_kind == "tail")
        table = pa::diagnostic_tail(diag_n, mu, diag_eps, diag_trials, dist, diag_seed, params, diag_t);
      else if (diag_kind == "vk-gap")
        table = pa::diagnostic_vk_gap(diag_n, mu, diag_t.value_or(std::min(diag_n, pa::truncation_order(params, diag_n))),
                                      diag_trials, dist, diag_seed, params);
      else if (diag_kind == "magnitude")
        table = pa::diagnostic_estimator_magnitude(diag_n, mu, diag_trials, dist, diag_seed, params);
      else
        table = pa::diagnostic_power_sums(diag_n, diag_trials, dist, diag_seed);
      if (diag_format == "csv")
        pa::write_table_csv(std::cout, table);
      else
        std::cout << pa::table_to_json(table).dump(1) << '\n';
    }
  } catch (const pa::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return EXIT_SUCCESS;
}
