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

#include "permapprox/serialization.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <stdexcept>

namespace permapprox {

namespace {

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (const Complex& v : m.entries()) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  return Json{{"n", m.n()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const int n = j.at("n").get<int>();
  const auto& re = j.at("re");
  const std::size_t count = static_cast<std::size_t>(n) * static_cast<std::size_t>(std::max(n, 0));
  if (re.size() != count) throw std::invalid_argument("matrix JSON: 're' must hold n*n values");
  std::vector<Complex> entries(count);
  const bool has_im = j.contains("im");
  if (has_im && j.at("im").size() != count) throw std::invalid_argument("matrix JSON: 'im' must hold n*n values");
  for (std::size_t i = 0; i < count; ++i)
    entries[i] = Complex(re[i].get<double>(), has_im ? j.at("im")[i].get<double>() : 0.0);
  return ComplexMatrix(n, std::move(entries));
}

ComplexMatrix load_matrix(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  return matrix_from_json(Json::parse(in));
}

void save_matrix(const std::filesystem::path& path, const ComplexMatrix& m) {
  auto out = open_for_write(path);
  out << matrix_to_json(m).dump() << '\n';
}

Json distribution_to_json(const EntryDistribution& d) {
  return Json{{"kind", d.name()}, {"mu_re", d.mu().real()}, {"mu_im", d.mu().imag()}};
}

EntryDistribution distribution_from_json(const Json& j) {
  const Complex mu(j.value("mu_re", 0.0), j.value("mu_im", 0.0));
  return builtin_distribution(j.at("kind").get<std::string>(), mu);
}

Json log_complex_to_json(const LogComplex& v) {
  if (v.is_zero()) return Json{{"zero", true}};
  return Json{{"zero", false}, {"log_mag", v.log_mag()}, {"phase", v.phase()}};
}

LogComplex log_complex_from_json(const Json& j) {
  if (j.at("zero").get<bool>()) return LogComplex::zero();
  return LogComplex::from_log_polar(j.at("log_mag").get<double>(), j.at("phase").get<double>());
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_object()) return {j.value("re", 0.0), j.value("im", 0.0)};
  throw std::invalid_argument("expected a complex value as number, [re, im] or {\"re\", \"im\"}");
}

Json record_to_json(const TrialRecord& r) {
  Json diag = Json::object();
  for (const auto& field : diagnostic_fields())
    if (auto it = r.diagnostics.find(field); it != r.diagnostics.end()) diag[field] = it->second;
  return Json{{"seed", r.seed},
              {"n", r.n},
              {"mu_re", r.mu.real()},
              {"mu_im", r.mu.imag()},
              {"dist", r.dist},
              {"eps", r.eps},
              {"algorithm", r.algorithm},
              {"estimate", r.estimate ? log_complex_to_json(*r.estimate) : Json(nullptr)},
              {"route", r.route},
              {"t_used", r.t_used ? Json(*r.t_used) : Json(nullptr)},
              {"exact", r.exact ? log_complex_to_json(*r.exact) : Json(nullptr)},
              {"rel_error", optional_number(r.rel_error)},
              {"error", r.error},
              {"diagnostics", std::move(diag)}};
}

TrialRecord record_from_json(const Json& j) {
  TrialRecord r;
  r.seed = j.at("seed").get<std::uint64_t>();
  r.n = j.at("n").get<int>();
  r.mu = {j.at("mu_re").get<double>(), j.at("mu_im").get<double>()};
  r.dist = j.at("dist").get<std::string>();
  r.eps = j.at("eps").get<double>();
  r.algorithm = j.at("algorithm").get<std::string>();
  if (!j.at("estimate").is_null()) r.estimate = log_complex_from_json(j.at("estimate"));
  r.route = j.value("route", "");
  if (j.contains("t_used") && !j.at("t_used").is_null()) r.t_used = j.at("t_used").get<int>();
  if (!j.at("exact").is_null()) r.exact = log_complex_from_json(j.at("exact"));
  if (!j.at("rel_error").is_null()) r.rel_error = j.at("rel_error").get<double>();
  r.error = j.value("error", "");
  for (const auto& [key, value] : j.at("diagnostics").items()) r.diagnostics[key] = value.get<double>();
  return r;
}

ExperimentConfig experiment_config_from_json(const Json& j) {
  ExperimentConfig cfg;
  cfg.n = j.at("n").get<std::vector<int>>();
  for (const auto& mu : j.at("mu")) cfg.mu.push_back(complex_from_json(mu));
  cfg.eps = j.value("eps", std::vector<double>{0.5});
  cfg.dist = j.at("dist").get<std::vector<std::string>>();
  cfg.trials = j.at("trials").get<int>();
  cfg.base_seed = j.value("base_seed", std::uint64_t{0});
  for (const auto& name : j.value("algorithms", std::vector<std::string>{}))
    cfg.algorithms.push_back(parse_algorithm(name));
  cfg.diagnostics = j.value("diagnostics", std::vector<std::string>{});
  cfg.exact_oracle = j.value("exact_oracle", false);
  if (j.contains("params")) {
    const auto& p = j.at("params");
    cfg.params.c = p.value("c", cfg.params.c);
    cfg.params.nu = p.value("nu", cfg.params.nu);
    cfg.params.gamma = p.value("gamma", cfg.params.gamma);
    cfg.params.beta = p.value("beta", cfg.params.beta);
    cfg.params.rho_ptas = p.value("rho_ptas", cfg.params.rho_ptas);
    cfg.params.ryser_max_n = p.value("ryser_max_n", cfg.params.ryser_max_n);
    cfg.params.coefficient_budget = p.value("coefficient_budget", cfg.params.coefficient_budget);
  }
  if (j.contains("t") && !j.at("t").is_null()) cfg.t = j.at("t").get<int>();
  cfg.threads = j.value("threads", 1u);
  for (const auto& c : j.value("checks", Json::array())) {
    Check check;
    check.name = c.at("name").get<std::string>();
    check.field = c.at("field").get<std::string>();
    check.statistic = c.value("statistic", "median");
    check.threshold = c.value("threshold", 0.0);
    if (c.contains("algorithm")) check.algorithm = c.at("algorithm").get<std::string>();
    if (c.contains("n")) check.n = c.at("n").get<int>();
    if (c.contains("max")) check.max = c.at("max").get<double>();
    if (c.contains("min")) check.min = c.at("min").get<double>();
    check.acceptance = c.value("acceptance", true);
    cfg.checks.push_back(std::move(check));
  }
  validate(cfg);
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  return experiment_config_from_json(Json::parse(in));
}

Json table_to_json(const DiagnosticTable& table) {
  Json summary = Json::object();
  for (const auto& [k, v] : table.summary) summary[k] = v;
  return Json{{"name", table.name}, {"columns", table.columns}, {"rows", table.rows}, {"summary", summary}};
}

void write_table_csv(std::ostream& out, const DiagnosticTable& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
    out << '\n';
  }
}

ResultFormat parse_result_format(std::string_view name) {
  if (name == "csv") return ResultFormat::Csv;
  if (name == "json") return ResultFormat::Json;
  throw std::invalid_argument("unknown result format '" + std::string(name) + "'");
}

void write_results(std::ostream& out, const std::vector<TrialRecord>& records, ResultFormat format) {
  if (format == ResultFormat::Json) {
    Json arr = Json::array();
    for (const auto& r : records) arr.push_back(record_to_json(r));
    out << Json{{"records", std::move(arr)}}.dump(1) << '\n';
    return;
  }

  std::set<std::string> present;
  for (const auto& r : records)
    for (const auto& [k, v] : r.diagnostics) present.insert(k);
  std::vector<std::string> diag_columns;
  for (const auto& f : diagnostic_fields())
    if (present.count(f)) diag_columns.push_back(f);

  out << "seed,n,mu_re,mu_im,dist,eps,algorithm,log_mag,phase,exact_log_mag,exact_phase,rel_error,error";
  for (const auto& f : diag_columns) out << ",diag_" << f;
  out << '\n';

  const auto log_fields = [&](const std::optional<LogComplex>& v) {
    if (!v) return std::string(",");
    if (v->is_zero()) return std::string("-inf,0");
    return format_double(v->log_mag()) + "," + format_double(v->phase());
  };
  for (const auto& r : records) {
    out << r.seed << ',' << r.n << ',' << format_double(r.mu.real()) << ',' << format_double(r.mu.imag()) << ','
        << csv_escape(r.dist) << ',' << format_double(r.eps) << ',' << csv_escape(r.algorithm) << ','
        << log_fields(r.estimate) << ',' << log_fields(r.exact) << ','
        << (r.rel_error ? format_double(*r.rel_error) : "") << ',' << csv_escape(r.error);
    for (const auto& f : diag_columns) {
      out << ',';
      if (auto it = r.diagnostics.find(f); it != r.diagnostics.end()) out << format_double(it->second);
    }
    out << '\n';
  }
}

void write_results(const std::vector<TrialRecord>& records, const std::filesystem::path& path, ResultFormat format) {
  auto out = open_for_write(path);
  write_results(out, records, format);
  out.flush();
  if (!out) throw std::runtime_error("failed writing results to '" + path.string() + "'");
}

std::vector<TrialRecord> read_results_json(std::istream& in) {
  const Json j = Json::parse(in);
  std::vector<TrialRecord> records;
  for (const auto& r : j.at("records")) records.push_back(record_from_json(r));
  return records;
}

std::vector<TrialRecord> read_results_json(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  return read_results_json(in);
}

}  // namespace permapprox
