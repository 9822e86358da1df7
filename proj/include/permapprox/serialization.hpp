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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "permapprox/distributions.hpp"
#include "permapprox/experiment.hpp"
#include "permapprox/log_complex.hpp"
#include "permapprox/matrix.hpp"

namespace permapprox {

using Json = nlohmann::ordered_json;

// Matrices: {"n": n, "re": [...], "im": [...]}, row-major.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);
ComplexMatrix load_matrix(const std::filesystem::path& path);
void save_matrix(const std::filesystem::path& path, const ComplexMatrix& m);

// Distributions: {"kind": "...", "mu_re": x, "mu_im": y}.
Json distribution_to_json(const EntryDistribution& d);
EntryDistribution distribution_from_json(const Json& j);

// {"zero": true} or {"zero": false, "log_mag": x, "phase": y}.
Json log_complex_to_json(const LogComplex& v);
LogComplex log_complex_from_json(const Json& j);

/// Accepts a number, [re, im], or {"re": x, "im": y}.
Complex complex_from_json(const Json& j);

Json record_to_json(const TrialRecord& r);
TrialRecord record_from_json(const Json& j);

ExperimentConfig experiment_config_from_json(const Json& j);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

Json table_to_json(const DiagnosticTable& table);
void write_table_csv(std::ostream& out, const DiagnosticTable& table);

enum class ResultFormat { Csv, Json };
ResultFormat parse_result_format(std::string_view name);

/// CSV columns: seed,n,mu_re,mu_im,dist,eps,algorithm,log_mag,phase,
/// exact_log_mag,exact_phase,rel_error,error, then diag_<field> for every
/// diagnostic field present in any record (in diagnostic_fields() order).
/// JSON: {"records": [...]}, one object per record with fixed field order.
void write_results(std::ostream& out, const std::vector<TrialRecord>& records, ResultFormat format);
void write_results(const std::vector<TrialRecord>& records, const std::filesystem::path& path, ResultFormat format);

std::vector<TrialRecord> read_results_json(std::istream& in);
std::vector<TrialRecord> read_results_json(const std::filesystem::path& path);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double x);

}  // namespace permapprox
