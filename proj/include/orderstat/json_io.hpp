#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "orderstat/marginal.hpp"
#include "orderstat/model.hpp"
#include "orderstat/montecarlo.hpp"
#include "orderstat/report.hpp"
#include "orderstat/threshold.hpp"

namespace orderstat {

/// {"family": "...", "params": {...}}; families: gaussian, laplace
/// (alias two_sided_exponential), uniform, half_normal_modulus,
/// shifted_exponential, scaled.
Marginal marginal_from_json(const nlohmann::json& j);
nlohmann::json marginal_to_json(const Marginal& m);

/// {"kind": "...", "n": ..., "params": {...}, "weights": [...]};
/// covariance as dense row-major "cov", "diag", or "ar_rho".
VectorModel model_from_json(const nlohmann::json& j);
VectorModel model_from_file(const std::string& path);

nlohmann::json estimate_to_json(const Estimate& e);
nlohmann::json threshold_to_json(const ThresholdResult& r);
nlohmann::json report_to_json(const BoundReport& r);

/// Locale-independent shortest-roundtrip formatting used in all file output.
std::string format_double(double v);

std::string report_csv_header();
std::string report_csv_row(const BoundReport& r);

/// FNV-1a of the canonical config dump; stable across runs and platforms.
std::string model_config_hash(const nlohmann::json& j);

}  // namespace orderstat
