#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orderstat/calibration.hpp"
#include "orderstat/model.hpp"
#include "orderstat/report.hpp"

namespace orderstat {

struct GridModel {
  std::string name;
  VectorModel model;
};

struct SuiteConfig {
  std::string suite = "all";  // all|prop11|thm12|thm13|thm14|thm15|cor16|weakstrong|lemmas
  std::vector<GridModel> grid;
  std::size_t samples = 200000;
  uint64_t seed = 7;
  int threads = 0;
};

/// The default model grid: each family at each n.
std::vector<GridModel> default_grid(const std::vector<std::size_t>& ns = {64, 256, 1024});
/// k in {1, 4, ceil(sqrt(n)), n/4, n/2}, deduplicated.
std::vector<std::size_t> default_k_grid(std::size_t n);

struct SuiteResult {
  std::vector<BoundReport> reports;
  bool any_fail() const {
    for (const auto& r : reports)
      if (r.failed()) return true;
    return false;
  }
};

/// Executes the configured suite. Informational ratios never fail the run;
/// reports come back in deterministic (theorem, model, k) order.
SuiteResult run_suite(const SuiteConfig& cfg);

/// Write reports as CSV (stable %.17g formatting, '.' decimal separator).
void write_reports_csv(const std::vector<BoundReport>& reports,
                       const std::string& path);

// Individual theorem checks. Each declares its hypotheses and returns
// hypothesis-not-met instead of silently checking a vacuous claim.
// `count` below each check's minimum is rejected by the estimators.

/// E max_{|I|=k} sum |X_i| <= 2 k t(k,X); holds for any X with finite means.
BoundReport check_prop_upper(const VectorModel& model, std::size_t k,
                             std::size_t count, uint64_t seed, int threads = 0);

/// Two-sided bound with the explicit constant c(alpha) =
/// 1/(36(5+4a)(1+2a)) under the negative-correlation condition.
std::vector<BoundReport> check_thm_negcorr(const VectorModel& model, std::size_t k,
                                           double alpha, std::size_t count,
                                           uint64_t seed, int threads = 0);

/// Two-sided bound for log-concave vectors with uncorrelated coordinates:
/// upper asserted, lower ratio regression-tested against the calibrated
/// floor (informational when the model is not jointly log-concave).
std::vector<BoundReport> check_thm_logconcave(const VectorModel& model,
                                              std::size_t k, std::size_t count,
                                              uint64_t seed, int threads = 0);

/// k-max bounds through t*(k-1/2): the mean >= half-median chain plus the
/// calibrated ratio window (cap asserted only for unconditional models).
std::vector<BoundReport> check_thm_kmax(const VectorModel& model, std::size_t k,
                                        std::size_t count, uint64_t seed,
                                        int threads = 0);

/// General log-concave upper bounds: the smallest empirical multiplier
/// C-hat with P(kmax >= C t*(k-1/2)) <= 1-c, and E kmax / t*(k - k^{5/6}/2).
std::vector<BoundReport> check_thm_revkmax(const VectorModel& model, std::size_t k,
                                           std::size_t count, uint64_t seed,
                                           int threads = 0);

/// Isotropic consequences: E kmax ~ t*(k) ~ t(k) for k <= n/2 and the
/// k-min expectation scaled by n/k.
std::vector<BoundReport> check_cor_isotropic(const VectorModel& model,
                                             const std::vector<std::size_t>& k_grid,
                                             std::size_t count, uint64_t seed,
                                             int threads = 0);

/// Weak vs strong moments of max |a_i X_i|: smallest empirical C-hat with
/// (E max^p)^{1/p} <= C (E max + max_i ||a_i X_i||_p), p over p_grid.
std::vector<BoundReport> check_weak_strong(const VectorModel& model,
                                           const std::vector<double>& p_grid,
                                           std::size_t count, uint64_t seed,
                                           int threads = 0);

}  // namespace orderstat
