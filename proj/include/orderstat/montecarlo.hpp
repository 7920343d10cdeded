#pragma once

#include <span>
#include <string>
#include <vector>

#include "orderstat/model.hpp"
#include "orderstat/report.hpp"

namespace orderstat {

/// k-th largest of |x_1|,...,|x_n|; selection based, O(n) average.
/// k-min is (n-k+1)-max.
double kth_max_abs(std::span<const double> x, std::size_t k);

/// Sum of the k largest |x_i|.
double topk_abs_sum(std::span<const double> x, std::size_t k);

/// Per-sample statistic of a model draw.
struct StatSpec {
  enum class Kind { KMax, KMin, TopkSum, SupWeightedPow };
  Kind kind = Kind::KMax;
  std::size_t k = 1;
  double power = 1.0;  // SupWeightedPow: max_i |x_i|^power (weights live in the model)

  static StatSpec kmax(std::size_t k) { return {Kind::KMax, k, 1.0}; }
  static StatSpec kmin(std::size_t k) { return {Kind::KMin, k, 1.0}; }
  static StatSpec topk_sum(std::size_t k) { return {Kind::TopkSum, k, 1.0}; }
  static StatSpec sup_weighted(double p) { return {Kind::SupWeightedPow, 1, p}; }

  double evaluate(std::span<const double> x) const;
  std::string id() const;
  /// Parse "kmax:4", "kmin:2", "topk:16", "supw:3.5".
  static StatSpec parse(const std::string& text);
};

/// Mean estimate over `count` independent draws. Accumulation is blockwise
/// (fixed block size, fixed combine order), so results are bit-identical for
/// any thread count. Counts below 1000 are refused: the CI would be
/// meaningless.
Estimate estimate_mean(const VectorModel& model, const StatSpec& stat,
                       std::size_t count, uint64_t seed, int threads = 0);

/// Empirical median over count*replications draws (replication r uses
/// stream_id r). The 95% CI comes from exact binomial order-statistic
/// bracketing of the pooled sample; stderr_ is the symmetrized CI half-width
/// divided by 1.96.
Estimate estimate_median(const VectorModel& model, const StatSpec& stat,
                         std::size_t count, std::size_t replications,
                         uint64_t seed, int threads = 0);

/// P(stat >= u) with a Wilson 95% interval in ci95.
Estimate tail_probability(const VectorModel& model, const StatSpec& stat,
                          double u, std::size_t count, uint64_t seed,
                          int threads = 0);

/// All per-sample statistic values, in sample order (deterministic).
std::vector<double> sample_stat_values(const VectorModel& model,
                                       const StatSpec& stat, std::size_t count,
                                       uint64_t seed, uint64_t stream_id = 0,
                                       int threads = 0);

/// Evaluates several statistics over one shared set of draws (sorts the
/// moduli once per sample). values[s][i] is bit-identical to the
/// single-stat path for the same (seed, stream_id).
std::vector<std::vector<double>> sample_stat_values_multi(
    const VectorModel& model, const std::vector<StatSpec>& stats,
    std::size_t count, uint64_t seed, uint64_t stream_id = 0, int threads = 0);

/// Mean/stderr from precomputed per-sample values, using the same blockwise
/// accumulation (and therefore the same bits) as estimate_mean.
Estimate estimate_from_values(std::span<const double> values, uint64_t seed,
                              const std::string& stat_id);

/// Median with binomial order-statistic CI from precomputed values.
Estimate median_from_values(std::span<const double> values, uint64_t seed,
                            const std::string& stat_id);

/// Layer-cake identities for the top-k sum:
///  (a) per sample, topk = integral of min(k, N(s)) ds, exact step integral;
///  (b) E sum |X_i| 1{|X_i|>=t} = t E N(t) + integral_t E N(s) ds, evaluated
///      as two estimators sharing the same draws.
std::vector<BoundReport> byparts_identity_check(const VectorModel& model,
                                                std::size_t k, double t,
                                                std::size_t count, uint64_t seed);

/// Exact binomial order-statistic CI for the median of a sorted sample.
std::pair<double, double> median_ci95(std::span<const double> sorted);

/// 95% Wilson interval for a binomial proportion.
std::pair<double, double> wilson_ci95(double phat, std::size_t count);

}  // namespace orderstat
