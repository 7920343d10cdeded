#include "orderstat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>

#include "orderstat/json_io.hpp"
#include "orderstat/lemmas.hpp"
#include "orderstat/montecarlo.hpp"
#include "orderstat/threshold.hpp"

namespace orderstat {

namespace {

bool independent_coordinates(const VectorModel& m) {
  switch (m.kind()) {
    case VectorModel::Kind::IndependentProduct:
    case VectorModel::Kind::UniformCube:
    case VectorModel::Kind::Decoupled:
      return true;
    default:
      return m.n() == 1;
  }
}

bool mean_zero_marginals(const VectorModel& m) {
  for (std::size_t i = 0; i < m.n(); ++i)
    if (!m.marginal_of(i).is_mean_zero()) return false;
  return true;
}

BoundReport base_report(const char* id, const std::string& model, long long n,
                        double k, uint64_t seed) {
  BoundReport r;
  r.theorem_id = id;
  r.model = model;
  r.n = n;
  r.k = k;
  r.seed = seed;
  return r;
}

BoundReport not_met(const char* id, const std::string& model, long long n,
                    double k, uint64_t seed, const std::string& why) {
  BoundReport r = base_report(id, model, n, k, seed);
  r.verdict = Verdict::HypothesisNotMet;
  r.note = why;
  r.tolerance_policy = "n/a";
  return r;
}

double c_alpha(double alpha) {
  return 1.0 / (36.0 * (5.0 + 4.0 * alpha) * (1.0 + 2.0 * alpha));
}

// --- report builders shared by the standalone checks and the suite ---------

BoundReport built_prop_upper(const std::string& model, long long n, double k,
                             const Estimate& topk, double t_k, uint64_t seed) {
  BoundReport r = base_report("prop_topk_upper", model, n, k, seed);
  r.lhs = topk.mean;
  r.lhs_stderr = topk.stderr_;
  r.rhs = 2.0 * k * t_k;
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
  r.tolerance_policy = "one-sided, 3 sigma";
  r.verdict = r.lhs <= r.rhs + 3.0 * topk.stderr_ ? Verdict::Pass : Verdict::Fail;
  return r;
}

std::vector<BoundReport> built_negcorr(const std::string& model, long long n,
                                       double k, double alpha,
                                       const Estimate& topk, double t_k,
                                       uint64_t seed) {
  std::vector<BoundReport> out;
  BoundReport lower = base_report("negcorr_topk_lower", model, n, k, seed);
  double c = c_alpha(alpha);
  lower.lhs = topk.mean;
  lower.lhs_stderr = topk.stderr_;
  lower.rhs = c * k * t_k;
  lower.ratio = lower.rhs > 0.0 ? lower.lhs / lower.rhs : 0.0;  // the margin
  {
    std::ostringstream os;
    os << "alpha=" << alpha << " c(alpha)=" << c << " margin=" << lower.ratio;
    lower.note = os.str();
  }
  lower.tolerance_policy = "one-sided, 3 sigma";
  lower.verdict = lower.lhs >= lower.rhs - 3.0 * topk.stderr_ ? Verdict::Pass
                                                              : Verdict::Fail;
  out.push_back(lower);
  out.push_back(built_prop_upper(model, n, k, topk, t_k, seed));
  out.back().theorem_id = "negcorr_topk_upper";
  return out;
}

std::vector<BoundReport> built_logconcave(const std::string& model, long long n,
                                          double k, bool log_concave,
                                          const Estimate& topk, double t_k,
                                          uint64_t seed) {
  std::vector<BoundReport> out;
  BoundReport upper = built_prop_upper(model, n, k, topk, t_k, seed);
  upper.theorem_id = "logconcave_topk_upper";
  out.push_back(upper);

  BoundReport lower = base_report("logconcave_topk_lower", model, n, k, seed);
  lower.lhs = topk.mean;
  lower.lhs_stderr = topk.stderr_;
  lower.rhs = k * t_k;
  lower.ratio = lower.rhs > 0.0 ? lower.lhs / lower.rhs : 0.0;
  const Window w = calibration().topk_logconcave_ratio;
  if (log_concave) {
    lower.tolerance_policy = "calibrated floor " + format_double(w.floor);
    lower.verdict =
        lower.ratio >= w.floor ? Verdict::Pass : Verdict::Fail;
  } else {
    lower.tolerance_policy = "informational (not jointly log-concave)";
    lower.verdict = Verdict::Informational;
  }
  out.push_back(lower);
  return out;
}

std::vector<BoundReport> built_kmax(const std::string& model, long long n,
                                    double k, bool hyp_ok, bool unconditional,
                                    const Estimate& mean_est,
                                    const Estimate& med_est, double tstar_half,
                                    uint64_t seed) {
  std::vector<BoundReport> out;

  // mean >= median/2 holds for any nonnegative statistic; always asserted
  BoundReport chain = base_report("kmax_mean_vs_median", model, n, k, seed);
  chain.lhs = mean_est.mean;
  chain.lhs_stderr = mean_est.stderr_;
  chain.rhs = 0.5 * med_est.mean;
  chain.ratio = chain.rhs > 0.0 ? chain.lhs / chain.rhs : 0.0;
  double sigma = std::sqrt(mean_est.stderr_ * mean_est.stderr_ +
                           0.25 * med_est.stderr_ * med_est.stderr_);
  chain.tolerance_policy = "one-sided, 3 sigma (mean and median CI combined)";
  chain.verdict = chain.lhs >= chain.rhs - 3.0 * sigma ? Verdict::Pass : Verdict::Fail;
  out.push_back(chain);

  BoundReport ratio = base_report("kmax_over_tstar_half", model, n, k, seed);
  ratio.lhs = mean_est.mean;
  ratio.lhs_stderr = mean_est.stderr_;
  ratio.rhs = tstar_half;
  ratio.ratio = tstar_half > 0.0 ? mean_est.mean / tstar_half : 0.0;
  const Window w = calibration().kmax_tstar_half_ratio;
  if (!hyp_ok) {
    ratio.verdict = Verdict::HypothesisNotMet;
    ratio.note = "needs mean-zero log-concave uncorrelated coordinates";
    ratio.tolerance_policy = "n/a";
  } else if (unconditional) {
    ratio.tolerance_policy = "calibrated window [" + format_double(w.floor) +
                             ", " + format_double(w.cap) + "]";
    ratio.verdict = (ratio.ratio >= w.floor && ratio.ratio <= w.cap)
                        ? Verdict::Pass
                        : Verdict::Fail;
  } else {
    // without unconditionality only the lower bound is a theorem
    ratio.tolerance_policy = "calibrated floor " + format_double(w.floor);
    ratio.verdict = ratio.ratio >= w.floor ? Verdict::Pass : Verdict::Fail;
    ratio.note = "cap not asserted (not unconditional)";
  }
  out.push_back(ratio);
  return out;
}

std::vector<BoundReport> built_revkmax(const std::string& model, long long n,
                                       double k, bool hyp_ok,
                                       std::vector<double> sorted_kmax,
                                       const Estimate& mean_est,
                                       double tstar_half, double tstar_gen,
                                       uint64_t seed) {
  std::vector<BoundReport> out;
  const Calibration& cal = calibration();

  BoundReport mult = base_report("kmax_tail_multiplier", model, n, k, seed);
  if (!hyp_ok) {
    mult = not_met("kmax_tail_multiplier", model, n, k, seed,
                   "needs mean-zero log-concave uncorrelated coordinates");
    out.push_back(mult);
  } else {
    const std::size_t m = sorted_kmax.size();
    double chat = -1.0;
    for (int j = 0; j <= 40; ++j) {
      double u = 0.25 * j;
      auto it = std::lower_bound(sorted_kmax.begin(), sorted_kmax.end(),
                                 u * tstar_half);
      double tail = static_cast<double>(sorted_kmax.end() - it) / m;
      if (tail <= 1.0 - cal.kmax_multiplier_prob) {
        chat = u;
        break;
      }
    }
    mult.lhs = chat;
    mult.rhs = cal.kmax_multiplier.cap;
    mult.ratio = chat;
    std::ostringstream os;
    os << "smallest C with P(kmax >= C t*(k-1/2)) <= "
       << format_double(1.0 - cal.kmax_multiplier_prob);
    mult.note = os.str();
    mult.tolerance_policy = "calibrated cap " + format_double(cal.kmax_multiplier.cap);
    mult.verdict = (chat >= 0.0 && chat <= cal.kmax_multiplier.cap)
                       ? Verdict::Pass
                       : Verdict::Fail;
    out.push_back(mult);
  }

  BoundReport gen = base_report("kmax_over_tstar_gen", model, n, k, seed);
  if (!hyp_ok) {
    gen = not_met("kmax_over_tstar_gen", model, n, k, seed,
                  "needs mean-zero log-concave uncorrelated coordinates");
  } else {
    gen.lhs = mean_est.mean;
    gen.lhs_stderr = mean_est.stderr_;
    gen.rhs = tstar_gen;
    gen.ratio = tstar_gen > 0.0 ? mean_est.mean / tstar_gen : 0.0;
    const Window w = cal.kmax_gen_level_ratio;
    gen.tolerance_policy = "calibrated window [" + format_double(w.floor) +
                           ", " + format_double(w.cap) + "]";
    gen.verdict = (gen.ratio >= w.floor && gen.ratio <= w.cap) ? Verdict::Pass
                                                               : Verdict::Fail;
    gen.note = "level k - k^(5/6)/2";
  }
  out.push_back(gen);
  return out;
}

std::vector<BoundReport> built_cor16(const std::string& model, long long n,
                                     double k, bool unconditional,
                                     const Estimate& kmax_est,
                                     const Estimate& kmin_est, double t_k,
                                     double tstar_k, uint64_t seed) {
  std::vector<BoundReport> out;
  const Calibration& cal = calibration();

  BoundReport a = base_report("iso_kmax_over_tstar", model, n, k, seed);
  a.lhs = kmax_est.mean;
  a.lhs_stderr = kmax_est.stderr_;
  a.rhs = tstar_k;
  a.ratio = tstar_k > 0.0 ? a.lhs / tstar_k : 0.0;
  a.tolerance_policy = "calibrated window [" +
                       format_double(cal.iso_kmax_over_tstar.floor) + ", " +
                       format_double(cal.iso_kmax_over_tstar.cap) + "]";
  a.verdict = (a.ratio >= cal.iso_kmax_over_tstar.floor &&
               a.ratio <= cal.iso_kmax_over_tstar.cap)
                  ? Verdict::Pass
                  : Verdict::Fail;
  out.push_back(a);

  BoundReport b = base_report("iso_kmax_over_t", model, n, k, seed);
  b.lhs = kmax_est.mean;
  b.lhs_stderr = kmax_est.stderr_;
  b.rhs = t_k;
  b.ratio = t_k > 0.0 ? b.lhs / t_k : 0.0;
  b.tolerance_policy = "calibrated window [" +
                       format_double(cal.iso_kmax_over_t.floor) + ", " +
                       format_double(cal.iso_kmax_over_t.cap) + "]";
  b.verdict = (b.ratio >= cal.iso_kmax_over_t.floor &&
               b.ratio <= cal.iso_kmax_over_t.cap)
                  ? Verdict::Pass
                  : Verdict::Fail;
  out.push_back(b);

  BoundReport c = base_report("iso_kmin_scaled", model, n, k, seed);
  double scaled = kmin_est.mean * static_cast<double>(n) / k;
  c.lhs = scaled;
  c.lhs_stderr = kmin_est.stderr_ * static_cast<double>(n) / k;
  c.ratio = scaled;
  if (unconditional) {
    c.rhs = cal.iso_kmin_unconditional.cap;
    c.tolerance_policy = "calibrated window [" +
                         format_double(cal.iso_kmin_unconditional.floor) +
                         ", " + format_double(cal.iso_kmin_unconditional.cap) +
                         "]";
    c.verdict = (scaled >= cal.iso_kmin_unconditional.floor &&
                 scaled <= cal.iso_kmin_unconditional.cap)
                    ? Verdict::Pass
                    : Verdict::Fail;
  } else {
    // general isotropic case allows an additive n^{-1/6} term
    double cap = cal.iso_kmin_gen_cap *
                 (1.0 + std::pow(static_cast<double>(n), 5.0 / 6.0) / k);
    c.rhs = cap;
    c.tolerance_policy = "floor " + format_double(cal.iso_kmin_floor) +
                         ", cap C(1 + n^(5/6)/k)";
    c.verdict = (scaled >= cal.iso_kmin_floor && scaled <= cap)
                    ? Verdict::Pass
                    : Verdict::Fail;
    c.note = "tight k/n window not asserted without unconditionality";
  }
  out.push_back(c);
  return out;
}

std::vector<BoundReport> built_weakstrong(
    const std::string& model, long long n, const Estimate& sup1,
    const std::vector<std::tuple<double, Estimate, double>>& per_p,
    double beta, uint64_t seed) {
  std::vector<BoundReport> out;
  const double cap = calibration().weak_strong_cap;
  for (const auto& [p, est, max_moment] : per_p) {
    BoundReport r = base_report("weak_strong_moments", model, n, p, seed);
    if (est.stderr_ > 0.05 * est.mean) {
      r.verdict = Verdict::HypothesisNotMet;
      r.note = "refused: p-th moment relative stderr above 5%";
      r.tolerance_policy = "n/a";
      out.push_back(r);
      continue;
    }
    double strong = std::pow(est.mean, 1.0 / p);
    double weak = sup1.mean + max_moment;
    r.lhs = strong;
    r.lhs_stderr = est.stderr_ / p * std::pow(est.mean, 1.0 / p - 1.0);
    r.rhs = weak;
    r.ratio = weak > 0.0 ? strong / weak : 0.0;  // the empirical C-hat
    std::ostringstream os;
    os << "beta=" << format_double(beta) << " p=" << p;
    r.note = os.str();
    r.tolerance_policy = "calibrated cap " + format_double(cap);
    r.verdict = r.ratio <= cap ? Verdict::Pass : Verdict::Fail;
    out.push_back(r);
  }
  return out;
}

double beta_moment_doubling(const std::vector<Marginal>& marginals) {
  double beta = 0.0;
  for (const auto& m : marginals) {
    if (m.is_degenerate()) continue;
    for (double p = 2.0; p <= 8.0; p += 1.0)
      beta = std::max(beta, m.moment_p(2.0 * p) / m.moment_p(p));
  }
  return beta;
}

std::size_t effective_count(const VectorModel& model, std::size_t samples) {
  // dense-covariance sampling is O(n^2) per draw; scale the budget down
  if (model.kind() == VectorModel::Kind::GaussianCovariance && model.n() >= 512)
    return std::max<std::size_t>(20000, samples / 10);
  return samples;
}

bool suite_enabled(const std::string& suite, const char* name) {
  return suite == "all" || suite == name;
}

}  // namespace

std::vector<std::size_t> default_k_grid(std::size_t n) {
  std::vector<std::size_t> ks = {1, 4,
                                 static_cast<std::size_t>(std::ceil(std::sqrt(
                                     static_cast<double>(n)))),
                                 n / 4, n / 2};
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  ks.erase(std::remove_if(ks.begin(), ks.end(),
                          [n](std::size_t k) { return k < 1 || k > n; }),
           ks.end());
  return ks;
}

std::vector<GridModel> default_grid(const std::vector<std::size_t>& ns) {
  std::vector<GridModel> grid;
  for (std::size_t n : ns) {
    grid.push_back({"gaussian", VectorModel::independent_product(
                                    Marginal::gaussian(1.0), n)});
    grid.push_back({"laplace", VectorModel::independent_product(
                                   Marginal::laplace(1.0), n)});
    grid.push_back({"uniform_sqrt3", VectorModel::independent_product(
                                         Marginal::uniform(std::sqrt(3.0)), n)});
    grid.push_back({"uniform_cube", VectorModel::uniform_cube(n, std::sqrt(3.0))});
    grid.push_back({"example1", VectorModel::sign_shared_gaussian(n)});
    grid.push_back({"example2", VectorModel::fully_correlated_gaussian(n)});
    std::vector<double> cov(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        cov[i * n + j] = std::pow(0.5, std::abs(static_cast<double>(i) -
                                                static_cast<double>(j)));
    grid.push_back({"gaussian_ar05", VectorModel::gaussian_covariance(n, std::move(cov))});
  }
  return grid;
}

// --- standalone checks ------------------------------------------------------

BoundReport check_prop_upper(const VectorModel& model, std::size_t k,
                             std::size_t count, uint64_t seed, int threads) {
  Estimate topk = estimate_mean(model, StatSpec::topk_sum(k), count, seed, threads);
  double t_k = t_threshold(model.marginals(), static_cast<double>(k)).value;
  return built_prop_upper(model.describe(), static_cast<long long>(model.n()),
                          static_cast<double>(k), topk, t_k, seed);
}

std::vector<BoundReport> check_thm_negcorr(const VectorModel& model, std::size_t k,
                                           double alpha, std::size_t count,
                                           uint64_t seed, int threads) {
  const std::string name = model.describe();
  const auto n = static_cast<long long>(model.n());
  bool verified = independent_coordinates(model);
  if (!verified && model.n() >= 2) {
    // empirical check of the pairwise tail-product condition
    std::vector<double> grid;
    Marginal m0 = model.marginal_of(0);
    for (double q : {0.5, 0.75, 0.9}) grid.push_back(m0.quantile(0.5 + 0.5 * q));
    try {
      NegCorrEstimate est = estimate_negcorr_alpha(
          model, grid, std::min<std::size_t>(count, 100000), seed + 1);
      verified = est.alpha <= alpha + 3.0 * est.stderr_;
    } catch (const EstimationError&) {
      verified = false;
    }
  }
  if (!verified) {
    return {not_met("negcorr_topk_lower", name, n, static_cast<double>(k), seed,
                    "condition (1.2) not verifiable for supplied alpha")};
  }
  Estimate topk = estimate_mean(model, StatSpec::topk_sum(k), count, seed, threads);
  double t_k = t_threshold(model.marginals(), static_cast<double>(k)).value;
  return built_negcorr(name, n, static_cast<double>(k), alpha, topk, t_k, seed);
}

std::vector<BoundReport> check_thm_logconcave(const VectorModel& model,
                                              std::size_t k, std::size_t count,
                                              uint64_t seed, int threads) {
  const std::string name = model.describe();
  const auto n = static_cast<long long>(model.n());
  if (!model.has_uncorrelated_coordinates()) {
    return {not_met("logconcave_topk_lower", name, n, static_cast<double>(k),
                    seed, "coordinates are correlated")};
  }
  Estimate topk = estimate_mean(model, StatSpec::topk_sum(k), count, seed, threads);
  double t_k = t_threshold(model.marginals(), static_cast<double>(k)).value;
  return built_logconcave(name, n, static_cast<double>(k),
                          model.is_log_concave(), topk, t_k, seed);
}

std::vector<BoundReport> check_thm_kmax(const VectorModel& model, std::size_t k,
                                        std::size_t count, uint64_t seed,
                                        int threads) {
  if (k < 1 || k > model.n())
    throw std::domain_error("check_thm_kmax: k out of range");
  auto values = sample_stat_values(model, StatSpec::kmax(k), count, seed, 0, threads);
  Estimate mean_est = estimate_from_values(values, seed, StatSpec::kmax(k).id());
  Estimate med_est = median_from_values(values, seed, StatSpec::kmax(k).id());
  double tstar_half =
      tstar_threshold(model.marginals(), static_cast<double>(k) - 0.5).value;
  bool hyp = mean_zero_marginals(model) && model.is_log_concave() &&
             model.has_uncorrelated_coordinates();
  return built_kmax(model.describe(), static_cast<long long>(model.n()),
                    static_cast<double>(k), hyp, model.is_unconditional(),
                    mean_est, med_est, tstar_half, seed);
}

std::vector<BoundReport> check_thm_revkmax(const VectorModel& model, std::size_t k,
                                           std::size_t count, uint64_t seed,
                                           int threads) {
  const double kd = static_cast<double>(k);
  double gen_level = kd - 0.5 * std::pow(kd, 5.0 / 6.0);
  if (!(gen_level > 0.0))
    throw std::domain_error("check_thm_revkmax: level k - k^(5/6)/2 not positive");
  auto values = sample_stat_values(model, StatSpec::kmax(k), count, seed, 0, threads);
  Estimate mean_est = estimate_from_values(values, seed, StatSpec::kmax(k).id());
  double tstar_half = tstar_threshold(model.marginals(), kd - 0.5).value;
  double tstar_gen = tstar_threshold(model.marginals(), gen_level).value;
  std::sort(values.begin(), values.end());
  bool hyp = mean_zero_marginals(model) && model.is_log_concave() &&
             model.has_uncorrelated_coordinates();
  return built_revkmax(model.describe(), static_cast<long long>(model.n()), kd,
                       hyp, std::move(values), mean_est, tstar_half, tstar_gen,
                       seed);
}

std::vector<BoundReport> check_cor_isotropic(const VectorModel& model,
                                             const std::vector<std::size_t>& k_grid,
                                             std::size_t count, uint64_t seed,
                                             int threads) {
  const std::string name = model.describe();
  const auto n = static_cast<long long>(model.n());
  if (!model.is_isotropic() || !model.is_log_concave()) {
    std::vector<BoundReport> out;
    for (std::size_t k : k_grid)
      out.push_back(not_met("iso_kmax_over_tstar", name, n,
                            static_cast<double>(k), seed,
                            "model not isotropic log-concave"));
    return out;
  }
  std::vector<StatSpec> stats;
  for (std::size_t k : k_grid) {
    stats.push_back(StatSpec::kmax(k));
    stats.push_back(StatSpec::kmin(k));
  }
  auto values = sample_stat_values_multi(model, stats, count, seed, 0, threads);
  auto marginals = model.marginals();
  std::vector<BoundReport> out;
  for (std::size_t idx = 0; idx < k_grid.size(); ++idx) {
    std::size_t k = k_grid[idx];
    if (2 * k > model.n()) continue;  // corollary needs k <= n/2
    Estimate kmax_est =
        estimate_from_values(values[2 * idx], seed, stats[2 * idx].id());
    Estimate kmin_est =
        estimate_from_values(values[2 * idx + 1], seed, stats[2 * idx + 1].id());
    double t_k = t_threshold(marginals, static_cast<double>(k)).value;
    double tstar_k = tstar_threshold(marginals, static_cast<double>(k)).value;
    auto reports = built_cor16(name, n, static_cast<double>(k),
                               model.is_unconditional(), kmax_est, kmin_est,
                               t_k, tstar_k, seed);
    out.insert(out.end(), reports.begin(), reports.end());
  }
  return out;
}

std::vector<BoundReport> check_weak_strong(const VectorModel& model,
                                           const std::vector<double>& p_grid,
                                           std::size_t count, uint64_t seed,
                                           int threads) {
  const std::string name = model.describe();
  const auto n = static_cast<long long>(model.n());
  if (!independent_coordinates(model) || !mean_zero_marginals(model)) {
    std::vector<BoundReport> out;
    for (double p : p_grid)
      out.push_back(not_met("weak_strong_moments", name, n, p, seed,
                            "needs centered coordinates with condition (1.2)"));
    return out;
  }
  std::vector<StatSpec> stats = {StatSpec::sup_weighted(1.0)};
  for (double p : p_grid) stats.push_back(StatSpec::sup_weighted(p));
  auto values = sample_stat_values_multi(model, stats, count, seed, 0, threads);
  Estimate sup1 = estimate_from_values(values[0], seed, stats[0].id());

  auto marginals = model.marginals();
  std::vector<std::tuple<double, Estimate, double>> per_p;
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    double p = p_grid[i];
    Estimate est = estimate_from_values(values[i + 1], seed, stats[i + 1].id());
    double max_moment = 0.0;
    for (const auto& m : marginals)
      if (!m.is_degenerate()) max_moment = std::max(max_moment, m.moment_p(p));
    per_p.emplace_back(p, est, max_moment);
  }
  return built_weakstrong(name, n, sup1, per_p, beta_moment_doubling(marginals),
                          seed);
}

// --- the suite --------------------------------------------------------------

SuiteResult run_suite(const SuiteConfig& cfg) {
  SuiteResult result;
  const auto& grid = cfg.grid;

  if (suite_enabled(cfg.suite, "lemmas")) {
    auto lemma_reports = run_lemma_grid();
    for (auto& r : lemma_reports) {
      r.seed = cfg.seed;
      result.reports.push_back(std::move(r));
    }
  }

  for (const auto& gm : grid) {
    const VectorModel& model = gm.model;
    const std::size_t n = model.n();
    const auto ks = default_k_grid(n);
    const std::size_t count = effective_count(model, cfg.samples);

    const bool want_prop = suite_enabled(cfg.suite, "prop11");
    const bool want_12 = suite_enabled(cfg.suite, "thm12");
    const bool want_13 = suite_enabled(cfg.suite, "thm13");
    const bool want_14 = suite_enabled(cfg.suite, "thm14");
    const bool want_15 = suite_enabled(cfg.suite, "thm15");
    const bool want_16 = suite_enabled(cfg.suite, "cor16");
    const bool want_ws = suite_enabled(cfg.suite, "weakstrong");
    if (!(want_prop || want_12 || want_13 || want_14 || want_15 || want_16 ||
          want_ws))
      continue;

    // one shared set of draws per model; every statistic is extracted from
    // the same sorted moduli
    std::vector<StatSpec> stats;
    for (std::size_t k : ks) {
      stats.push_back(StatSpec::topk_sum(k));
      stats.push_back(StatSpec::kmax(k));
      stats.push_back(StatSpec::kmin(k));
    }
    const std::size_t ws_base = stats.size();
    const std::vector<double> p_grid = {2.0, 4.0};
    if (want_ws) {
      stats.push_back(StatSpec::sup_weighted(1.0));
      for (double p : p_grid) stats.push_back(StatSpec::sup_weighted(p));
    }
    auto values =
        sample_stat_values_multi(model, stats, count, cfg.seed, 0, cfg.threads);
    const auto marginals = model.marginals();

    const bool independent = independent_coordinates(model);
    const bool uncorrelated = model.has_uncorrelated_coordinates();
    const bool logconc = model.is_log_concave();
    const bool uncond = model.is_unconditional();
    const bool mean_zero = mean_zero_marginals(model);
    const bool kmax_hyp = mean_zero && logconc && uncorrelated;
    const bool iso = model.is_isotropic() && logconc;

    for (std::size_t ki = 0; ki < ks.size(); ++ki) {
      const std::size_t k = ks[ki];
      const double kd = static_cast<double>(k);
      const auto& topk_vals = values[3 * ki];
      const auto& kmax_vals = values[3 * ki + 1];
      const auto& kmin_vals = values[3 * ki + 2];

      Estimate topk_est = estimate_from_values(topk_vals, cfg.seed,
                                               StatSpec::topk_sum(k).id());
      double t_k = t_threshold(marginals, kd).value;

      if (want_prop)
        result.reports.push_back(
            built_prop_upper(gm.name, n, kd, topk_est, t_k, cfg.seed));

      if (want_12) {
        if (independent) {
          auto reps =
              built_negcorr(gm.name, n, kd, 1.0, topk_est, t_k, cfg.seed);
          result.reports.insert(result.reports.end(), reps.begin(), reps.end());
        } else {
          result.reports.push_back(
              not_met("negcorr_topk_lower", gm.name, n, kd, cfg.seed,
                      "condition (1.2) not analytically available"));
        }
      }

      if (want_13) {
        if (uncorrelated) {
          auto reps = built_logconcave(gm.name, n, kd, logconc, topk_est, t_k,
                                       cfg.seed);
          result.reports.insert(result.reports.end(), reps.begin(), reps.end());
        } else {
          result.reports.push_back(not_met("logconcave_topk_lower", gm.name, n,
                                           kd, cfg.seed,
                                           "coordinates are correlated"));
        }
      }

      if (want_14) {
        Estimate mean_est =
            estimate_from_values(kmax_vals, cfg.seed, StatSpec::kmax(k).id());
        Estimate med_est =
            median_from_values(kmax_vals, cfg.seed, StatSpec::kmax(k).id());
        double tstar_half = tstar_threshold(marginals, kd - 0.5).value;
        auto reps = built_kmax(gm.name, n, kd, kmax_hyp, uncond, mean_est,
                               med_est, tstar_half, cfg.seed);
        result.reports.insert(result.reports.end(), reps.begin(), reps.end());
      }

      if (want_15) {
        Estimate mean_est =
            estimate_from_values(kmax_vals, cfg.seed, StatSpec::kmax(k).id());
        double tstar_half = tstar_threshold(marginals, kd - 0.5).value;
        double gen_level = kd - 0.5 * std::pow(kd, 5.0 / 6.0);
        double tstar_gen = tstar_threshold(marginals, gen_level).value;
        std::vector<double> sorted_kmax = kmax_vals;
        std::sort(sorted_kmax.begin(), sorted_kmax.end());
        auto reps =
            built_revkmax(gm.name, n, kd, kmax_hyp, std::move(sorted_kmax),
                          mean_est, tstar_half, tstar_gen, cfg.seed);
        result.reports.insert(result.reports.end(), reps.begin(), reps.end());
      }

      if (want_16) {
        if (iso && 2 * k <= n) {
          Estimate kmax_est =
              estimate_from_values(kmax_vals, cfg.seed, StatSpec::kmax(k).id());
          Estimate kmin_est =
              estimate_from_values(kmin_vals, cfg.seed, StatSpec::kmin(k).id());
          double tstar_k = tstar_threshold(marginals, kd).value;
          auto reps = built_cor16(gm.name, n, kd, uncond, kmax_est, kmin_est,
                                  t_k, tstar_k, cfg.seed);
          result.reports.insert(result.reports.end(), reps.begin(), reps.end());
        } else {
          result.reports.push_back(not_met("iso_kmax_over_tstar", gm.name, n,
                                           kd, cfg.seed,
                                           "model not isotropic log-concave"));
        }
      }
    }

    if (want_ws) {
      if (independent && mean_zero) {
        Estimate sup1 = estimate_from_values(values[ws_base], cfg.seed,
                                             stats[ws_base].id());
        std::vector<std::tuple<double, Estimate, double>> per_p;
        for (std::size_t i = 0; i < p_grid.size(); ++i) {
          Estimate est = estimate_from_values(values[ws_base + 1 + i], cfg.seed,
                                              stats[ws_base + 1 + i].id());
          double max_moment = 0.0;
          for (const auto& m : marginals)
            if (!m.is_degenerate())
              max_moment = std::max(max_moment, m.moment_p(p_grid[i]));
          per_p.emplace_back(p_grid[i], est, max_moment);
        }
        auto reps = built_weakstrong(gm.name, n, sup1, per_p,
                                     beta_moment_doubling(marginals), cfg.seed);
        result.reports.insert(result.reports.end(), reps.begin(), reps.end());
      } else {
        result.reports.push_back(
            not_met("weak_strong_moments", gm.name, n, 0.0, cfg.seed,
                    "needs centered coordinates with condition (1.2)"));
      }
    }
  }

  std::stable_sort(result.reports.begin(), result.reports.end(),
                   [](const BoundReport& a, const BoundReport& b) {
                     return std::tie(a.theorem_id, a.model, a.n, a.k) <
                            std::tie(b.theorem_id, b.model, b.n, b.k);
                   });
  return result;
}

void write_reports_csv(const std::vector<BoundReport>& reports,
                       const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << report_csv_header() << "\n";
  for (const auto& r : reports) out << report_csv_row(r) << "\n";
}

}  // namespace orderstat
