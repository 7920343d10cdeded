#include "orderstat/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace orderstat {

namespace {

double max_scale(const std::vector<Marginal>& marginals) {
  double s = 0.0;
  for (const auto& m : marginals) s = std::max(s, m.scale());
  return s;
}

/// inf{ t>0 : G(t) <= level } for nonincreasing G; assumes G(t) -> 0 as
/// t -> infinity. Returns 0 (degenerate) when the condition holds for
/// arbitrarily small t.
ThresholdResult solve_monotone(const std::function<double(double)>& g,
                               double level, double scale) {
  ThresholdResult r;
  if (scale <= 0.0) {  // all marginals degenerate point masses
    r.degenerate = true;
    r.residual = g(0.0) - level;
    return r;
  }

  double lo = 1e-12 * scale;
  int iters = 0;
  // make sure lo is strictly inside the region where the condition fails
  while (g(lo) <= level) {
    lo /= 16.0;
    ++iters;
    if (lo < 1e-280 * scale) {
      r.degenerate = true;
      r.iterations = iters;
      r.residual = g(lo) - level;
      return r;
    }
  }
  double hi = scale;
  while (g(hi) > level) {
    hi *= 2.0;
    ++iters;
    if (hi > 1e280) throw std::domain_error("threshold: no finite bracket");
  }

  r.bracket_lo = lo;
  r.bracket_hi = hi;
  const double tol = 1e-10 * scale;
  while (hi - lo > tol && iters < 400) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) <= level)
      hi = mid;
    else
      lo = mid;
    ++iters;
  }
  r.value = hi;  // leftmost point where the condition holds, up to tol
  r.iterations = iters;
  r.residual = g(hi) - level;
  return r;
}

}  // namespace

ThresholdResult t_threshold(const std::vector<Marginal>& marginals, double level) {
  if (marginals.empty()) throw std::domain_error("t_threshold: no marginals");
  if (!(level > 0.0)) throw std::domain_error("t_threshold: level must be positive");
  auto g = [&](double t) {
    if (t <= 0.0) return std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (const auto& m : marginals) sum += m.truncated_abs_mean(t);
    return sum / t;
  };
  return solve_monotone(g, level, max_scale(marginals));
}

ThresholdResult tstar_threshold(const std::vector<Marginal>& marginals, double level) {
  if (marginals.empty()) throw std::domain_error("tstar_threshold: no marginals");
  if (!(level > 0.0)) throw std::domain_error("tstar_threshold: level must be positive");
  const double n = static_cast<double>(marginals.size());
  if (level >= n) {
    // definition extension: the survival sum is <= n <= level for all t >= 0
    ThresholdResult r;
    r.degenerate = true;
    double s0 = 0.0;
    for (const auto& m : marginals) s0 += m.survival_abs(0.0);
    r.residual = s0 - level;
    return r;
  }
  auto g = [&](double t) {
    double sum = 0.0;
    for (const auto& m : marginals) sum += m.survival_abs(std::max(t, 0.0));
    return sum;
  };
  return solve_monotone(g, level, max_scale(marginals));
}

double topk_mean_upper_bound(const std::vector<Marginal>& marginals, double k) {
  return 2.0 * k * t_threshold(marginals, k).value;
}

double topk_marginal_mean(const std::vector<Marginal>& marginals, double k) {
  std::vector<double> means;
  means.reserve(marginals.size());
  for (const auto& m : marginals) means.push_back(m.abs_mean());
  std::sort(means.begin(), means.end(), std::greater<>());
  double sum = 0.0;
  auto whole = static_cast<std::size_t>(std::min<double>(std::floor(k), means.size()));
  for (std::size_t i = 0; i < whole; ++i) sum += means[i];
  if (whole < means.size()) sum += (k - static_cast<double>(whole)) * means[whole];
  return sum;
}

BoundReport sandwich_check(const std::vector<Marginal>& marginals, double k) {
  BoundReport rep;
  rep.theorem_id = "t_vs_tstar_sandwich";
  rep.k = k;
  rep.n = static_cast<long long>(marginals.size());
  bool symmetric = std::all_of(marginals.begin(), marginals.end(),
                               [](const Marginal& m) { return m.is_symmetric(); });

  double t = t_threshold(marginals, k).value;
  double tstar = tstar_threshold(marginals, k).value;  // k = n gives t* = 0
  double mk = topk_marginal_mean(marginals, k) / k;
  double lo = (tstar + mk) / 3.0;
  double hi = 4.0 * (tstar + mk);

  rep.lhs = t;
  rep.rhs = hi;
  rep.ratio = (tstar + mk) > 0.0 ? t / (tstar + mk) : 0.0;
  rep.tolerance_policy = "analytic, slack 1e-9";
  const double tol = 1e-9 * std::max(1.0, hi);
  bool ok = t >= lo - tol && t <= hi + tol;
  rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
  std::ostringstream os;
  os << "t=" << t << " in [" << lo << "," << hi << "]"
     << " (t*=" << tstar << ", M/k=" << mk << ")";
  if (!symmetric) {
    os << "; warning: asymmetric marginal, lemma hypothesis not met";
    if (ok) rep.verdict = Verdict::Informational;
  }
  rep.note = os.str();
  return rep;
}

std::vector<BoundReport> isotropic_asymptotics_check(
    const std::vector<Marginal>& marginals, const std::vector<double>& p_grid,
    const std::vector<double>& k_grid) {
  std::vector<BoundReport> out;
  const double n = static_cast<double>(marginals.size());

  for (double p : p_grid) {
    if (!(p >= n / 4.0 && p < n)) continue;
    BoundReport rep;
    rep.theorem_id = "tstar_bulk_asymptotics";
    rep.n = static_cast<long long>(n);
    rep.k = p;
    double tstar = tstar_threshold(marginals, p).value;
    rep.lhs = tstar;
    rep.rhs = (n - p) / n;
    rep.ratio = tstar * n / (n - p);
    rep.tolerance_policy = "ratio window [0.05, 20]";
    rep.verdict = (rep.ratio >= 0.05 && rep.ratio <= 20.0) ? Verdict::Pass
                                                           : Verdict::Fail;
    out.push_back(rep);
  }

  for (double k : k_grid) {
    if (!(k >= 1.0 && k <= n / 2.0)) continue;
    double tk = t_threshold(marginals, k).value;
    double ts = tstar_threshold(marginals, k).value;
    double ts_half = tstar_threshold(marginals, k / 2.0).value;

    BoundReport half;
    half.theorem_id = "tstar_half_level";
    half.n = static_cast<long long>(n);
    half.k = k;
    half.lhs = ts_half;
    half.rhs = ts;
    half.ratio = ts > 0.0 ? ts_half / ts : 0.0;
    half.tolerance_policy = "ratio window [1, 8]";
    half.verdict = (half.ratio >= 1.0 - 1e-9 && half.ratio <= 8.0)
                       ? Verdict::Pass
                       : Verdict::Fail;
    out.push_back(half);

    BoundReport tvts;
    tvts.theorem_id = "t_over_tstar";
    tvts.n = static_cast<long long>(n);
    tvts.k = k;
    tvts.lhs = tk;
    tvts.rhs = ts;
    tvts.ratio = ts > 0.0 ? tk / ts : 0.0;
    tvts.tolerance_policy = "t >= t*, ratio window [1, 20]";
    tvts.verdict = (tvts.ratio >= 1.0 - 1e-9 && tvts.ratio <= 20.0)
                       ? Verdict::Pass
                       : Verdict::Fail;
    out.push_back(tvts);
  }
  return out;
}

}  // namespace orderstat
