#include "orderstat/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace orderstat {

namespace {

constexpr std::size_t kBlockSize = 8192;

struct Welford {
  long long count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }

  // Chan et al. pairwise combination; the caller fixes the combine order.
  void merge(const Welford& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    double d = o.mean - mean;
    long long total = count + o.count;
    mean += d * static_cast<double>(o.count) / static_cast<double>(total);
    m2 += o.m2 + d * d * static_cast<double>(count) *
                     static_cast<double>(o.count) / static_cast<double>(total);
    count = total;
  }

  double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
};

int effective_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(block_index, sample_begin, sample_end) over all blocks, on up to
/// `threads` workers. Block payloads must be independent.
void for_each_block(std::size_t count, int threads,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  const std::size_t blocks = (count + kBlockSize - 1) / kBlockSize;
  int nt = std::min<std::size_t>(effective_threads(threads), blocks);
  if (nt <= 1) {
    for (std::size_t b = 0; b < blocks; ++b)
      fn(b, b * kBlockSize, std::min(count, (b + 1) * kBlockSize));
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t b = next.fetch_add(1);
      if (b >= blocks) return;
      fn(b, b * kBlockSize, std::min(count, (b + 1) * kBlockSize));
    }
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

Estimate finalize(const Welford& acc, uint64_t seed, const std::string& stat_id) {
  Estimate e;
  e.count = acc.count;
  e.seed = seed;
  e.stat_id = stat_id;
  e.mean = acc.mean;
  e.stderr_ = std::sqrt(acc.variance() / static_cast<double>(acc.count));
  e.ci95 = {e.mean - 1.96 * e.stderr_, e.mean + 1.96 * e.stderr_};
  return e;
}

}  // namespace

double kth_max_abs(std::span<const double> x, std::size_t k) {
  const std::size_t n = x.size();
  if (k < 1 || k > n) throw std::domain_error("kth_max_abs: k out of range");
  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = std::abs(x[i]);
  std::nth_element(a.begin(), a.begin() + (k - 1), a.end(), std::greater<>());
  return a[k - 1];
}

double topk_abs_sum(std::span<const double> x, std::size_t k) {
  const std::size_t n = x.size();
  if (k < 1 || k > n) throw std::domain_error("topk_abs_sum: k out of range");
  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = std::abs(x[i]);
  if (k < n) std::nth_element(a.begin(), a.begin() + (k - 1), a.end(), std::greater<>());
  // summed in descending order so the result is bit-identical to
  // sum_l l-max (the layer-cake identity tests ask for exact agreement)
  std::sort(a.begin(), a.begin() + k, std::greater<>());
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += a[i];
  return s;
}

double StatSpec::evaluate(std::span<const double> x) const {
  switch (kind) {
    case Kind::KMax:
      return kth_max_abs(x, k);
    case Kind::KMin:
      return kth_max_abs(x, x.size() - k + 1);
    case Kind::TopkSum:
      return topk_abs_sum(x, k);
    case Kind::SupWeightedPow: {
      double best = 0.0;
      for (double v : x) best = std::max(best, std::abs(v));
      return std::pow(best, power);
    }
  }
  return 0.0;
}

std::string StatSpec::id() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::KMax: os << "kmax:" << k; break;
    case Kind::KMin: os << "kmin:" << k; break;
    case Kind::TopkSum: os << "topk:" << k; break;
    case Kind::SupWeightedPow: os << "supw:" << power; break;
  }
  return os.str();
}

StatSpec StatSpec::parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("stat spec: expected name:value, got " + text);
  std::string name = text.substr(0, colon);
  std::string arg = text.substr(colon + 1);
  if (name == "kmax") return kmax(std::stoul(arg));
  if (name == "kmin") return kmin(std::stoul(arg));
  if (name == "topk") return topk_sum(std::stoul(arg));
  if (name == "supw") return sup_weighted(std::stod(arg));
  throw std::invalid_argument("stat spec: unknown stat " + name);
}

std::vector<double> sample_stat_values(const VectorModel& model,
                                       const StatSpec& stat, std::size_t count,
                                       uint64_t seed, uint64_t stream_id,
                                       int threads) {
  std::vector<double> values(count);
  CounterRng rng(seed, stream_id);
  for_each_block(count, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    std::vector<double> x(model.n());
    for (std::size_t i = begin; i < end; ++i) {
      model.sample_into(x, i, rng);
      values[i] = stat.evaluate(x);
    }
  });
  return values;
}

std::vector<std::vector<double>> sample_stat_values_multi(
    const VectorModel& model, const std::vector<StatSpec>& stats,
    std::size_t count, uint64_t seed, uint64_t stream_id, int threads) {
  const std::size_t n = model.n();
  std::vector<std::vector<double>> values(stats.size());
  for (auto& v : values) v.resize(count);
  CounterRng rng(seed, stream_id);
  for_each_block(count, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    std::vector<double> x(n), sorted(n), prefix(n + 1);
    for (std::size_t i = begin; i < end; ++i) {
      model.sample_into(x, i, rng);
      for (std::size_t j = 0; j < n; ++j) sorted[j] = std::abs(x[j]);
      std::sort(sorted.begin(), sorted.end(), std::greater<>());
      prefix[0] = 0.0;
      for (std::size_t j = 0; j < n; ++j) prefix[j + 1] = prefix[j] + sorted[j];
      for (std::size_t s = 0; s < stats.size(); ++s) {
        const StatSpec& st = stats[s];
        double v = 0.0;
        switch (st.kind) {
          case StatSpec::Kind::KMax: v = sorted[st.k - 1]; break;
          case StatSpec::Kind::KMin: v = sorted[n - st.k]; break;
          case StatSpec::Kind::TopkSum: v = prefix[st.k]; break;
          case StatSpec::Kind::SupWeightedPow:
            v = std::pow(sorted[0], st.power);
            break;
        }
        values[s][i] = v;
      }
    }
  });
  return values;
}

Estimate estimate_from_values(std::span<const double> values, uint64_t seed,
                              const std::string& stat_id) {
  const std::size_t count = values.size();
  const std::size_t blocks = (count + kBlockSize - 1) / kBlockSize;
  Welford total;
  for (std::size_t b = 0; b < blocks; ++b) {
    Welford acc;
    std::size_t end = std::min(count, (b + 1) * kBlockSize);
    for (std::size_t i = b * kBlockSize; i < end; ++i) acc.add(values[i]);
    total.merge(acc);
  }
  return finalize(total, seed, stat_id);
}

Estimate median_from_values(std::span<const double> values, uint64_t seed,
                            const std::string& stat_id) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  double med = m % 2 == 1 ? sorted[m / 2]
                          : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  auto ci = median_ci95(sorted);
  Estimate e;
  e.mean = med;
  e.count = static_cast<long long>(m);
  e.seed = seed;
  e.stat_id = "median[" + stat_id + "]";
  e.stderr_ = 0.5 * (ci.second - ci.first) / 1.96;
  e.ci95 = ci;
  return e;
}

Estimate estimate_mean(const VectorModel& model, const StatSpec& stat,
                       std::size_t count, uint64_t seed, int threads) {
  if (count < 1000)
    throw std::invalid_argument("estimate_mean: count below 1000, CI refused");
  const std::size_t blocks = (count + kBlockSize - 1) / kBlockSize;
  std::vector<Welford> partial(blocks);
  CounterRng rng(seed, 0);
  for_each_block(count, threads, [&](std::size_t b, std::size_t begin, std::size_t end) {
    std::vector<double> x(model.n());
    Welford acc;
    for (std::size_t i = begin; i < end; ++i) {
      model.sample_into(x, i, rng);
      acc.add(stat.evaluate(x));
    }
    partial[b] = acc;
  });
  Welford total;
  for (const auto& p : partial) total.merge(p);
  return finalize(total, seed, stat.id());
}

std::pair<double, double> median_ci95(std::span<const double> sorted) {
  const std::size_t m = sorted.size();
  if (m < 8) throw std::invalid_argument("median_ci95: sample too small");
  // largest l with P(Bin(m,1/2) < l) <= 0.025, summing pmf from the center out
  const double log_half_m = static_cast<double>(m) * std::log(0.5);
  auto log_pmf = [&](std::size_t j) {
    return std::lgamma(static_cast<double>(m) + 1.0) -
           std::lgamma(static_cast<double>(j) + 1.0) -
           std::lgamma(static_cast<double>(m - j) + 1.0) + log_half_m;
  };
  std::size_t c = m / 2;
  double cum = m % 2 == 0 ? 0.5 * (1.0 + std::exp(log_pmf(c))) : 0.5;  // P(B <= c)
  std::size_t j = c;
  while (j > 0 && cum > 0.025) {
    cum -= std::exp(log_pmf(j));
    --j;
  }
  // now cum = P(B <= j) <= 0.025; lower order-statistic index l = j+1 (1-based)
  std::size_t l = j + 1;
  std::size_t u = m - l + 1;
  return {sorted[l - 1], sorted[u - 1]};
}

Estimate estimate_median(const VectorModel& model, const StatSpec& stat,
                         std::size_t count, std::size_t replications,
                         uint64_t seed, int threads) {
  if (replications < 1) throw std::invalid_argument("estimate_median: replications >= 1");
  if (count * replications < 10000)
    throw std::invalid_argument("estimate_median: count*replications below 1e4, CI refused");
  std::vector<double> pooled;
  pooled.reserve(count * replications);
  for (std::size_t r = 0; r < replications; ++r) {
    auto vals = sample_stat_values(model, stat, count, seed, r, threads);
    pooled.insert(pooled.end(), vals.begin(), vals.end());
  }
  return median_from_values(pooled, seed, stat.id());
}

std::pair<double, double> wilson_ci95(double phat, std::size_t count) {
  const double z = 1.96;
  const double nn = static_cast<double>(count);
  double denom = 1.0 + z * z / nn;
  double center = (phat + z * z / (2.0 * nn)) / denom;
  double half = z * std::sqrt(phat * (1.0 - phat) / nn + z * z / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

Estimate tail_probability(const VectorModel& model, const StatSpec& stat,
                          double u, std::size_t count, uint64_t seed,
                          int threads) {
  if (count < 1000)
    throw std::invalid_argument("tail_probability: count below 1000, CI refused");
  auto vals = sample_stat_values(model, stat, count, seed, 0, threads);
  std::size_t hits = 0;
  for (double v : vals) hits += (v >= u);
  double phat = static_cast<double>(hits) / static_cast<double>(count);
  Estimate e;
  e.mean = phat;
  e.count = static_cast<long long>(count);
  e.seed = seed;
  std::ostringstream os;
  os << "P[" << stat.id() << ">=" << u << "]";
  e.stat_id = os.str();
  e.stderr_ = std::sqrt(phat * (1.0 - phat) / static_cast<double>(count));
  e.ci95 = wilson_ci95(phat, count);
  return e;
}

std::vector<BoundReport> byparts_identity_check(const VectorModel& model,
                                                std::size_t k, double t,
                                                std::size_t count, uint64_t seed) {
  if (count < 1000)
    throw std::invalid_argument("byparts_identity_check: count below 1000");
  const std::size_t n = model.n();
  if (k < 1 || k > n) throw std::domain_error("byparts_identity_check: k out of range");
  if (t < 0.0) throw std::domain_error("byparts_identity_check: t must be >= 0");

  CounterRng rng(seed, 0);
  std::vector<double> x(n);
  std::vector<double> mods(n);

  double worst_step = 0.0;       // identity (a), per-sample step integral
  Welford diff;                  // identity (b), shared-draw estimator difference
  for (std::size_t i = 0; i < count; ++i) {
    model.sample_into(x, i, rng);
    for (std::size_t j = 0; j < n; ++j) mods[j] = std::abs(x[j]);
    std::sort(mods.begin(), mods.end(), std::greater<>());

    // (a) integral of min(k, N(s)) ds over the step function of sorted moduli
    double step_integral = 0.0;
    for (std::size_t l = 0; l + 1 < k; ++l)
      step_integral += static_cast<double>(l + 1) * (mods[l] - mods[l + 1]);
    step_integral += static_cast<double>(k) * mods[k - 1];
    double topk = topk_abs_sum(x, k);
    worst_step = std::max(worst_step, std::abs(step_integral - topk));

    // (b) LHS route: direct truncated sum. RHS route: t*N(t) plus the
    // layer-cake tail written through order statistics, sum_l (l-max - t)_+.
    double lhs = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (mods[j] >= t) lhs += mods[j];
    double nt = 0.0;
    for (std::size_t j = 0; j < n; ++j) nt += (mods[j] >= t);
    double rhs = t * nt;
    for (std::size_t j = 0; j < n; ++j) rhs += std::max(mods[j] - t, 0.0) * (mods[j] >= t);
    diff.add(lhs - rhs);
  }

  std::vector<BoundReport> out;
  {
    BoundReport rep;
    rep.theorem_id = "layercake_topk_identity";
    rep.model = model.describe();
    rep.n = static_cast<long long>(n);
    rep.k = static_cast<double>(k);
    rep.lhs = worst_step;
    rep.rhs = 1e-9;
    rep.ratio = worst_step / 1e-9;
    rep.tolerance_policy = "per-sample, abs 1e-9";
    rep.seed = seed;
    rep.verdict = worst_step <= 1e-9 ? Verdict::Pass : Verdict::Fail;
    out.push_back(rep);
  }
  {
    BoundReport rep;
    rep.theorem_id = "truncated_sum_byparts";
    rep.model = model.describe();
    rep.n = static_cast<long long>(n);
    rep.k = static_cast<double>(k);
    double se = std::sqrt(diff.variance() / static_cast<double>(count));
    rep.lhs = diff.mean;
    rep.lhs_stderr = se;
    rep.rhs = 0.0;
    rep.ratio = 0.0;
    rep.tolerance_policy = "|mean diff| <= 3 stderr + 1e-9";
    rep.seed = seed;
    rep.verdict = std::abs(diff.mean) <= 3.0 * se + 1e-9 ? Verdict::Pass : Verdict::Fail;
    std::ostringstream os;
    os << "t=" << t;
    rep.note = os.str();
    out.push_back(rep);
  }
  return out;
}

}  // namespace orderstat
