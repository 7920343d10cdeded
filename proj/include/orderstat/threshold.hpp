#pragma once

#include <vector>

#include "orderstat/marginal.hpp"
#include "orderstat/report.hpp"

namespace orderstat {

/// Root of a monotone threshold equation with solver diagnostics.
struct ThresholdResult {
  double value = 0.0;
  double residual = 0.0;  // G(value) - level, G the defining sum
  int iterations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  bool degenerate = false;  // condition held for every t > 0
};

/// t(k,X) = inf{ t>0 : (1/t) sum_i E|X_i| 1{|X_i|>=t} <= k }.
/// Bracketed bisection on the nonincreasing defining function; absolute
/// tolerance 1e-10 times the largest marginal scale. Any positive real level
/// is accepted (the half-integer levels of the k-max bounds need this).
ThresholdResult t_threshold(const std::vector<Marginal>& marginals, double level);

/// t*(p,X) = inf{ t>0 : sum_i P(|X_i|>=t) <= p } for 0 < p < n.
/// p >= n returns 0 with the degenerate flag set; p <= 0 is a domain error.
ThresholdResult tstar_threshold(const std::vector<Marginal>& marginals, double level);

/// 2 k t(k,X), the certified upper bound for E max_{|I|=k} sum_{i in I}|X_i|.
double topk_mean_upper_bound(const std::vector<Marginal>& marginals, double k);

/// Sum of the k largest marginal absolute means, max_{|I|=k} sum E|X_i|.
double topk_marginal_mean(const std::vector<Marginal>& marginals, double k);

/// Two-sided comparison of t(k) against t*(k) + M/k for symmetric log-concave
/// marginals: (1/3)(t* + M/k) <= t(k) <= 4 (t* + M/k). Asymmetric input is
/// flagged but still evaluated.
BoundReport sandwich_check(const std::vector<Marginal>& marginals, double k);

/// Isotropic asymptotics: t*(p) ~ (n-p)/n for p >= n/4 and
/// t*(k/2) ~ t*(k) ~ t(k) for k <= n/2, reported as ratios against
/// configured windows.
std::vector<BoundReport> isotropic_asymptotics_check(
    const std::vector<Marginal>& marginals, const std::vector<double>& p_grid,
    const std::vector<double>& k_grid);

}  // namespace orderstat
