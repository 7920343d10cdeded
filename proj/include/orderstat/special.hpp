#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace orderstat {

inline constexpr double kSqrt2 = 1.4142135623730951;
inline constexpr double kSqrt2Pi = 2.5066282746310002;
inline constexpr double kSqrtTwoOverPi = 0.7978845608028654;
inline constexpr double kLogSqrtPi = 0.5723649429247001;

inline double normal_pdf(double x) { return std::exp(-0.5 * x * x) / kSqrt2Pi; }

/// P(g <= x) for g ~ N(0,1).
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

/// P(g >= x) for g ~ N(0,1).
inline double normal_survival(double x) { return 0.5 * std::erfc(x / kSqrt2); }

/// Inverse of normal_cdf. Acklam's rational approximation polished with one
/// Halley step; relative error below 1e-14 on (0,1).
inline double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    throw std::domain_error("inverse_normal_cdf: p outside [0,1]");
  }
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    double q = p - 0.5;
    double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // Halley refinement against the erfc-based CDF.
  double e = normal_cdf(x) - p;
  double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
  x = x - u / (1.0 + 0.5 * x * u);
  return x;
}

/// Inverse of normal_survival.
inline double inverse_normal_survival(double p) { return -inverse_normal_cdf(p); }

/// ||g||_p = (E|g|^p)^{1/p} for g ~ N(0,1), p >= 1.
inline double gaussian_moment_p(double p) {
  // E|g|^p = 2^{p/2} Gamma((p+1)/2) / sqrt(pi)
  double log_abs_moment = 0.5 * p * std::log(2.0) + std::lgamma(0.5 * (p + 1.0)) - kLogSqrtPi;
  return std::exp(log_abs_moment / p);
}

}  // namespace orderstat
