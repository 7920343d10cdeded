#pragma once

#include <memory>
#include <string>
#include <utility>

namespace orderstat {

/// One-dimensional log-concave law of a coordinate X_i. Immutable value
/// object; all queries are pure, so instances can be shared across threads.
///
/// Supported families:
///   Gaussian(sigma)              N(0, sigma^2)
///   Laplace(b)                   density e^{-|x|/b} / 2b (two-sided exponential)
///   Uniform(a)                   uniform on [-a, a]
///   HalfNormalModulus(sigma)     law of sigma*|g|, g ~ N(0,1)
///   ShiftedExponential(lambda)   Exp(lambda), optionally shifted to mean zero
///   Scaled(base, a)              law of a*Y; a = 0 degenerates to a point
///                                mass at 0
class Marginal {
 public:
  enum class Family {
    Gaussian,
    Laplace,
    Uniform,
    HalfNormalModulus,
    ShiftedExponential,
    Scaled,
  };

  static Marginal gaussian(double sigma);
  static Marginal laplace(double scale);
  static Marginal uniform(double halfwidth);
  static Marginal half_normal_modulus(double sigma);
  static Marginal shifted_exponential(double rate, bool centered);
  static Marginal scaled(const Marginal& base, double weight);

  Family family() const { return family_; }
  std::string family_name() const;
  std::string describe() const;

  /// P(|X| >= t), t >= 0.
  double survival_abs(double t) const;
  /// P(X >= t), any real t.
  double survival_signed(double t) const;
  /// E |X| 1{|X| >= t}, t >= 0.
  double truncated_abs_mean(double t) const;

  double abs_mean() const { return truncated_abs_mean(0.0); }
  double mean() const;
  double variance() const;
  /// ||X||_p = (E|X|^p)^{1/p}, p >= 1.
  double moment_p(double p) const;

  /// Quantile of the signed law; u in (0,1). Used by the samplers.
  double quantile(double u) const;
  /// Density at x (0 for the degenerate point mass).
  double pdf(double x) const;

  /// Characteristic length used for solver brackets and test grids.
  double scale() const;

  /// Support of the law, +-inf for unbounded families.
  std::pair<double, double> support() const;

  bool is_symmetric() const;
  bool is_mean_zero() const;
  bool is_degenerate() const;  // point mass at 0

  double param(int i = 0) const { return i == 0 ? p0_ : p1_; }
  const Marginal* base() const { return base_.get(); }
  double weight() const { return weight_; }

 private:
  Marginal(Family f, double p0, double p1) : family_(f), p0_(p0), p1_(p1) {}

  Family family_;
  double p0_ = 0.0;  // sigma / b / halfwidth / rate
  double p1_ = 0.0;  // shifted_exponential: 1 if centered
  std::shared_ptr<const Marginal> base_;
  double weight_ = 1.0;
};

}  // namespace orderstat
