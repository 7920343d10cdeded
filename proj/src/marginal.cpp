#include "orderstat/marginal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "orderstat/quadrature.hpp"
#include "orderstat/special.hpp"

namespace orderstat {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::domain_error(std::string("marginal: ") + what + " must be positive");
  }
}

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

}  // namespace

Marginal Marginal::gaussian(double sigma) {
  require_positive(sigma, "sigma");
  return Marginal(Family::Gaussian, sigma, 0.0);
}

Marginal Marginal::laplace(double scale) {
  require_positive(scale, "scale");
  return Marginal(Family::Laplace, scale, 0.0);
}

Marginal Marginal::uniform(double halfwidth) {
  require_positive(halfwidth, "halfwidth");
  return Marginal(Family::Uniform, halfwidth, 0.0);
}

Marginal Marginal::half_normal_modulus(double sigma) {
  require_positive(sigma, "sigma");
  return Marginal(Family::HalfNormalModulus, sigma, 0.0);
}

Marginal Marginal::shifted_exponential(double rate, bool centered) {
  require_positive(rate, "rate");
  return Marginal(Family::ShiftedExponential, rate, centered ? 1.0 : 0.0);
}

Marginal Marginal::scaled(const Marginal& base, double weight) {
  if (!std::isfinite(weight)) throw std::domain_error("marginal: weight must be finite");
  Marginal m(Family::Scaled, 0.0, 0.0);
  m.base_ = std::make_shared<Marginal>(base);
  m.weight_ = weight;
  return m;
}

std::string Marginal::family_name() const {
  switch (family_) {
    case Family::Gaussian: return "gaussian";
    case Family::Laplace: return "laplace";
    case Family::Uniform: return "uniform";
    case Family::HalfNormalModulus: return "half_normal_modulus";
    case Family::ShiftedExponential: return "shifted_exponential";
    case Family::Scaled: return "scaled";
  }
  return "?";
}

std::string Marginal::describe() const {
  std::ostringstream os;
  switch (family_) {
    case Family::Scaled:
      os << base_->describe() << "*" << weight_;
      break;
    case Family::ShiftedExponential:
      os << family_name() << "(" << p0_ << (p1_ != 0.0 ? ",centered" : "") << ")";
      break;
    default:
      os << family_name() << "(" << p0_ << ")";
  }
  return os.str();
}

double Marginal::survival_abs(double t) const {
  if (t < 0.0) throw std::domain_error("survival_abs: t must be >= 0");
  switch (family_) {
    case Family::Gaussian:
      return std::erfc(t / (p0_ * kSqrt2));
    case Family::Laplace:
      return std::exp(-t / p0_);
    case Family::Uniform:
      return t >= p0_ ? 0.0 : 1.0 - t / p0_;
    case Family::HalfNormalModulus:
      return std::erfc(t / (p0_ * kSqrt2));
    case Family::ShiftedExponential: {
      const double lam = p0_;
      const double m = p1_ != 0.0 ? 1.0 / lam : 0.0;
      double right = std::exp(-lam * (m + t));
      double left = t < m ? 1.0 - std::exp(-lam * (m - t)) : 0.0;
      return clamp01(right + left);
    }
    case Family::Scaled: {
      if (weight_ == 0.0) return t > 0.0 ? 0.0 : 1.0;
      return base_->survival_abs(t / std::abs(weight_));
    }
  }
  return 0.0;
}

double Marginal::survival_signed(double t) const {
  switch (family_) {
    case Family::Gaussian:
      return normal_survival(t / p0_);
    case Family::Laplace:
      return t >= 0.0 ? 0.5 * std::exp(-t / p0_) : 1.0 - 0.5 * std::exp(t / p0_);
    case Family::Uniform:
      return clamp01((p0_ - t) / (2.0 * p0_));
    case Family::HalfNormalModulus:
      return t <= 0.0 ? 1.0 : std::erfc(t / (p0_ * kSqrt2));
    case Family::ShiftedExponential: {
      const double lam = p0_;
      const double m = p1_ != 0.0 ? 1.0 / lam : 0.0;
      return t + m <= 0.0 ? 1.0 : std::exp(-lam * (t + m));
    }
    case Family::Scaled: {
      if (weight_ == 0.0) return t <= 0.0 ? 1.0 : 0.0;
      if (weight_ > 0.0) return base_->survival_signed(t / weight_);
      // P(aY >= t) = P(Y <= t/a); the base families are atomless.
      return 1.0 - base_->survival_signed(t / weight_);
    }
  }
  return 0.0;
}

double Marginal::truncated_abs_mean(double t) const {
  if (t < 0.0) throw std::domain_error("truncated_abs_mean: t must be >= 0");
  switch (family_) {
    case Family::Gaussian:
    case Family::HalfNormalModulus:
      // both have modulus law sigma*|g|
      return kSqrtTwoOverPi * p0_ * std::exp(-0.5 * t * t / (p0_ * p0_));
    case Family::Laplace:
      return (t + p0_) * std::exp(-t / p0_);
    case Family::Uniform:
      return t >= p0_ ? 0.0 : (p0_ * p0_ - t * t) / (2.0 * p0_);
    case Family::ShiftedExponential: {
      const double lam = p0_;
      const double m = p1_ != 0.0 ? 1.0 / lam : 0.0;
      double right = std::exp(-lam * (m + t)) * (t + 1.0 / lam);
      double left = 0.0;
      if (t < m) left = m - 1.0 / lam + std::exp(-lam * (m - t)) * (1.0 / lam - t);
      return right + left;
    }
    case Family::Scaled: {
      if (weight_ == 0.0) return 0.0;
      double w = std::abs(weight_);
      return w * base_->truncated_abs_mean(t / w);
    }
  }
  return 0.0;
}

double Marginal::mean() const {
  switch (family_) {
    case Family::Gaussian:
    case Family::Laplace:
    case Family::Uniform:
      return 0.0;
    case Family::HalfNormalModulus:
      return kSqrtTwoOverPi * p0_;
    case Family::ShiftedExponential:
      return p1_ != 0.0 ? 0.0 : 1.0 / p0_;
    case Family::Scaled:
      return weight_ * base_->mean();
  }
  return 0.0;
}

double Marginal::variance() const {
  switch (family_) {
    case Family::Gaussian:
      return p0_ * p0_;
    case Family::Laplace:
      return 2.0 * p0_ * p0_;
    case Family::Uniform:
      return p0_ * p0_ / 3.0;
    case Family::HalfNormalModulus:
      return p0_ * p0_ * (1.0 - 2.0 / M_PI);
    case Family::ShiftedExponential:
      return 1.0 / (p0_ * p0_);
    case Family::Scaled:
      return weight_ * weight_ * base_->variance();
  }
  return 0.0;
}

double Marginal::moment_p(double p) const {
  if (!(p >= 1.0)) throw std::domain_error("moment_p: p must be >= 1");
  switch (family_) {
    case Family::Gaussian:
    case Family::HalfNormalModulus:
      return p0_ * gaussian_moment_p(p);
    case Family::Laplace:
      return p0_ * std::exp(std::lgamma(p + 1.0) / p);
    case Family::Uniform:
      return p0_ * std::exp(-std::log(p + 1.0) / p);
    case Family::ShiftedExponential: {
      const double lam = p0_;
      if (p1_ == 0.0) return std::exp(std::lgamma(p + 1.0) / p) / lam;
      // E|E-1|^p for E ~ Exp(1): e^{-1} (Gamma(p+1) + int_0^1 u^p e^u du);
      // the finite piece has no elementary closed form, quadrature it.
      double finite = integrate([p](double u) { return std::pow(u, p) * std::exp(u); },
                                0.0, 1.0, 1e-13);
      double val = std::exp(-1.0) * (std::exp(std::lgamma(p + 1.0)) + finite);
      return std::exp(std::log(val) / p) / lam;
    }
    case Family::Scaled:
      if (weight_ == 0.0) return 0.0;
      return std::abs(weight_) * base_->moment_p(p);
  }
  return 0.0;
}

double Marginal::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("quantile: u outside (0,1)");
  switch (family_) {
    case Family::Gaussian:
      return p0_ * inverse_normal_cdf(u);
    case Family::Laplace:
      return u < 0.5 ? p0_ * std::log(2.0 * u) : -p0_ * std::log(2.0 * (1.0 - u));
    case Family::Uniform:
      return p0_ * (2.0 * u - 1.0);
    case Family::HalfNormalModulus:
      return p0_ * inverse_normal_cdf(0.5 * (1.0 + u));
    case Family::ShiftedExponential: {
      const double lam = p0_;
      const double m = p1_ != 0.0 ? 1.0 / lam : 0.0;
      return -std::log1p(-u) / lam - m;
    }
    case Family::Scaled: {
      if (weight_ == 0.0) return 0.0;
      return weight_ > 0.0 ? weight_ * base_->quantile(u)
                           : weight_ * base_->quantile(1.0 - u);
    }
  }
  return 0.0;
}

double Marginal::pdf(double x) const {
  switch (family_) {
    case Family::Gaussian:
      return normal_pdf(x / p0_) / p0_;
    case Family::Laplace:
      return std::exp(-std::abs(x) / p0_) / (2.0 * p0_);
    case Family::Uniform:
      return std::abs(x) <= p0_ ? 0.5 / p0_ : 0.0;
    case Family::HalfNormalModulus:
      return x < 0.0 ? 0.0 : 2.0 * normal_pdf(x / p0_) / p0_;
    case Family::ShiftedExponential: {
      const double lam = p0_;
      const double m = p1_ != 0.0 ? 1.0 / lam : 0.0;
      return x < -m ? 0.0 : lam * std::exp(-lam * (x + m));
    }
    case Family::Scaled: {
      if (weight_ == 0.0) return 0.0;
      double w = std::abs(weight_);
      return base_->pdf(x / weight_) / w;
    }
  }
  return 0.0;
}

double Marginal::scale() const {
  switch (family_) {
    case Family::Gaussian:
    case Family::HalfNormalModulus:
      return p0_;
    case Family::Laplace:
      return p0_;
    case Family::Uniform:
      return p0_;
    case Family::ShiftedExponential:
      return 1.0 / p0_;
    case Family::Scaled:
      return std::abs(weight_) * base_->scale();
  }
  return 0.0;
}

std::pair<double, double> Marginal::support() const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (family_) {
    case Family::Gaussian:
    case Family::Laplace:
      return {-inf, inf};
    case Family::Uniform:
      return {-p0_, p0_};
    case Family::HalfNormalModulus:
      return {0.0, inf};
    case Family::ShiftedExponential:
      return {p1_ != 0.0 ? -1.0 / p0_ : 0.0, inf};
    case Family::Scaled: {
      if (weight_ == 0.0) return {0.0, 0.0};
      auto [lo, hi] = base_->support();
      double a = weight_ * lo, b = weight_ * hi;
      return {std::min(a, b), std::max(a, b)};
    }
  }
  return {-inf, inf};
}

bool Marginal::is_symmetric() const {
  switch (family_) {
    case Family::Gaussian:
    case Family::Laplace:
    case Family::Uniform:
      return true;
    case Family::HalfNormalModulus:
    case Family::ShiftedExponential:
      return false;
    case Family::Scaled:
      return weight_ == 0.0 || base_->is_symmetric();
  }
  return false;
}

bool Marginal::is_mean_zero() const {
  switch (family_) {
    case Family::Gaussian:
    case Family::Laplace:
    case Family::Uniform:
      return true;
    case Family::HalfNormalModulus:
      return false;
    case Family::ShiftedExponential:
      return p1_ != 0.0;
    case Family::Scaled:
      return weight_ == 0.0 || base_->is_mean_zero();
  }
  return false;
}

bool Marginal::is_degenerate() const {
  return family_ == Family::Scaled && (weight_ == 0.0 || base_->is_degenerate());
}

}  // namespace orderstat
