#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace orderstat {

// Adaptive Gauss-Kronrod (G7,K15) integration. The Kronrod extension reuses
// the Gauss nodes, so each panel costs 15 evaluations and carries its own
// error estimate |K15 - G7|.
namespace detail_quad {

inline constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
inline constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

template <typename F>
void panel(const F& f, double a, double b, double& kronrod, double& err) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double fc = f(mid);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    double dx = half * kXgk[j];
    double fsum = f(mid - dx) + f(mid + dx);
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  kronrod = resk * half;
  err = std::abs((resk - resg) * half);
}

template <typename F>
double adapt(const F& f, double a, double b, double tol, int depth) {
  double val, err;
  panel(f, a, b, val, err);
  if (err <= tol || depth >= 48) return val;
  double mid = 0.5 * (a + b);
  return adapt(f, a, mid, 0.5 * tol, depth + 1) +
         adapt(f, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace detail_quad

/// Integrate f over [a, b] to roughly rel_tol relative accuracy
/// (abs_tol absolute floor for integrals near zero).
template <typename F>
double integrate(const F& f, double a, double b, double rel_tol = 1e-13,
                 double abs_tol = 1e-15) {
  if (!(b >= a)) throw std::invalid_argument("integrate: b < a");
  if (a == b) return 0.0;
  double coarse, err;
  detail_quad::panel(f, a, b, coarse, err);
  double tol = std::max(abs_tol, rel_tol * std::abs(coarse));
  if (err <= tol) return coarse;
  return detail_quad::adapt(f, a, b, tol, 0);
}

}  // namespace orderstat
