#pragma once

// Test-only numerical oracles, independent of the library's evaluation paths:
// adaptive Simpson quadrature instead of series/continued fractions on the
// library side, plus the defining-integral forms of every special function.

#include <cmath>
#include <functional>
#include <limits>

namespace oracle {

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                                   double b, double fa, double fm, double fb,
                                   double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * eps)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}

inline double integrate_abs(const std::function<double(double)>& f, double a, double b,
                            double eps_abs, int depth = 44) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, eps_abs, depth);
}

/// 128-panel composite Simpson magnitude probe; it cannot miss features
/// wider than ~1% of the window, which sets the absolute scale safely.
inline double composite_probe(const std::function<double(double)>& f, double a,
                              double b) {
  constexpr int kPanels = 128;
  const double h = (b - a) / (2 * kPanels);
  double sum = f(a) + f(b);
  for (int i = 1; i < 2 * kPanels; ++i) sum += f(a + h * i) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

/// Relative-control integration. The composite probe sets the scale, and the
/// adaptive recursion is seeded per probe panel so that no feature the probe
/// can see is ever skipped by early agreement of coarse estimates.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double rel = 1e-12) {
  if (a == b) return 0.0;
  constexpr int kPanels = 128;
  const double scale = std::fabs(composite_probe(f, a, b));
  const double eps_panel = std::max(scale * rel, 1e-305) / kPanels;
  const double h = (b - a) / kPanels;
  double total = 0.0;
  for (int i = 0; i < kPanels; ++i)
    total += integrate_abs(f, a + i * h, a + (i + 1) * h, eps_panel, 36);
  return total;
}

/// Semi-infinite integral via geometrically growing windows; each window is
/// resolved relative to the probed total magnitude.
inline double integrate_to_inf(const std::function<double(double)>& f, double a,
                               double rel = 1e-12) {
  double probe = 0.0;
  {
    double left = a, width = 1.0;
    for (int i = 0; i < 200; ++i) {
      const double piece = std::fabs(composite_probe(f, left, left + width));
      probe += piece;
      left += width;
      width *= 1.6;
      if (piece < 1e-6 * std::max(1e-300, probe) && i > 5) break;
    }
  }
  const double eps_total = std::max(probe * rel, 1e-305);
  double total = 0.0;
  double left = a, width = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double piece = integrate(f, left, left + width, rel / 4.0);
    total += piece;
    left += width;
    width *= 1.6;
    if (std::fabs(piece) < eps_total && i > 4) break;
  }
  return total;
}

/// gamma(s,x) = x^s int_0^1 u^(s-1) e^(-x u) du.
inline double lower_gamma(double s, double x) {
  if (x <= 0.0) return 0.0;
  const double integral = integrate([&](double u) {
    if (u <= 0.0) return 0.0;
    return std::pow(u, s - 1.0) * std::exp(-x * u);
  }, 0.0, 1.0);
  return std::pow(x, s) * integral;
}

/// Gamma(s,x) = e^(-x) int_0^inf (x+u)^(s-1) e^(-u) du.
inline double upper_gamma(double s, double x) {
  const double tail = integrate_to_inf([&](double u) {
    return std::pow(x + u, s - 1.0) * std::exp(-u);
  }, 0.0);
  return std::exp(-x) * tail;
}

/// C_alpha(t) through the integral form
/// (alpha/2-1)/t * int_1^inf du / (1 + u^{alpha/2}/t), with the tail folded
/// onto [0,1] by u = v^(-q), q = 2/(alpha-2), which collapses the integrand
/// to q / (v^(q+1) + 1/t) exactly.
inline double c_alpha(double alpha, double t) {
  if (t == 0.0) return 1.0;
  const double q = 2.0 / (alpha - 2.0);
  const double inv_t = 1.0 / t;
  const double integral = integrate([&](double v) {
    return q / (std::pow(v, q + 1.0) + inv_t);
  }, 0.0, 1.0);
  return (alpha / 2.0 - 1.0) / t * integral;
}

/// B_alpha(s) through the Euler integral, int_0^1 du / (1 + u^{alpha/2}/s).
inline double b_alpha(double alpha, double s) {
  return integrate([&](double u) {
    return 1.0 / (1.0 + std::pow(u, alpha / 2.0) / s);
  }, 0.0, 1.0);
}

inline double rel_err(double got, double want) {
  if (want == 0.0) return std::fabs(got);
  return std::fabs(got - want) / std::fabs(want);
}

}  // namespace oracle
