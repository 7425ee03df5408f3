#include "m2m/specfun.hpp"

#include <cmath>
#include <limits>

namespace m2m::specfun {

namespace {

constexpr double kEulerGamma = 0.5772156649015328606;

[[noreturn]] void series_failure(const char* what) {
  throw std::runtime_error(std::string("specfun: series did not converge: ") + what);
}

// Regularized-series form of gamma(s,x), valid and fast for x < s+1.
double lower_gamma_series(double s, double x, const Tolerance& tol) {
  double ap = s;
  double sum = 1.0 / s;
  double del = sum;
  for (int n = 0; n < tol.max_terms; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * tol.rel)
      return sum * std::exp(-x + s * std::log(x));
  }
  series_failure("lower incomplete gamma");
}

// Lentz continued fraction for Gamma(s,x); good for x >= ~1, any real s.
double upper_gamma_cf(double s, double x, const Tolerance& tol) {
  const double fpmin = std::numeric_limits<double>::min() / tol.rel;
  double b = x + 1.0 - s;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= tol.max_terms; ++i) {
    const double an = -static_cast<double>(i) * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double step = d * c;
    h *= step;
    if (std::fabs(step - 1.0) < tol.rel)
      return std::exp(-x + s * std::log(x)) * h;
  }
  series_failure("upper incomplete gamma continued fraction");
}

// Exponential integral E1(x) = Gamma(0,x), series branch for small x.
double e1_series(double x, const Tolerance& tol) {
  double sum = -kEulerGamma - std::log(x);
  double term = 1.0;
  for (int k = 1; k <= tol.max_terms; ++k) {
    term *= -x / k;
    const double add = -term / k;
    sum += add;
    if (std::fabs(add) < std::fabs(sum) * tol.rel) return sum;
  }
  series_failure("E1 series");
}

// 2F1(1,1;c;w) = sum_n n!/(c)_n w^n, |w| < 1.
double hyp2f1_1_1(double c, double w, const Tolerance& tol) {
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0; n < tol.max_terms; ++n) {
    term *= (n + 1.0) / (c + n) * w;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * tol.rel) return sum;
  }
  series_failure("2F1(1,1;c;w)");
}

// 2F1(1,b;1+b;z) = sum_n b/(b+n) z^n, |z| < 1. Used with z = -t or z = -1/s.
double hyp2f1_1_b(double b, double z, const Tolerance& tol) {
  double zn = 1.0;
  double sum = 1.0;
  for (int n = 1; n <= tol.max_terms; ++n) {
    zn *= z;
    const double term = b / (b + n) * zn;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * tol.rel) return sum;
  }
  series_failure("2F1(1,b;1+b;z)");
}

}  // namespace

void validate(const Tolerance& tol) {
  if (!(tol.rel > 0.0 && tol.rel < 1e-3))
    throw std::invalid_argument("Tolerance.rel must lie in (0, 1e-3)");
  if (tol.max_terms < 100)
    throw std::invalid_argument("Tolerance.max_terms must be >= 100");
}

double gamma_lower(double s, double x, const Tolerance& tol) {
  if (!(s > 0.0)) throw std::domain_error("gamma_lower: s must be > 0");
  if (!(x >= 0.0)) throw std::domain_error("gamma_lower: x must be >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return std::tgamma(s);
  if (x < s + 1.0) return lower_gamma_series(s, x, tol);
  return std::tgamma(s) - upper_gamma_cf(s, x, tol);
}

double gamma_upper(double s, double x, const Tolerance& tol) {
  if (!(x > 0.0)) throw std::domain_error("gamma_upper: x must be > 0");
  if (std::isinf(x)) return 0.0;
  if (s > 0.0) {
    if (x < s + 1.0) return std::tgamma(s) - lower_gamma_series(s, x, tol);
    return upper_gamma_cf(s, x, tol);
  }
  // s <= 0. The continued fraction stays well behaved for x >= 1; for
  // smaller x, climb to a positive base order and recurse back down with
  // Gamma(s,x) = (Gamma(s+1,x) - x^s e^{-x}) / s.
  if (x >= 1.0) return upper_gamma_cf(s, x, tol);
  const double fl = std::floor(s);
  const bool integral = (s == fl);
  double base_s = integral ? 0.0 : s - fl;  // in (0,1)
  double g = integral ? e1_series(x, tol)
                      : std::tgamma(base_s) - lower_gamma_series(base_s, x, tol);
  const int steps = static_cast<int>(std::lround(integral ? -s : -fl));
  double cur = base_s;
  for (int i = 0; i < steps; ++i) {
    cur -= 1.0;
    g = (g - std::exp(cur * std::log(x) - x)) / cur;
  }
  return g;
}

double c_alpha(double alpha, double t, const Tolerance& tol) {
  if (!(alpha > 2.0)) throw std::domain_error("c_alpha: alpha must be > 2");
  if (!(t >= 0.0)) throw std::domain_error("c_alpha: t must be >= 0");
  if (t == 0.0) return 1.0;
  const double b = 1.0 - 2.0 / alpha;
  if (t <= 30.0) {
    // Pfaff transform: 2F1(1,b;1+b;-t) = (1+t)^{-1} 2F1(1,1;1+b;t/(1+t)).
    return hyp2f1_1_1(1.0 + b, t / (1.0 + t), tol) / (1.0 + t);
  }
  // Large argument: connection formula through the B-family at -1/t.
  const double bp = 2.0 / alpha;
  const double a_conn = std::tgamma(1.0 + b) * std::tgamma(-bp) / (std::tgamma(b) * std::tgamma(b));
  const double d_conn = std::tgamma(1.0 + b) * std::tgamma(bp);
  return a_conn / t * hyp2f1_1_b(bp, -1.0 / t, tol) + d_conn * std::pow(t, -b);
}

double b_alpha(double alpha, double s, const Tolerance& tol) {
  if (!(alpha > 2.0)) throw std::domain_error("b_alpha: alpha must be > 2");
  if (!(s > 0.0)) throw std::domain_error("b_alpha: s must be > 0");
  if (std::isinf(s)) return 1.0;
  const double bp = 2.0 / alpha;
  if (s >= 30.0) return hyp2f1_1_b(bp, -1.0 / s, tol);
  if (s >= 0.05) {
    // Pfaff transform with z = -1/s: prefactor s/(s+1), argument 1/(1+s).
    return s / (s + 1.0) * hyp2f1_1_1(1.0 + bp, 1.0 / (1.0 + s), tol);
  }
  // Small s: connection formula through C_alpha(s).
  const double a_conn =
      std::tgamma(1.0 + bp) * std::tgamma(bp - 1.0) / (std::tgamma(bp) * std::tgamma(bp));
  const double d_conn = std::tgamma(1.0 + bp) * std::tgamma(1.0 - bp);
  return a_conn * s * c_alpha(alpha, s, tol) + d_conn * std::pow(s, bp);
}

}  // namespace m2m::specfun
