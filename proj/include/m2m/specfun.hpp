#pragma once

#include <stdexcept>

namespace m2m::specfun {

/// Convergence control for the series evaluations below.
struct Tolerance {
  double rel = 1e-10;
  int max_terms = 10000;
};

void validate(const Tolerance& tol);

/// Lower incomplete gamma, gamma(s,x) = int_0^x t^{s-1} e^{-t} dt.
/// Requires s > 0, x >= 0.
double gamma_lower(double s, double x, const Tolerance& tol = {});

/// Upper incomplete gamma, Gamma(s,x) = int_x^inf t^{s-1} e^{-t} dt.
/// Defined for any real s (including s <= 0) provided x > 0.
double gamma_upper(double s, double x, const Tolerance& tol = {});

/// C_alpha(t) = 2F1(1, 1-2/alpha; 2-2/alpha; -t). Value in (0,1], C_alpha(0)=1.
/// Requires alpha > 2, t >= 0.
double c_alpha(double alpha, double t, const Tolerance& tol = {});

/// B_alpha(s) = 2F1(1, 2/alpha; 1+2/alpha; -1/s). Value in (0,1), increasing in s.
/// Requires alpha > 2, s > 0.
double b_alpha(double alpha, double s, const Tolerance& tol = {});

}  // namespace m2m::specfun
