#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace m2m::quad {

struct Options {
  double rel_tol = 1e-9;
  double abs_tol = 1e-13;
  int max_depth = 24;
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1,1].
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526, 0.949107912342758524526189684048,
    0.864864423359769072789712788641, 0.741531185599394439863864773281,
    0.586087235467691130294144838259, 0.405845151377397166906606412077,
    0.207784955007898467600689403773, 0.0};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008059, 0.063092092629978553290700663189,
    0.104790010322250183839876322542, 0.140653259715525918745189590510,
    0.169004726639267902826583426599, 0.190350578064785409913256402421,
    0.204432940075298892414161999235, 0.209482141084727828012999174892};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679, 0.279705391489276667901467771424,
    0.381830050505118944950369775489, 0.417959183673469387755102040816};

template <typename F>
void gk15(const F& f, double a, double b, double& result, double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kXgk[i]);
    fv[14 - i] = f(c + h * kXgk[i]);
  }
  fv[7] = f(c);
  double resk = kWgk[7] * fv[7];
  double resg = kWg[3] * fv[7];
  for (int i = 0; i < 7; ++i) resk += kWgk[i] * (fv[i] + fv[14 - i]);
  for (int i = 0; i < 3; ++i) resg += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  result = resk * h;
  err = std::fabs((resk - resg) * h);
}

template <typename F>
double adapt(const F& f, double a, double b, double whole, double err,
             const Options& opt, int depth) {
  if (err <= opt.abs_tol || err <= opt.rel_tol * std::fabs(whole) || depth >= opt.max_depth)
    return whole;
  const double m = 0.5 * (a + b);
  double left, lerr, right, rerr;
  gk15(f, a, m, left, lerr);
  gk15(f, m, b, right, rerr);
  return adapt(f, a, m, left, lerr, opt, depth + 1) +
         adapt(f, m, b, right, rerr, opt, depth + 1);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over the finite interval [a,b].
template <typename F>
double integrate(const F& f, double a, double b, const Options& opt = {}) {
  if (!(a <= b)) throw std::invalid_argument("quad::integrate: need a <= b");
  if (a == b) return 0.0;
  double whole, err;
  detail::gk15(f, a, b, whole, err);
  return detail::adapt(f, a, b, whole, err, opt, 0);
}

}  // namespace m2m::quad
