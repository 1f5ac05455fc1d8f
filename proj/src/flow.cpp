#include "nilreg/flow.hpp"

#include <cmath>

namespace nilreg {

double vfield(double x) { return x * (1 - x) * (1 - x); }

double flow_conserved(double x) {
  return std::log(x / (1 - x)) + 1.0 / (1 - x);
}

namespace {

double initial_guess(double s) {
  if (s < -1) return std::exp(s - 1);  // F(x) ~ ln x + 1 for x -> 0
  if (s > 4) {
    // F(x) ~ 1/u - ln u with u = 1-x; fixed point of u = 1/(s + ln u)
    double u = 1.0 / s;
    for (int i = 0; i < 20; ++i) u = 1.0 / (s - std::log(u));
    return 1 - u;
  }
  return 0.5;
}

}  // namespace

double flow(double t, double x) {
  if (std::abs(t) > 50)
    fail(ErrorKind::Precondition, "flow: |t| exceeds the range guard 50");
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  if (t == 0) return x;

  const double s = flow_conserved(x) + t;
  double lo = 0, hi = 1;
  double y = initial_guess(s);
  if (y <= lo || y >= hi) y = 0.5;
  double f = flow_conserved(y) - s;
  const double tol = 1e-13 * std::max(1.0, std::abs(s));
  for (int it = 0; it < 200 && std::abs(f) > tol; ++it) {
    (f > 0 ? hi : lo) = y;
    double step = f * vfield(y);  // F' = 1/V
    double ynext = y - step;
    if (!(ynext > lo && ynext < hi)) ynext = 0.5 * (lo + hi);
    y = ynext;
    f = flow_conserved(y) - s;
  }
  if (std::abs(f) > 1e-6 * std::max(1.0, std::abs(s)))
    fail(ErrorKind::Numeric, "flow: solver failed to converge (t=" +
                                 std::to_string(t) + ", x=" + std::to_string(x) + ")");
  return y;
}

double flow_derivative(double t, double x) {
  if (x <= 0) return std::exp(t);  // hyperbolic endpoint, Lyapunov exponent 1
  if (x >= 1) return 1;            // parabolic endpoint
  const double y = flow(t, x);
  const double r1 = y / x;
  const double r2 = (1 - y) / (1 - x);
  return r1 * r2 * r2;
}

TsuboiMap tsuboi_map(const Interval& Ip, const Interval& I, const Interval& Jp,
                     const Interval& J) {
  auto adjacent = [](const Interval& a, const Interval& b) {
    const double scale = std::max({std::abs(b.left), a.len(), b.len()});
    return std::abs(a.right - b.left) <= 1e-12 * std::max(1.0, scale);
  };
  if (!(Ip.len() > 0 && I.len() > 0 && Jp.len() > 0 && J.len() > 0))
    fail(ErrorKind::Structural, "tsuboi_map: intervals must have positive length");
  if (!adjacent(Ip, I) || !adjacent(Jp, J))
    fail(ErrorKind::Structural, "tsuboi_map: intervals are not left-adjacent");
  TsuboiMap m;
  m.I = I;
  m.J = J;
  m.dleft = Jp.len() / Ip.len();
  m.dright = J.len() / I.len();
  m.t = std::log(m.dleft) - std::log(m.dright);
  return m;
}

double TsuboiMap::eval(double x) const {
  const double u = (x - I.left) / I.len();
  if (u <= 0) return J.left;
  if (u >= 1) return J.right;
  return J.left + flow(t, u) * J.len();
}

double TsuboiMap::deriv(double x) const {
  const double u = (x - I.left) / I.len();
  if (u <= 0) return dleft;
  if (u >= 1) return dright;
  return dright * flow_derivative(t, u);
}

}  // namespace nilreg
