#include "nilreg/lengths.hpp"

#include <cmath>

namespace nilreg {

double length_term(double A, double eps, std::int64_t j) {
  const double jj = static_cast<double>(j);
  return std::pow(A * A + jj * jj, -(1 + eps) / 2);
}

namespace {

// Integral of (A^2 + u^2)^(-s) du from U to infinity, expanded in (A/U)^2;
// valid for U >= 4A, here used with U >= 16A.
double tail_integral(double A, double s, double U) {
  const double q = (A / U) * (A / U);
  double coef = 1.0;  // binomial (-s choose k) * (-1)^k = s(s+1).../k!
  double qk = 1.0;
  double sum = 0.0;
  for (int k = 0; k < 24; ++k) {
    const double expo = 2 * s + 2 * k - 1;
    const double term = coef * qk / expo;
    sum += term;
    if (std::abs(term) < 1e-19 * std::abs(sum)) break;
    coef *= (s + k) / (k + 1);
    qk *= -q;
  }
  return sum * std::pow(U, -(2 * s - 1));
}

}  // namespace

double total_length(double A, double eps) {
  if (A < 1 || eps <= 0 || eps >= 1)
    fail(ErrorKind::Domain, "total_length: need A >= 1 and eps in (0,1)");
  const double s = (1 + eps) / 2;
  const std::int64_t T =
      std::max<std::int64_t>(static_cast<std::int64_t>(16 * A), 10000);
  double sum = length_term(A, eps, 0);
  for (std::int64_t j = T; j >= 1; --j) sum += 2 * length_term(A, eps, j);

  const double U = static_cast<double>(T + 1);
  const double f = std::pow(A * A + U * U, -s);
  const double fp = -2 * s * U * std::pow(A * A + U * U, -s - 1);
  sum += 2 * (tail_integral(A, s, U) + f / 2 - fp / 12);
  return sum;
}

double invert_length(double ell, double eps) {
  const double top = total_length(1, eps);
  if (!(ell > 0) || ell > top)
    fail(ErrorKind::Domain,
         "invert_length: target length outside (0, total_length(1)]");
  double lo = 1, hi = 2;
  while (total_length(hi, eps) > ell) {
    lo = hi;
    hi *= 2;
    if (hi > 1e16) fail(ErrorKind::Numeric, "invert_length: no bracket");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (total_length(mid, eps) > ell ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace nilreg
