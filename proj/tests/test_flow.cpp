#include <doctest.h>

#include <cmath>

#include "nilreg/flow.hpp"
#include "nilreg/lengths.hpp"
#include "nilreg/rng.hpp"

using namespace nilreg;

TEST_CASE("flow basics") {
  for (double x : {0.1, 0.5, 0.9}) CHECK(flow(0, x) == x);

  for (double t : {0.5, -0.5, 2.0, -2.0})
    for (double x : {0.2, 0.7})
      CHECK(flow(-t, flow(t, x)) == doctest::Approx(x).epsilon(1e-10));

  // group law
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const double s = 4 * rng.unit() - 2, t = 4 * rng.unit() - 2;
    const double x = 0.02 + 0.96 * rng.unit();
    CHECK(flow(s, flow(t, x)) == doctest::Approx(flow(s + t, x)).epsilon(1e-9));
  }

  // conserved quantity after inversion
  for (double t : {-3.0, 1.0, 7.0})
    for (double x : {0.05, 0.4, 0.97}) {
      const double y = flow(t, x);
      CHECK(flow_conserved(y) - flow_conserved(x) ==
            doctest::Approx(t).epsilon(1e-11));
    }

  CHECK_THROWS_AS(flow(60, 0.5), Error);
}

TEST_CASE("flow derivative matches finite differences") {
  const double h = 1e-6;
  Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    const double t = 3 * rng.unit() - 1.5;
    const double x = 0.05 + 0.9 * rng.unit();
    const double fd = (flow(t, x + h) - flow(t, x - h)) / (2 * h);
    CHECK(flow_derivative(t, x) == doctest::Approx(fd).epsilon(1e-6));
  }
}

namespace {

Interval iv(double l, double r) { return Interval{l, r}; }

}  // namespace

TEST_CASE("tsuboi maps") {
  Rng rng(17);

  SUBCASE("zero time gives the affine map") {
    // |I'|/|I| = |J'|/|J| with both derivative targets equal
    TsuboiMap m = tsuboi_map(iv(0, 1), iv(1, 3), iv(10, 11.5), iv(11.5, 14.5));
    CHECK(m.t == doctest::Approx(0.0));
    for (double u : {0.1, 0.45, 0.83}) {
      const double x = 1 + 2 * u;
      CHECK(m.eval(x) == doctest::Approx(11.5 + 3 * u).epsilon(1e-12));
    }
  }

  SUBCASE("endpoint derivatives hit the length ratios") {
    for (int trial = 0; trial < 1000; ++trial) {
      const double a = 0.1 + rng.unit(), b = 0.1 + rng.unit();
      const double c = 0.1 + rng.unit(), d = 0.1 + rng.unit();
      TsuboiMap m = tsuboi_map(iv(-a, 0), iv(0, b), iv(5 - c, 5), iv(5, 5 + d));
      CHECK(m.deriv(0) == doctest::Approx(c / a).epsilon(1e-8));
      CHECK(m.deriv(b) == doctest::Approx(d / b).epsilon(1e-8));
      CHECK(m.eval(0) == 5.0);
      CHECK(m.eval(b) == 5.0 + d);
      // interior derivative approaches the endpoint values
      CHECK(m.deriv(1e-9 * b) == doctest::Approx(c / a).epsilon(1e-5));
    }
  }

  SUBCASE("composition law") {
    for (int trial = 0; trial < 100; ++trial) {
      const double i0 = 0.2 + rng.unit(), i1 = 0.2 + rng.unit();
      const double j0 = 0.2 + rng.unit(), j1 = 0.2 + rng.unit();
      const double k0 = 0.2 + rng.unit(), k1 = 0.2 + rng.unit();
      Interval Ip = iv(-i0, 0), I = iv(0, i1);
      Interval Jp = iv(3 - j0, 3), J = iv(3, 3 + j1);
      Interval Kp = iv(7 - k0, 7), K = iv(7, 7 + k1);
      TsuboiMap ij = tsuboi_map(Ip, I, Jp, J);
      TsuboiMap jk = tsuboi_map(Jp, J, Kp, K);
      TsuboiMap ik = tsuboi_map(Ip, I, Kp, K);
      for (int p = 0; p <= 10; ++p) {
        const double x = I.left + I.len() * (0.05 + 0.09 * p);
        CHECK(jk.eval(ij.eval(x)) == doctest::Approx(ik.eval(x)).epsilon(1e-9));
      }
    }
  }

  SUBCASE("structure errors") {
    CHECK_THROWS_AS(tsuboi_map(iv(0, 1), iv(2, 3), iv(0, 1), iv(1, 2)), Error);
    CHECK_THROWS_AS(tsuboi_map(iv(0, 0), iv(0, 1), iv(0, 1), iv(1, 2)), Error);
  }
}

TEST_CASE("length profile") {
  // single term at j = 0
  CHECK(length_term(3.0, 0.5, 0) == doctest::Approx(std::pow(9.0, -0.75)));

  SUBCASE("L(A) ~ A^-eps (log-log slope within 0.02)") {
    for (double eps : {0.3, 0.6, 0.9}) {
      for (double A : {1.0, 4.0, 37.0, 1000.0}) {
        const double l1 = total_length(A, eps);
        const double l2 = total_length(2 * A, eps);
        const double slope = std::log(l2 / l1) / std::log(2.0);
        CHECK(slope == doctest::Approx(-eps).epsilon(0.035));
      }
    }
  }

  SUBCASE("inverse round trips") {
    for (double A : {1.0, 3.7, 120.0}) {
      const double ell = total_length(A, 0.55);
      CHECK(invert_length(ell, 0.55) == doctest::Approx(A).epsilon(1e-8));
    }
    CHECK_THROWS_AS(invert_length(total_length(1.0, 0.5) * 1.5, 0.5), Error);
  }

  SUBCASE("tail bracketed by an independent quadrature") {
    // sum the head directly and bracket the tail between the integrals from
    // J and from J+1; u = J z^(-1/eps) turns each integral into a smooth
    // Simpson problem on [0,1]
    auto tail_int = [](double A, double eps, double from) {
      const double s = (1 + eps) / 2;
      const int N = 4000;  // even
      auto f = [&](double z) {
        const double r = (A / from) * std::pow(z, 1 / eps);
        return std::pow(1 + r * r, -s);
      };
      double acc = f(0) + f(1);
      for (int k = 1; k < N; ++k) acc += (k % 2 ? 4.0 : 2.0) * f(1.0 * k / N);
      return acc / (3.0 * N) * std::pow(from, 1 - 2 * s) / eps;
    };
    for (double A : {1.0, 2.5, 12.0}) {
      const double eps = 0.62;
      const std::int64_t J = 1'000'000;
      double head = length_term(A, eps, 0);
      for (std::int64_t j = J; j >= 1; --j) head += 2 * length_term(A, eps, j);
      const double lo = head + 2 * tail_int(A, eps, static_cast<double>(J + 1));
      const double hi = head + 2 * tail_int(A, eps, static_cast<double>(J));
      const double L = total_length(A, eps);
      CHECK(L >= lo - 1e-12 * L);
      CHECK(L <= hi + 1e-12 * L);
      // midpoint estimate pins it well below the 1e-10 relative target
      const double mid = head + 2 * tail_int(A, eps, J + 0.5);
      CHECK(L == doctest::Approx(mid).epsilon(1e-10));
    }
  }
}
