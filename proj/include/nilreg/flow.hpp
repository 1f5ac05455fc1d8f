#pragma once

#include "nilreg/common.hpp"

namespace nilreg {

// Vector field V(x) = x(1-x)^2 on [0,1] and its conserved quantity
// F(x) = ln(x/(1-x)) + 1/(1-x); F(flow(t,x)) = F(x) + t.
double vfield(double x);
double flow_conserved(double x);

// Time-t map of V, solved from the conserved quantity by safeguarded
// Newton; |t| <= 50. Endpoints are fixed exactly.
double flow(double t, double x);
// dy/dx = V(y)/V(x), evaluated in factored form for stability.
double flow_derivative(double t, double x);

struct Interval {
  double left = 0;
  double right = 0;
  double len() const { return right - left; }
};

// Diffeomorphism I -> J with derivative |J'|/|I'| at the left endpoint and
// |J|/|I| at the right one; I' and J' are the left-adjacent neighbours.
struct TsuboiMap {
  Interval I, J;
  double t = 0;
  double dleft = 1, dright = 1;

  double eval(double x) const;
  double deriv(double x) const;  // one-sided values at the endpoints
};

TsuboiMap tsuboi_map(const Interval& Ip, const Interval& I, const Interval& Jp,
                     const Interval& J);

}  // namespace nilreg
