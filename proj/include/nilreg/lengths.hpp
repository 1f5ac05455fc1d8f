#pragma once

#include <cstdint>

#include "nilreg/common.hpp"

namespace nilreg {

// One interval length of the profile: (A^2 + j^2)^(-(1+eps)/2).
double length_term(double A, double eps, std::int64_t j);

// L(A) = sum over j in Z of length_term, direct sum plus an integral-series
// tail with Euler-Maclaurin corrections; relative error well under 1e-10.
double total_length(double A, double eps);

// Inverse of the strictly decreasing A -> total_length(A, eps) on [1, inf).
double invert_length(double ell, double eps);

}  // namespace nilreg
