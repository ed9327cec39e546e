#pragma once

#include <functional>

#include "stripe/common.hpp"

namespace stripe {

struct SeriesResult {
    double value = 0.0;
    double error_bound = 0.0;  // certified, includes the rounding floor
};

// Accelerated evaluation of S = sum_{k>=0} (-1)^k a(k) for totally monotone
// a (our terms are all of the form (kh+c)^{-s}, which are moments of a
// positive measure). Uses the Cohen-Villegas-Zagier Chebyshev scheme; the
// certified bound is 4*a(0)*(3+sqrt 8)^{-n} plus a rounding floor.
// Throws ToleranceError if tol cannot be certified.
SeriesResult alternating_sum(const std::function<double(long)>& a, double tol);

// eta(s) = sum_{k>=1} (-1)^{k+1} k^{-s}, s > 0 (Dirichlet eta).
double dirichlet_eta(double s);

// Tail of a lattice sum with cancelling weights:
//   sum_{m=m0..inf} sum_j gamma_j * (x_j + m*L + shift)^{-s}
// requires sum_j gamma_j == 0 (the caller's sign structure guarantees it).
// Euler-Maclaurin with corrections through the 5th derivative; *err_bound
// receives a certified remainder bound. All x_j + m0*L + shift must be > 0.
double cancelling_power_tail(std::span<const double> xs,
                             std::span<const double> gammas, double L,
                             double s, double shift, long m0,
                             double* err_bound);

}  // namespace stripe
