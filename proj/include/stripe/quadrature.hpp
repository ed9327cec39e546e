#pragma once

#include <functional>

namespace stripe {

// Adaptive Gauss-Kronrod on a finite interval. Returns the integral,
// stores an error estimate in *err if given.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, double* err = nullptr);

}  // namespace stripe
