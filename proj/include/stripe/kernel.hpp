#pragma once

#include <span>
#include <vector>

#include "stripe/common.hpp"
#include "stripe/params.hpp"

namespace stripe {

// Closed-form constants attached to a kernel:
//   c1 = integral of (|xi|_1 + 1)^{-p} over R^{d-1}  (reduced-kernel prefactor)
//   c2 = 1 / ((q-1)(q-2))                            (double tail integral)
//   c3 = 2 - 2^{3-q} + sum_{k>=3} (-1)^{k+1} k^{-(q-2)}
//   j_c = critical perimeter coefficient, integral of |z_1| K_{alpha,1}
struct KernelConstants {
    double c1 = 1.0;
    double c2 = 0.5;
    double c3 = 0.0;
    double j_c = 1.0;
};

// K(z) = (|z|_1 + tau^{1/beta})^{-p}. Singular at the origin when tau = 0.
double kernel_value(const KernelParams& P, std::span<const double> zeta);

// Khat(z) = c1 * (|z| + tau^{1/beta})^{-q}: the kernel integrated over the
// d-1 perpendicular directions.
double reduced_kernel(const KernelParams& P, double z);

// Closed form of int_c^inf (z - c) (z + tau^{1/beta})^{-q} dz
// = c2 * (c + tau^{1/beta})^{-(q-2)}  (the reduced kernel without c1).
double tail_integral(const KernelParams& P, double c);

// c1 in closed form: 2^{d-1} / prod_{j=0}^{d-2} (q + j). The empty product
// at d = 1 gives 1, so Khat = K on the line.
double c1_closed(const KernelParams& P);

// First absolute moment of the reduced kernel, int_R |z| Khat(z) dz
// = 2 c1 c2 / tau. Requires tau > 0.
double reduced_moment(const KernelParams& P);

// Computes all constants. c3 by accelerated alternating series with a
// certified remainder; j_c by adaptive quadrature on [0, R] plus the exact
// power-law tail; c1 via the closed form, cross-validated against direct
// (d-1)-dimensional quadrature when d >= 3.
KernelConstants constants(const KernelParams& P, double tol = 1e-12);

// Finite-difference witness of complete monotonicity of Khat on a uniform
// grid: checks (-1)^n Delta^n Khat >= -tol for n = 0..order.
struct MonotonicityReport {
    int order = 0;
    bool all_hold = true;
    std::vector<int> violations_per_order;  // count of grid points violating
    double worst = 0.0;                     // most negative signed difference
};
MonotonicityReport complete_monotonicity_report(const KernelParams& P,
                                                std::span<const double> z_grid,
                                                int order, double tol = 1e-9);

}  // namespace stripe
