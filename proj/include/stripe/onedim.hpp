#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stripe/kernel.hpp"
#include "stripe/params.hpp"
#include "stripe/set1d.hpp"

namespace stripe {

// Energy density of a periodic 1D set under the reduced kernel:
//   F(E) = (1/L) [ -Per + int Khat(z) (Per |z| - int_0^L |chi(x)-chi(x+z)| dx) dz ].
// Evaluated exactly as a pairwise boundary-interaction sum: the bracket's
// second derivative in z is a train of deltas at boundary differences, so two
// integrations by parts reduce the z-integral to values of the kernel's
// second antiderivative at pair distances, summed over periodic images with
// an Euler-Maclaurin tail. Works at tau = 0 (the singular parts cancel in
// the pairing as long as all gaps are positive).
double f1d_energy(const KernelParams& P, const PeriodicSet1D& set,
                  double tol = 1e-12);

// Energy density of periodic stripes of width h (period 2h):
//   e(h) = -1/h + (4 c1 c2 / h) sum_{k>=1} (-1)^{k+1} (kh + tau^{1/beta})^{-(q-2)}.
double stripe_energy(const KernelParams& P, double h, double tol = 1e-12);

struct OptimalWidth {
    double h_star = 0.0;
    double c_star = 0.0;
    double multistart_spread = 0.0;  // |h| disagreement between starts
};

// Minimizes stripe_energy over h. At tau = 0 the closed form is used:
//   h* = (4 (q-1) c1 c2 eta(q-2))^{1/(q-2)},  C* = -(q-2)/((q-1) h*).
// For tau > 0: 64-point log scan seeded around the tau=0 width, then
// golden-section refinement from two starts.
OptimalWidth optimal_width(const KernelParams& P, double alpha_max = 0.95);

// Per-boundary-point energy term of the slice decomposition:
//   r(E, s) = -1 + int |rho| Khat - (mixed window integrals at s),
// computed by the same exact pairwise reduction (valid for tau >= 0).
// Requires at least 2 boundary points; s must be a boundary of the set.
double r_term_1d(const KernelParams& P, const PeriodicSet1D& set, double s,
                 double tol = 1e-12);
double r_term_1d_index(const KernelParams& P, const PeriodicSet1D& set,
                       std::size_t boundary_index, double tol = 1e-12);

// Closed-form bound -1 + c1 c2 [min(gp^-beta, 1/tau) + min(gm^-beta, 1/tau)].
double r_lower_bound(const KernelParams& P, double gap_minus, double gap_plus);

// Explicit gap threshold (c1 c2)^{1/beta} below which r_lower_bound is
// positive; requires tau < c1 c2.
double eta0_threshold(const KernelParams& P);

struct BruteForceTrace {
    int boundary_count = 0;
    double best_energy = 0.0;
    std::vector<double> best_boundaries;
    long candidates = 0;
};

struct BruteForceResult {
    PeriodicSet1D best;
    double energy = 0.0;
    std::vector<BruteForceTrace> trace;  // best per boundary count
};

// Exhaustive minimization over all placements of 0, 2, ..., max_boundaries
// boundary points on the uniform grid {j L / grid_n}, canonicalized by
// rotation. Ties break toward fewer boundaries, then lexicographic.
BruteForceResult brute_force_min_1d(const KernelParams& P, double L,
                                    int grid_n, int max_boundaries);

}  // namespace stripe
