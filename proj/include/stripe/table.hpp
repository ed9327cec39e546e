#pragma once

#include <vector>

#include "stripe/grid.hpp"
#include "stripe/params.hpp"

namespace stripe {

// Pairwise cell-interaction weights for a periodic n^d lattice of side L:
//   W(delta) = sum over periodic images within 1-norm radius R of
//              int_{cell 0} int_{cell delta + image} K(y - x) dy dx,
// stored per periodic offset class (flat index, same layout as GridSet).
// tail_mass is the exact integral of K over |zeta|_1 > R (used as the
// mean-density far-field correction of the exchange term); tail_bound is a
// certified worst-case bound on the normalized energy mass such images can
// carry for any set.
struct CellKernelTable {
    KernelParams params;
    int n = 1;
    double L = 1.0;
    double R = 0.0;
    double tol = 0.0;
    std::vector<double> weights;
    double tail_mass = 0.0;
    double tail_bound = 0.0;

    double weight(long flat_offset) const { return weights[static_cast<std::size_t>(flat_offset)]; }
};

// Integral of K over {|zeta|_1 > rho} in closed form (binomial expansion of
// the radial moment). Requires rho + tau_pow > 0.
double kernel_mass_beyond(const KernelParams& P, double rho);

// Builds the table with tensor Gauss-Legendre quadrature per image, panels
// split at the tent and |.|-kinks. R = 0 picks max(8L, radius achieving tol).
// Requires tau > 0.
CellKernelTable build_kernel_table(const KernelParams& P, double L, int n,
                                   double R = 0.0, double tol = 1e-3);

}  // namespace stripe
