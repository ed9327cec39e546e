#pragma once

#include <vector>

#include "stripe/grid.hpp"
#include "stripe/params.hpp"
#include "stripe/table.hpp"

namespace stripe {

// Per-direction account of the rescaled functional and its slice
// decomposition. total = (1/L^d)(-sum per1_dir + kernel_perimeter - exchange).
struct EnergyBreakdown {
    std::vector<double> per1_dir;
    double kernel_perimeter = 0.0;
    double exchange = 0.0;
    double total = 0.0;
    std::vector<double> r_sum, v_sum, w_sum;  // decomposition, per direction

    double decomposition_total() const;
};

// Assembles the energy side (perimeters, kernel first moment over boundary
// faces, exchange via the cell table with the mean-density far tail).
EnergyBreakdown functional_energy(const KernelParams& P, const GridSet& set,
                                  const CellKernelTable& table);

// Fills r/v/w: r from the exact per-slice boundary terms, v and w from the
// cross-coupling cell weights of the table.
void decomposition_terms(const KernelParams& P, const GridSet& set,
                         const CellKernelTable& table, EnergyBreakdown& out);

struct BoundCheck {
    double lhs = 0.0;  // functional total
    double rhs = 0.0;  // assembled decomposition
    double gap = 0.0;  // lhs - rhs, >= 0 up to table tolerances
};
BoundCheck lower_bound_check(const KernelParams& P, const GridSet& set,
                             const CellKernelTable& table);

struct LocalizedEnergy {
    std::vector<double> per_direction;
    double total = 0.0;
};
// Localized energy density on the grid-aligned cube: slice terms restricted
// to boundary points inside the cube, volume term to its cells, normalized
// by 1/l^d. Cube membership is half-open per axis.
LocalizedEnergy localized_fbar(const KernelParams& P, const GridSet& set,
                               const Cube& Q, const CellKernelTable& table);

// Cube-center labels: -1 (nearly full/empty in two directions), 0 (far from
// every stripe family), or 1..d (locally close to stripes orthogonal to that
// axis). Dilations: rho around the 0-label seeds, 1.0 around the -1 seeds;
// precedence -1 over 0 over directions.
struct ClassifyResult {
    std::vector<int> labels;          // flat corner index -> label
    int extent = 0;                   // cube size in cells
    long a0_below_M = 0;              // diagnostic: 0-labeled seeds with fbar <= M
};
ClassifyResult classify_cubes(const KernelParams& P, const GridSet& set,
                              const CellKernelTable& table, double l,
                              double eta, double delta, double M, double rho);

struct StabilityProbe {
    double r = 0.0;
    double v = 0.0;
    double sum = 0.0;
    bool far_from_faces = false;    // hypothesis (a): eta0 from the cube's i-faces
    bool cross_stripe_close = false;  // hypothesis (b): some D^j small, j != i
};
// Evaluates the r and v terms at one slice boundary point inside the cube
// and reports the local-stability hypotheses.
StabilityProbe stability_probe(const KernelParams& P, const GridSet& set,
                               const Cube& Q, int axis,
                               const std::vector<int>& cross_cell, double s,
                               const CellKernelTable& table, double eta,
                               double eps);

}  // namespace stripe
