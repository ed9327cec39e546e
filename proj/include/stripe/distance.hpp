#pragma once

#include <vector>

#include "stripe/grid.hpp"
#include "stripe/set1d.hpp"

namespace stripe {

// Axis-aligned stripe pattern: a set varying only in coordinate `direction`,
// with the given 1D profile (profile.period is the ambient period L).
struct StripePattern {
    int direction = 0;
    PeriodicSet1D profile;
    int ambient_d = 2;
};

// Rasterizes the pattern onto an n^d grid; profile boundaries are snapped to
// the nearest cell edge (throws if two boundaries collapse onto one edge).
GridSet rasterize_stripes(const StripePattern& pattern, int n);

// Largest snap displacement rasterize_stripes would apply.
double rasterize_snap_error(const StripePattern& pattern, int n);

// All periodic gaps of the profile are >= eta. The empty set and the full
// torus are admissible for every eta.
bool is_admissible(const StripePattern& pattern, double eta);

// m[t] = occupied fraction of the cube's cross-section at the t-th layer
// along `axis`.
std::vector<double> column_profile(const GridSet& set, const Cube& Q, int axis);

// D^i_eta(E, Q): normalized L1 distance on Q to the stripe sets oriented
// along e_i whose interfaces are at least eta apart, interfaces relaxed to
// cell-edge positions. Exact dynamic program over the cube's layers; when Q
// is the whole torus the eta constraint also applies across the wrap.
double distance_to_stripes_dir(const GridSet& set, const Cube& Q, int axis,
                               double eta);

struct DirectionalDistance {
    double value = 0.0;
    int direction = 0;  // argmin axis, smallest index on ties
};
DirectionalDistance distance_to_stripes(const GridSet& set, const Cube& Q,
                                        double eta);

// Exhaustive reference for distance_to_stripes_dir on sub-torus cubes with
// few layers (test oracle).
double distance_dir_enumerated(const GridSet& set, const Cube& Q, int axis,
                               double eta);

// Max of |D(z) - D(z')| * l / |z - z'|_inf over the given corner pairs.
double lipschitz_probe(const GridSet& set, double eta, int extent,
                       const std::vector<std::pair<std::vector<int>, std::vector<int>>>& pairs);

struct TwoDirectionProbe {
    bool applicable = false;
    int dir_i = -1, dir_j = -1;
    double min_volume = 0.0;  // min(|Q \ E|, |E cap Q|), length^d units
};
TwoDirectionProbe two_direction_probe(const GridSet& set, const Cube& Q,
                                      double eta, double delta);

}  // namespace stripe
