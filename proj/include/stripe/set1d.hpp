#pragma once

#include <vector>

#include "stripe/common.hpp"

namespace stripe {

// A finite-perimeter periodic subset of the line: strictly increasing
// boundary points in [0, L) plus a flag for which phase contains the origin.
// Zero boundary points encode the empty set or the full circle.
struct PeriodicSet1D {
    double period = 1.0;
    std::vector<double> boundaries;
    bool inside_at_origin = false;

    void validate() const;

    // Per(E, [0,L)) = number of boundary points.
    int perimeter() const { return static_cast<int>(boundaries.size()); }

    // +1 where E is entered (left-to-right), -1 where it is left.
    std::vector<int> signs() const;

    // Consecutive boundary gaps, periodic wrap included. Empty for 0 boundaries.
    std::vector<double> gaps() const;

    double measure() const;  // |E intersect [0, L)|

    PeriodicSet1D complement() const;
    PeriodicSet1D translated(double delta) const;  // (E + delta) mod L

    bool contains(double x) const;
};

struct StripeSpec {
    double h = 1.0;   // stripe width
    double nu = 0.0;  // phase in [0, 2h)
    int k = 1;        // number of periods; L = 2 k h
};

// Periodic stripes: E = union over j of [2jh + nu, (2j+1)h + nu), on L = 2kh.
PeriodicSet1D make_stripes_1d(const StripeSpec& spec);

}  // namespace stripe
