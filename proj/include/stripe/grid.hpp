#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "stripe/common.hpp"
#include "stripe/params.hpp"
#include "stripe/set1d.hpp"

namespace stripe {

// Periodic d-dimensional set represented by a boolean occupancy lattice of
// n^d cells on [0, L)^d. Indexing wraps modulo n in every axis; cell index
// order is row-major with axis 0 slowest.
class GridSet {
  public:
    GridSet() = default;
    GridSet(int d, double L, int n);

    int dim() const { return d_; }
    double period() const { return L_; }
    int cells_per_side() const { return n_; }
    double cell_side() const { return L_ / n_; }
    long cell_count() const { return total_; }

    bool occupied(long flat) const { return occ_[static_cast<std::size_t>(flat)] != 0; }
    void set(long flat, bool v) { occ_[static_cast<std::size_t>(flat)] = v ? 1 : 0; }

    bool occupied(std::span<const int> idx) const { return occupied(flatten(idx)); }
    void set(std::span<const int> idx, bool v) { set(flatten(idx), v); }

    long flatten(std::span<const int> idx) const;          // wraps mod n
    std::vector<int> unflatten(long flat) const;
    long shifted(long flat, int axis, int delta) const;    // periodic neighbor

    long occupied_count() const;
    double volume() const { return occupied_count() * std::pow(cell_side(), d_); }

    GridSet complement() const;

    // 1D slice along `axis` through the column fixed by the other indices
    // of `anchor` (its axis component is ignored).
    PeriodicSet1D slice(int axis, std::span<const int> anchor) const;

    bool operator==(const GridSet& o) const = default;

  private:
    int d_ = 1;
    double L_ = 1.0;
    int n_ = 1;
    long total_ = 1;
    std::vector<std::uint8_t> occ_;
};

// Grid-aligned cube [corner, corner + extent)^d in cell indices, wrapping
// periodically. extent == n covers the whole torus.
struct Cube {
    std::vector<int> corner;
    int extent = 1;
};

// Directional perimeter: occupied/unoccupied face transitions orthogonal to
// the axis, times s^{d-1}. per1 sums over axes.
double per1_dir(const GridSet& set, int axis);
double per1(const GridSet& set);

// Textual format: header lines (d, L, n, alpha, tau) then row-major 0/1 cell
// rows. Reals use 17 significant digits; round-trips are bit-exact.
void save_gridset(std::ostream& os, const GridSet& set, const KernelParams& P);
struct LoadedGridSet {
    GridSet set;
    double alpha = 0.0;
    double tau = 0.0;
};
LoadedGridSet load_gridset(std::istream& is);

}  // namespace stripe
