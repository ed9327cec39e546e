#include "stripe/multidim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "stripe/distance.hpp"
#include "stripe/kernel.hpp"
#include "stripe/onedim.hpp"

namespace stripe {

namespace {

void check_table(const KernelParams& P, const GridSet& set,
                 const CellKernelTable& table) {
    if (table.n != set.cells_per_side() || table.L != set.period() ||
        table.params.d != set.dim() || table.params.d != P.d ||
        table.params.alpha != P.alpha || table.params.tau != P.tau) {
        throw std::invalid_argument("cell table does not match the set/params");
    }
}

std::vector<std::array<int, 3>> cell_indices(const GridSet& set) {
    std::vector<std::array<int, 3>> out(static_cast<std::size_t>(set.cell_count()));
    for (long f = 0; f < set.cell_count(); ++f) {
        const auto v = set.unflatten(f);
        for (int a = 0; a < set.dim(); ++a) out[f][a] = v[a];
    }
    return out;
}

long flatten_wrapped(const GridSet& set, const std::array<int, 3>& idx) {
    long f = 0;
    const int n = set.cells_per_side();
    for (int a = 0; a < set.dim(); ++a) {
        int c = idx[a] % n;
        if (c < 0) c += n;
        f = f * n + c;
    }
    return f;
}

// Cross-coupling weights X[cell] for one direction:
//   X(a) = sum_delta [occ(a) != occ(a + delta_i e_i)]
//                    [occ(a) != occ(a + delta_perp)] W(delta).
// int_cell w_i = X / d; the v term of a boundary point accumulates X over
// the cells of its two adjacent runs with weight 1/(2d).
std::vector<double> cross_weights(const GridSet& set, const CellKernelTable& table,
                                  int axis) {
    const int d = set.dim();
    const long N = set.cell_count();
    const auto cells = cell_indices(set);
    std::vector<KahanSum> acc(static_cast<std::size_t>(N));
    std::array<int, 3> delta{};
    std::array<int, 3> idx{};
    for (long off = 0; off < N; ++off) {
        long f = off;
        for (int a = d - 1; a >= 0; --a) {
            delta[a] = static_cast<int>(f % set.cells_per_side());
            f /= set.cells_per_side();
        }
        const double w = table.weight(off);
        for (long cell = 0; cell < N; ++cell) {
            const bool me = set.occupied(cell);
            idx = cells[cell];
            idx[axis] += delta[axis];
            if (set.occupied(flatten_wrapped(set, idx)) == me) continue;
            for (int a = 0; a < d; ++a) idx[a] = cells[cell][a] + delta[a];
            idx[axis] = cells[cell][axis];
            if (set.occupied(flatten_wrapped(set, idx)) == me) continue;
            acc[cell].add(w);
        }
    }
    std::vector<double> out(static_cast<std::size_t>(N));
    for (long i = 0; i < N; ++i) out[i] = acc[i].value();
    return out;
}

// Cells of the two runs adjacent to boundary bi of a grid slice, as axis
// positions [t_prev, t_prev + span).
std::pair<int, int> adjacent_run_range(const PeriodicSet1D& sl, std::size_t bi,
                                       double cell_len, int n) {
    const std::size_t nb = sl.boundaries.size();
    const int t_prev =
        static_cast<int>(std::lround(sl.boundaries[(bi + nb - 1) % nb] / cell_len));
    const int t_next =
        static_cast<int>(std::lround(sl.boundaries[(bi + 1) % nb] / cell_len));
    int span = t_next - t_prev;
    while (span <= 0) span += n;
    if (nb == 2 && span == n) {
        // two boundaries: the window (s-, s+) wraps the whole circle
        return {t_prev, n};
    }
    return {t_prev, span};
}

}  // namespace

double EnergyBreakdown::decomposition_total() const {
    KahanSum s;
    for (double v : r_sum) s.add(v);
    for (double v : v_sum) s.add(v);
    for (double v : w_sum) s.add(v);
    return s.value();
}

EnergyBreakdown functional_energy(const KernelParams& P, const GridSet& set,
                                  const CellKernelTable& table) {
    check_table(P, set, table);
    const int d = set.dim();
    EnergyBreakdown out;
    out.per1_dir.resize(d);
    double per_total = 0.0;
    for (int a = 0; a < d; ++a) {
        out.per1_dir[a] = per1_dir(set, a);
        per_total += out.per1_dir[a];
    }
    out.kernel_perimeter = per_total * reduced_moment(P);

    const long N = set.cell_count();
    const auto cells = cell_indices(set);
    KahanSum ex;
    std::array<int, 3> delta{}, idx{};
    for (long off = 0; off < N; ++off) {
        long f = off;
        for (int a = d - 1; a >= 0; --a) {
            delta[a] = static_cast<int>(f % set.cells_per_side());
            f /= set.cells_per_side();
        }
        const double w = table.weight(off);
        long count = 0;
        for (long cell = 0; cell < N; ++cell) {
            for (int a = 0; a < d; ++a) idx[a] = cells[cell][a] + delta[a];
            if (set.occupied(flatten_wrapped(set, idx)) != set.occupied(cell)) ++count;
        }
        if (count) ex.add(count * w);
    }
    // images beyond R enter through the mean-density closed form; the cross
    // terms truncate at R, which can only widen the verified inequality
    const double Ld = std::pow(set.period(), d);
    const double volE = set.volume();
    ex.add(2.0 * volE * (Ld - volE) / Ld * table.tail_mass);
    out.exchange = ex.value();

    out.total = (-per_total + out.kernel_perimeter - out.exchange) / Ld;
    return out;
}

void decomposition_terms(const KernelParams& P, const GridSet& set,
                         const CellKernelTable& table, EnergyBreakdown& out) {
    check_table(P, set, table);
    if (P.tau <= 0.0) throw std::invalid_argument("decomposition_terms: requires tau > 0");
    const int d = set.dim();
    const int n = set.cells_per_side();
    const double Ld = std::pow(set.period(), d);
    const double cell_len = set.cell_side();
    const double sface = std::pow(cell_len, d - 1);
    out.r_sum.assign(d, 0.0);
    out.v_sum.assign(d, 0.0);
    out.w_sum.assign(d, 0.0);

    for (int axis = 0; axis < d; ++axis) {
        const auto X = cross_weights(set, table, axis);
        KahanSum rsum, vsum, wsum;
        for (double x : X) wsum.add(x);

        long columns = 1;
        for (int a = 0; a < d; ++a) {
            if (a != axis) columns *= n;
        }
        std::vector<int> anchor(d, 0);
        for (long colidx = 0; colidx < columns; ++colidx) {
            long f = colidx;
            for (int a = d - 1; a >= 0; --a) {
                if (a == axis) continue;
                anchor[a] = static_cast<int>(f % n);
                f /= n;
            }
            anchor[axis] = 0;
            const PeriodicSet1D sl = set.slice(axis, anchor);
            if (sl.boundaries.empty()) continue;
            for (std::size_t bi = 0; bi < sl.boundaries.size(); ++bi) {
                rsum.add(sface * r_term_1d_index(P, sl, bi, 1e-11));
                const auto [t0, span] = adjacent_run_range(sl, bi, cell_len, n);
                KahanSum vloc;
                for (int t = t0; t < t0 + span; ++t) {
                    anchor[axis] = t;
                    vloc.add(X[static_cast<std::size_t>(set.flatten(anchor))]);
                }
                anchor[axis] = 0;
                vsum.add(vloc.value());
            }
        }
        out.r_sum[axis] = rsum.value() / Ld;
        out.v_sum[axis] = vsum.value() / (2.0 * d * Ld);
        out.w_sum[axis] = wsum.value() / (d * Ld);
    }
}

BoundCheck lower_bound_check(const KernelParams& P, const GridSet& set,
                             const CellKernelTable& table) {
    EnergyBreakdown eb = functional_energy(P, set, table);
    decomposition_terms(P, set, table, eb);
    BoundCheck bc;
    bc.lhs = eb.total;
    bc.rhs = eb.decomposition_total();
    bc.gap = bc.lhs - bc.rhs;
    return bc;
}

LocalizedEnergy localized_fbar(const KernelParams& P, const GridSet& set,
                               const Cube& Q, const CellKernelTable& table) {
    check_table(P, set, table);
    if (P.tau <= 0.0) throw std::invalid_argument("localized_fbar: requires tau > 0");
    const int d = set.dim();
    const int n = set.cells_per_side();
    if (Q.extent < 1 || Q.extent > n) throw std::invalid_argument("localized_fbar: bad cube");
    if (static_cast<int>(Q.corner.size()) != d) {
        throw std::invalid_argument("localized_fbar: cube dimension mismatch");
    }
    const double cell_len = set.cell_side();
    const double ld = std::pow(Q.extent * cell_len, d);
    const double sface = std::pow(cell_len, d - 1);

    LocalizedEnergy out;
    out.per_direction.assign(d, 0.0);

    for (int axis = 0; axis < d; ++axis) {
        const auto X = cross_weights(set, table, axis);
        KahanSum acc;
        // volume (w) term over the cube's cells
        std::vector<int> idx(d), off(d, 0);
        for (;;) {
            for (int a = 0; a < d; ++a) idx[a] = Q.corner[a] + off[a];
            acc.add(X[static_cast<std::size_t>(set.flatten(idx))] / d);
            int a = d - 1;
            while (a >= 0 && off[a] == Q.extent - 1) off[a--] = 0;
            if (a < 0) break;
            ++off[a];
        }
        // slice terms: columns crossing the cube's perpendicular section,
        // boundary points restricted to the cube's half-open axis range
        std::vector<int> anchor(d, 0), poff(d, 0);
        for (;;) {
            for (int a = 0; a < d; ++a) {
                anchor[a] = (a == axis) ? 0 : Q.corner[a] + poff[a];
            }
            const PeriodicSet1D sl = set.slice(axis, anchor);
            const std::size_t nb = sl.boundaries.size();
            for (std::size_t bi = 0; bi < nb; ++bi) {
                const int t_edge = static_cast<int>(std::lround(sl.boundaries[bi] / cell_len));
                const long rel =
                    pmod(static_cast<long>(t_edge - Q.corner[axis]), static_cast<long>(n));
                if (rel >= Q.extent) continue;
                acc.add(sface * r_term_1d_index(P, sl, bi, 1e-11));
                const auto [t0, span] = adjacent_run_range(sl, bi, cell_len, n);
                KahanSum vloc;
                for (int t = t0; t < t0 + span; ++t) {
                    anchor[axis] = t;
                    vloc.add(X[static_cast<std::size_t>(set.flatten(anchor))]);
                }
                anchor[axis] = 0;
                acc.add(vloc.value() / (2.0 * d));
            }
            int a = d - 1;
            while (a >= 0 && (a == axis || poff[a] == Q.extent - 1)) {
                if (a != axis) poff[a] = 0;
                --a;
            }
            if (a < 0) break;
            ++poff[a];
        }
        out.per_direction[axis] = acc.value() / ld;
        out.total += out.per_direction[axis];
    }
    return out;
}

ClassifyResult classify_cubes(const KernelParams& P, const GridSet& set,
                              const CellKernelTable& table, double l,
                              double eta, double delta, double M, double rho) {
    check_table(P, set, table);
    const int d = set.dim();
    const int n = set.cells_per_side();
    const double cell_len = set.cell_side();
    const int extent = std::max(1, static_cast<int>(std::lround(l / cell_len)));
    if (extent > n) throw std::invalid_argument("classify_cubes: cube larger than the torus");

    const long centers = set.cell_count();
    std::vector<std::vector<double>> dval(d, std::vector<double>(centers));
    for (long z = 0; z < centers; ++z) {
        Cube Q{set.unflatten(z), extent};
        for (int a = 0; a < d; ++a) dval[a][z] = distance_to_stripes_dir(set, Q, a, eta);
    }

    std::vector<char> seed_a0(centers, 0), seed_am1(centers, 0);
    for (long z = 0; z < centers; ++z) {
        double dmin = dval[0][z];
        int nclose = 0;
        for (int a = 0; a < d; ++a) {
            dmin = std::min(dmin, dval[a][z]);
            if (dval[a][z] <= delta) ++nclose;
        }
        if (dmin >= delta) seed_a0[z] = 1;
        if (nclose >= 2) seed_am1[z] = 1;
    }

    const auto dilate = [&](const std::vector<char>& seeds, double radius) {
        std::vector<char> out(centers, 0);
        const int rad = static_cast<int>(std::floor(radius / cell_len + 1e-12));
        std::vector<int> idx(d);
        for (long z = 0; z < centers; ++z) {
            if (!seeds[z]) continue;
            const auto base = set.unflatten(z);
            std::vector<int> off(d, -rad);
            for (;;) {
                for (int a = 0; a < d; ++a) idx[a] = base[a] + off[a];
                out[static_cast<std::size_t>(set.flatten(idx))] = 1;
                int a = d - 1;
                while (a >= 0 && off[a] == rad) off[a--] = -rad;
                if (a < 0) break;
                ++off[a];
            }
        }
        return out;
    };
    const auto a0 = dilate(seed_a0, rho);
    const auto am1 = dilate(seed_am1, 1.0);

    ClassifyResult res;
    res.extent = extent;
    res.labels.assign(centers, 0);
    for (long z = 0; z < centers; ++z) {
        if (am1[z]) {
            res.labels[z] = -1;
        } else if (a0[z]) {
            res.labels[z] = 0;
        } else {
            int dir = 0;
            double best = dval[0][z];
            for (int a = 1; a < d; ++a) {
                if (dval[a][z] < best) {
                    best = dval[a][z];
                    dir = a;
                }
            }
            res.labels[z] = dir + 1;
        }
    }
    for (long z = 0; z < centers; ++z) {
        if (!seed_a0[z]) continue;
        Cube Q{set.unflatten(z), extent};
        if (localized_fbar(P, set, Q, table).total <= M) ++res.a0_below_M;
    }
    return res;
}

StabilityProbe stability_probe(const KernelParams& P, const GridSet& set,
                               const Cube& Q, int axis,
                               const std::vector<int>& cross_cell, double s,
                               const CellKernelTable& table, double eta,
                               double eps) {
    check_table(P, set, table);
    const int d = set.dim();
    const int n = set.cells_per_side();
    const double cell_len = set.cell_side();
    std::vector<int> anchor = cross_cell;
    anchor[axis] = 0;
    const PeriodicSet1D sl = set.slice(axis, anchor);
    std::size_t bi = sl.boundaries.size();
    for (std::size_t i = 0; i < sl.boundaries.size(); ++i) {
        if (std::fabs(sl.boundaries[i] - s) < 0.5 * cell_len) bi = i;
    }
    if (bi == sl.boundaries.size()) {
        throw std::invalid_argument("stability_probe: s is not a slice boundary");
    }

    StabilityProbe out;
    out.r = r_term_1d_index(P, sl, bi, 1e-11);

    const auto X = cross_weights(set, table, axis);
    const auto [t0, span] = adjacent_run_range(sl, bi, cell_len, n);
    KahanSum vloc;
    std::vector<int> idx = cross_cell;
    for (int t = t0; t < t0 + span; ++t) {
        idx[axis] = t;
        vloc.add(X[static_cast<std::size_t>(set.flatten(idx))]);
    }
    out.v = vloc.value() / (2.0 * d) / std::pow(cell_len, d - 1);
    out.sum = out.r + out.v;

    const double eta0 = eta0_threshold(P);
    const double lo = Q.corner[axis] * cell_len;
    const double sp = lo + pmod(s - lo, set.period());
    const double hi = (Q.corner[axis] + Q.extent) * cell_len;
    out.far_from_faces = (sp - lo > eta0) && (hi - sp > eta0);

    const double ldim = Q.extent * cell_len;
    const double threshold = std::pow(eps, d) / (16.0 * std::pow(ldim, d));
    for (int a = 0; a < d; ++a) {
        if (a == axis) continue;
        if (distance_to_stripes_dir(set, Q, a, eta) <= threshold) {
            out.cross_stripe_close = true;
            break;
        }
    }
    return out;
}

}  // namespace stripe
