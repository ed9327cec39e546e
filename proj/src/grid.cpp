#include "stripe/grid.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace stripe {

GridSet::GridSet(int d, double L, int n) : d_(d), L_(L), n_(n) {
    if (d < 1 || d > 3) throw std::invalid_argument("GridSet: d must be 1, 2 or 3");
    if (!(L > 0.0)) throw std::invalid_argument("GridSet: L must be > 0");
    if (n < 1 || n > 64) throw std::invalid_argument("GridSet: n must be in [1, 64]");
    total_ = 1;
    for (int i = 0; i < d; ++i) total_ *= n;
    occ_.assign(static_cast<std::size_t>(total_), 0);
}

long GridSet::flatten(std::span<const int> idx) const {
    long f = 0;
    for (int a = 0; a < d_; ++a) f = f * n_ + pmod(static_cast<long>(idx[a]), n_);
    return f;
}

std::vector<int> GridSet::unflatten(long flat) const {
    std::vector<int> idx(d_);
    for (int a = d_ - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % n_);
        flat /= n_;
    }
    return idx;
}

long GridSet::shifted(long flat, int axis, int delta) const {
    // stride of `axis` in the row-major order (axis 0 slowest)
    long stride = 1;
    for (int a = d_ - 1; a > axis; --a) stride *= n_;
    const long base = (flat / (stride * n_)) * (stride * n_);
    const long rem = flat - base;
    const long coord = rem / stride;
    const long within = rem % stride;
    const long nc = pmod(coord + delta, static_cast<long>(n_));
    return base + nc * stride + within;
}

long GridSet::occupied_count() const {
    long c = 0;
    for (auto v : occ_) c += v;
    return c;
}

GridSet GridSet::complement() const {
    GridSet g = *this;
    for (auto& v : g.occ_) v = v ? 0 : 1;
    return g;
}

PeriodicSet1D GridSet::slice(int axis, std::span<const int> anchor) const {
    std::vector<int> idx(anchor.begin(), anchor.end());
    PeriodicSet1D s;
    s.period = L_;
    const double cs = cell_side();
    idx[axis] = 0;
    const bool first = occupied(idx);
    s.inside_at_origin = first;
    bool prev = first;
    for (int t = 1; t <= n_; ++t) {
        idx[axis] = t % n_;
        const bool cur = occupied(idx);
        if (cur != prev && t < n_) s.boundaries.push_back(t * cs);
        if (t == n_ && cur != prev) s.boundaries.insert(s.boundaries.begin(), 0.0);
        prev = cur;
    }
    return s;
}

double per1_dir(const GridSet& set, int axis) {
    long transitions = 0;
    for (long f = 0; f < set.cell_count(); ++f) {
        if (set.occupied(f) != set.occupied(set.shifted(f, axis, 1))) ++transitions;
    }
    return transitions * std::pow(set.cell_side(), set.dim() - 1);
}

double per1(const GridSet& set) {
    double tot = 0.0;
    for (int a = 0; a < set.dim(); ++a) tot += per1_dir(set, a);
    return tot;
}

void save_gridset(std::ostream& os, const GridSet& set, const KernelParams& P) {
    os.precision(17);
    os << "gridset 1\n";
    os << "d " << set.dim() << "\n";
    os << "L " << set.period() << "\n";
    os << "n " << set.cells_per_side() << "\n";
    os << "alpha " << P.alpha << "\n";
    os << "tau " << P.tau << "\n";
    const int n = set.cells_per_side();
    const long rows = set.cell_count() / n;
    for (long r = 0; r < rows; ++r) {
        for (int c = 0; c < n; ++c) os << (set.occupied(r * n + c) ? '1' : '0');
        os << "\n";
    }
}

LoadedGridSet load_gridset(std::istream& is) {
    std::string word;
    int version = 0;
    if (!(is >> word >> version) || word != "gridset" || version != 1) {
        throw std::invalid_argument("load_gridset: not a gridset file");
    }
    int d = 0, n = 0;
    double L = 0.0, alpha = 0.0, tau = 0.0;
    for (int i = 0; i < 5; ++i) {
        if (!(is >> word)) throw std::invalid_argument("load_gridset: truncated header");
        if (word == "d") is >> d;
        else if (word == "L") is >> L;
        else if (word == "n") is >> n;
        else if (word == "alpha") is >> alpha;
        else if (word == "tau") is >> tau;
        else throw std::invalid_argument("load_gridset: unknown header field " + word);
    }
    LoadedGridSet out{GridSet(d, L, n), alpha, tau};
    const long rows = out.set.cell_count() / n;
    for (long r = 0; r < rows; ++r) {
        if (!(is >> word) || static_cast<int>(word.size()) != n) {
            throw std::invalid_argument("load_gridset: bad cell row");
        }
        for (int c = 0; c < n; ++c) {
            if (word[c] != '0' && word[c] != '1') {
                throw std::invalid_argument("load_gridset: cell must be 0 or 1");
            }
            out.set.set(r * n + c, word[c] == '1');
        }
    }
    return out;
}

}  // namespace stripe
