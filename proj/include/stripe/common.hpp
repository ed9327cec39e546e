#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace stripe {

// Thrown when a series/quadrature/table cannot certify the requested accuracy.
struct ToleranceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Compensated (Kahan) accumulator. Reductions that feed reports must be
// deterministic, so every multi-term sum in the library goes through this
// in a fixed iteration order.
class KahanSum {
  public:
    void add(double x) {
        const double y = x - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double sqr(double x) { return x * x; }

// Positive modulo for doubles: result in [0, m).
inline double pmod(double x, double m) {
    double r = std::fmod(x, m);
    if (r < 0) r += m;
    if (r >= m) r -= m;  // fmod can return m on ties after the += above
    return r;
}

inline long pmod(long i, long n) {
    long r = i % n;
    return r < 0 ? r + n : r;
}

}  // namespace stripe
