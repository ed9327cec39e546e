#pragma once

#include <stdexcept>

namespace stripe {

// Parameters of the interaction kernel K(z) = (|z|_1 + tau^{1/beta})^{-p}
// on R^d, with the derived exponents kept alongside:
//   p = d + 2 - alpha,  beta = 1 - alpha,  q = p - d + 1 = 3 - alpha.
// q is the decay exponent of the reduced (perpendicular-integrated) kernel.
struct KernelParams {
    int d = 1;
    double alpha = 0.0;
    double tau = 0.0;
    double p = 3.0;
    double beta = 1.0;
    double q = 3.0;
    double tau_pow = 0.0;  // tau^{1/beta}, the kernel's length offset
};

// Validates d >= 1, alpha < 1, tau >= 0 and fills the derived exponents.
inline KernelParams make_params(int d, double alpha, double tau) {
    if (d < 1) throw std::invalid_argument("make_params: d must be >= 1");
    if (!(alpha < 1.0)) throw std::invalid_argument("make_params: alpha must be < 1");
    if (!(tau >= 0.0)) throw std::invalid_argument("make_params: tau must be >= 0");
    KernelParams P;
    P.d = d;
    P.alpha = alpha;
    P.tau = tau;
    P.p = d + 2.0 - alpha;
    P.beta = 1.0 - alpha;
    P.q = P.p - (d - 1.0);  // = 3 - alpha, and p - q = d - 1 exactly
    P.tau_pow = tau > 0.0 ? std::pow(tau, 1.0 / P.beta) : 0.0;
    return P;
}

}  // namespace stripe
