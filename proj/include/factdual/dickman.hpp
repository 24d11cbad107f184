#pragma once

#include <vector>

#include "factdual/numeric.hpp"
#include "factdual/sieve.hpp"

namespace factdual {

enum class RhoMethod {
    trapezoid,   // plain trapezoidal delay integration, O(h^2)
    richardson,  // (4*rho_{h/2} - rho_h)/3, the default; needed for 1e-8 accuracy at h = 2^-10
};

struct RhoTable {
    u64 inv_h = 1024;            // grid spacing h = 1/inv_h; integer so kinks sit on nodes
    double alpha_max = 16.0;
    std::vector<double> values;  // values[i] = rho(i*h), i = 0..alpha_max*inv_h

    double step() const { return 1.0 / static_cast<double>(inv_h); }
    double max_alpha() const { return static_cast<double>(values.size() - 1) / static_cast<double>(inv_h); }
    // Linear interpolation; alpha in [0, max_alpha].
    double operator()(double alpha) const;
};

// Solves rho(a) = 1 - integral_1^a rho(u-1) du/u on the grid. Requires inv_h >= 64.
RhoTable build_rho_table(double alpha_max, u64 inv_h, RhoMethod method = RhoMethod::richardson);

// y = floor(x^(1/alpha)) by exact integer arithmetic (largest y with y^num <= x^den
// where alpha = num/den).
u64 smoothness_bound(u64 x, const Rational& alpha);

// Psi(x, floor(x^(1/alpha))) / (x * rho(alpha)).
double smooth_ratio(u64 x, const Rational& alpha, const RhoTable& rho, const StreamOptions& opts = {});

// Psi2(x, floor(x^(1/alpha))) / x, an empirical stand-in for rho_2(alpha).
double rho2_empirical(u64 x, const Rational& alpha, const StreamOptions& opts = {});

}  // namespace factdual
