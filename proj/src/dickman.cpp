#include "factdual/dickman.hpp"

#include <cmath>
#include <stdexcept>

#include "factdual/distribution.hpp"

namespace factdual {

namespace {

// Plain trapezoidal delay integration of rho(a) = 1 - integral_1^a rho(u-1)/u du.
// Grid spacing h = 1/inv_h; integer inv_h puts the integrand kinks on grid nodes,
// so the O(h^2) error model stays valid across integer alpha.
std::vector<double> build_plain(double alpha_max, u64 inv_h) {
    const u64 n = static_cast<u64>(std::llround(alpha_max * static_cast<double>(inv_h)));
    std::vector<double> v(n + 1, 1.0);
    const double h = 1.0 / static_cast<double>(inv_h);
    double integral = 0.0;
    for (u64 i = inv_h + 1; i <= n; ++i) {
        const double a_prev = static_cast<double>(i - 1) * h;
        const double a = static_cast<double>(i) * h;
        const double g_prev = v[i - 1 - inv_h] / a_prev;  // rho(a_prev - 1) / a_prev
        const double g = v[i - inv_h] / a;
        integral += 0.5 * h * (g_prev + g);
        v[i] = 1.0 - integral;
    }
    return v;
}

}  // namespace

double RhoTable::operator()(double alpha) const {
    if (alpha < 0.0) throw std::out_of_range("RhoTable: alpha >= 0 required");
    if (alpha > max_alpha() + 1e-12)
        throw std::out_of_range("RhoTable: table shorter than requested alpha");
    const double pos = alpha * static_cast<double>(inv_h);
    std::size_t i = static_cast<std::size_t>(pos);
    if (i >= values.size() - 1) return values.back();
    const double frac = pos - static_cast<double>(i);
    return values[i] * (1.0 - frac) + values[i + 1] * frac;
}

RhoTable build_rho_table(double alpha_max, u64 inv_h, RhoMethod method) {
    if (alpha_max < 1.0) throw std::invalid_argument("build_rho_table: alpha_max >= 1 required");
    if (inv_h < 64) throw std::invalid_argument("build_rho_table: step must be <= 1/64 (inv_h >= 64)");
    RhoTable table;
    table.inv_h = inv_h;
    table.alpha_max = alpha_max;
    if (method == RhoMethod::trapezoid) {
        table.values = build_plain(alpha_max, inv_h);
    } else {
        const std::vector<double> coarse = build_plain(alpha_max, inv_h);
        const std::vector<double> fine = build_plain(alpha_max, 2 * inv_h);
        table.values.resize(coarse.size());
        for (std::size_t i = 0; i < coarse.size(); ++i)
            table.values[i] = (4.0 * fine[2 * i] - coarse[i]) / 3.0;
    }
    return table;
}

u64 smoothness_bound(u64 x, const Rational& alpha) {
    // y = floor(x^(1/alpha)) = largest y with y^num <= x^den
    return floor_root(x, alpha.num, alpha.den);
}

double smooth_ratio(u64 x, const Rational& alpha, const RhoTable& rho, const StreamOptions& opts) {
    if (alpha.as_double() < 1.0) throw std::invalid_argument("smooth_ratio: alpha >= 1 required");
    if (alpha.as_double() > rho.max_alpha())
        throw std::invalid_argument("smooth_ratio: rho table shorter than alpha");
    const u64 y = smoothness_bound(x, alpha);
    if (y < 2) throw std::invalid_argument("smooth_ratio: x^(1/alpha) < 2");
    const double denom = static_cast<double>(x) * rho(alpha.as_double());
    return static_cast<double>(psi(x, y, opts)) / denom;
}

double rho2_empirical(u64 x, const Rational& alpha, const StreamOptions& opts) {
    if (alpha.as_double() < 1.0) throw std::invalid_argument("rho2_empirical: alpha >= 1 required");
    const u64 y = smoothness_bound(x, alpha);
    return static_cast<double>(psi2(x, y, opts)) / static_cast<double>(x);
}

}  // namespace factdual
