#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "psifrac/errors.hpp"
#include "psifrac/grid.hpp"
#include "psifrac/quadrature.hpp"
#include "psifrac/special_functions.hpp"

namespace psifrac {

// Closed form of the fractional integral of a pure power of the psi-span:
// applying the order-alpha integral to (psi(t) - psi(a))^(delta-1) gives
//
//   Gamma(delta) / Gamma(delta + alpha) * span^(delta + alpha - 1)
//
// evaluated at span = psi(x) - psi(a).
inline double power_rule(double delta, double alpha, double span) {
    if (!(delta > 0.0)) {
        throw invalid_input_error("power_rule: exponent shift must satisfy delta > 0");
    }
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw invalid_input_error("power_rule: order must lie in (0, 1]");
    }
    if (!(span >= 0.0)) {
        throw invalid_input_error("power_rule: span must be nonnegative");
    }
    return gamma_fn(delta) / gamma_fn(delta + alpha) *
           std::pow(span, delta + alpha - 1.0);
}

// Order-alpha fractional integral of continuous samples g on the grid.
// Returns one value per node; the value at the left endpoint is exactly 0.
// Samples must be finite -- an integrand with an endpoint singularity has
// to come through psi_frac_integral_weighted in regularized form instead.
inline std::vector<double> psi_frac_integral(std::span<const double> g,
                                             double alpha,
                                             const SolutionGrid& grid) {
    const std::size_t count = grid.size();
    if (count < 2) {
        throw invalid_input_error("frac_integral: grid too small");
    }
    if (g.size() != count) {
        throw invalid_input_error("frac_integral: sample count does not match grid");
    }
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw invalid_input_error("frac_integral: order must lie in (0, 1]");
    }

    QuadratureWeights wq(alpha, count - 1, grid.step());
    const double inv_gamma = 1.0 / gamma_fn(alpha);
    std::vector<double> out(count);
    out[0] = 0.0;
    for (std::size_t i = 1; i < count; ++i) {
        out[i] = inv_gamma * wq.apply_row(i, g.data());
    }
    return out;
}

// Order-alpha fractional integral of sigma-weighted samples,
//
//   integrand(u) = g(u) * (u - u_0)^sigma,        sigma > -1,
//
// where g is the continuous (regularized) factor sampled at the nodes and
// g[0] carries the endpoint limit.  The constant part g[0] is integrated
// analytically through the power rule; the remainder (g - g[0]) vanishes at
// the endpoint and goes through the product-trapezoid weights.  For pure
// powers (g constant) the result is exact up to roundoff.
inline std::vector<double> psi_frac_integral_weighted(std::span<const double> g,
                                                      double sigma,
                                                      double alpha,
                                                      const SolutionGrid& grid) {
    const std::size_t count = grid.size();
    if (g.size() != count || count < 2) {
        throw invalid_input_error("frac_integral: sample count does not match grid");
    }
    if (!(sigma > -1.0)) {
        throw invalid_input_error("frac_integral: weight exponent must exceed -1");
    }

    const double g0 = g[0];
    std::vector<double> remainder(count);
    remainder[0] = 0.0;
    for (std::size_t i = 1; i < count; ++i) {
        remainder[i] = (g[i] - g0) * std::pow(grid.psi_span(i), sigma);
    }
    std::vector<double> out = psi_frac_integral(remainder, alpha, grid);

    const double delta = sigma + 1.0;
    const double lead = g0 * gamma_fn(delta) / gamma_fn(delta + alpha);
    for (std::size_t i = 1; i < count; ++i) {
        out[i] += lead * std::pow(grid.psi_span(i), delta + alpha - 1.0);
    }
    return out;
}

}  // namespace psifrac
