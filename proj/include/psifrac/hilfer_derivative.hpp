#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "psifrac/errors.hpp"
#include "psifrac/frac_integral.hpp"
#include "psifrac/fractional_order.hpp"
#include "psifrac/grid.hpp"
#include "psifrac/special_functions.hpp"

namespace psifrac {

// Numeric composition  I^{b(1-a)} . (d/du) . I^{(1-b)(1-a)}  applied to the
// stored solution, evaluated in psi-space where the grid is uniform.
//
// The inner integral of a solution field behaves like span^alpha at the left
// end, so differencing it directly loses all accuracy near the corner.  The
// middle layer therefore factors it as K * span^alpha with K bounded, applies
// the product rule analytically, and hands the singular factor to the
// corner-aware weighted outer integral.  K's corner value is anchored by a
// two-point fit in the power span^alpha, the leading correction term for
// fields on the solution manifold.  Intended for defect measurement:
// first-order accuracy is the target, not machine precision.
//
// Returns values at the interior nodes x_1 .. x_{count-2}.
inline std::vector<double> psi_hilfer_derivative(const SolutionGrid& grid,
                                                 const FractionalOrder& order) {
    const std::size_t count = grid.size();
    if (count < 5) {
        throw invalid_input_error(
            "psi_hilfer_derivative: needs at least 5 nodes");
    }
    const double alpha = order.alpha();
    const double gamma = order.gamma();
    const double eps_inner = order.inner_order();
    const double eps_outer = order.outer_order();

    // The kernel-power part of the solution lies in the null space of the
    // derivative and is removed exactly up front.
    std::vector<double> reg_shift(count);
    for (std::size_t j = 0; j < count; ++j) {
        reg_shift[j] = grid.regular_values[j] - grid.regular_values[0];
    }

    // Inner layer: I^{eps_inner} of reg_shift * span^{gamma-1}.  The shifted
    // regular factor vanishes at the left end, so no analytic lead survives.
    std::vector<double> inner;
    if (eps_inner > 1e-12) {
        inner = psi_frac_integral_weighted(reg_shift, gamma - 1.0, eps_inner,
                                           grid);
    } else {
        // eps_inner == 0 forces gamma == 1: the weight is identically 1.
        inner = std::move(reg_shift);
    }

    // Bounded factor K = inner * span^{-alpha}.  On the solution manifold K
    // expands in powers of span^alpha, so differentiate it in the variable
    // v = span^alpha, where that expansion is polynomial and quadratic
    // stencils are sharp.  Then
    //   d/du (K * span^alpha) = span^{alpha-1} * alpha * (K + v dK/dv).
    std::vector<double> k(count, 0.0);
    std::vector<double> v(count, 0.0);
    for (std::size_t j = 1; j < count; ++j) {
        v[j] = std::pow(grid.psi_span(j), alpha);
        k[j] = inner[j] / v[j];
    }

    // Quadratic through three points: value and derivative at x.
    const auto quad_value = [](double xa, double ya, double xb, double yb,
                               double xc, double yc, double x) {
        return ya * (x - xb) * (x - xc) / ((xa - xb) * (xa - xc)) +
               yb * (x - xa) * (x - xc) / ((xb - xa) * (xb - xc)) +
               yc * (x - xa) * (x - xb) / ((xc - xa) * (xc - xb));
    };
    const auto quad_deriv = [](double xa, double ya, double xb, double yb,
                               double xc, double yc, double x) {
        return ya * (2.0 * x - xb - xc) / ((xa - xb) * (xa - xc)) +
               yb * (2.0 * x - xa - xc) / ((xb - xa) * (xb - xc)) +
               yc * (2.0 * x - xa - xb) / ((xc - xa) * (xc - xb));
    };

    std::vector<double> factor(count, 0.0);
    factor[0] =
        alpha * quad_value(v[1], k[1], v[2], k[2], v[3], k[3], 0.0);
    for (std::size_t j = 1; j < count; ++j) {
        std::size_t lo = j;
        if (lo > 1) --lo;                    // centered where possible
        if (lo + 2 > count - 1) lo = count - 3;
        const double kv = quad_deriv(v[lo], k[lo], v[lo + 1], k[lo + 1],
                                     v[lo + 2], k[lo + 2], v[j]);
        factor[j] = alpha * (k[j] + v[j] * kv);
    }

    if (eps_outer <= 1e-12) {
        // beta == 0: no outer integral, the derivative itself is the result.
        std::vector<double> out(count - 2);
        for (std::size_t j = 1; j + 1 < count; ++j) {
            out[j - 1] =
                factor[j] * std::pow(grid.psi_span(j), alpha - 1.0);
        }
        return out;
    }

    // Outer layer on factor * span^{alpha-1}.  The corner expansion of
    // factor steps in span^alpha, so a single subtracted term would leave a
    // span^{2*alpha-1} residue that still degrades the first rows.  Subtract
    // the constant and the v-linear term, both integrated in closed form,
    // and quadrature only the residue that genuinely vanishes.
    const double a0 = factor[0];
    const double a1 = 2.0 * alpha *
                      quad_deriv(v[1], k[1], v[2], k[2], v[3], k[3], 0.0);
    std::vector<double> residue(count, 0.0);
    for (std::size_t j = 1; j < count; ++j) {
        residue[j] = (factor[j] - a0 - a1 * v[j]) *
                     std::pow(grid.psi_span(j), alpha - 1.0);
    }
    std::vector<double> outer =
        psi_frac_integral(residue, eps_outer, grid);
    for (std::size_t j = 1; j < count; ++j) {
        const double s = grid.psi_span(j);
        outer[j] += a0 * power_rule(alpha, eps_outer, s) +
                    a1 * power_rule(2.0 * alpha, eps_outer, s);
    }
    return std::vector<double>(outer.begin() + 1, outer.end() - 1);
}

// Applies the derivative to a numerically integrated field and reports the
// worst interior deviation from the original samples.  g holds samples of a
// continuous function on the grid nodes.
//
// On integral images the derivative's two fractional layers collapse by the
// semigroup property: the boundary term of moving d/du outward vanishes
// because the image is zero at the left end, leaving d/du applied to the
// complementary integral of order 1-alpha.  That collapsed form is used
// here; it is the composition's exact value on this class of fields and
// stays first-order at the corner, where the staged form cannot anchor an
// image-manifold expansion.  The smooth factor of the image (image *
// span^{-alpha}) feeds the corner-aware quadrature, and the final derivative
// is a plain central difference of a field with bounded slope.
inline double round_trip_check(const std::vector<double>& g,
                               const FractionalOrder& order,
                               const SolutionGrid& grid) {
    if (g.size() != grid.size()) {
        throw invalid_input_error("round_trip_check: sample count mismatch");
    }
    if (grid.size() < 5) {
        throw invalid_input_error("round_trip_check: needs at least 5 nodes");
    }
    const double alpha = order.alpha();
    const std::vector<double> image = psi_frac_integral(g, alpha, grid);

    std::vector<double> smooth(grid.size(), 0.0);
    for (std::size_t j = 1; j < grid.size(); ++j) {
        smooth[j] = image[j] * std::pow(grid.psi_span(j), -alpha);
    }
    smooth[0] = 2.0 * smooth[1] - smooth[2];

    const std::vector<double> completed =
        psi_frac_integral_weighted(smooth, alpha, 1.0 - alpha, grid);

    const double h = grid.step();
    double worst = 0.0;
    for (std::size_t j = 1; j + 1 < grid.size(); ++j) {
        const double recovered =
            (completed[j + 1] - completed[j - 1]) / (2.0 * h);
        worst = std::max(worst, std::fabs(recovered - g[j]));
    }
    return worst;
}

}  // namespace psifrac
