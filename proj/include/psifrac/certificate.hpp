#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "psifrac/errors.hpp"
#include "psifrac/frac_integral.hpp"
#include "psifrac/grid.hpp"
#include "psifrac/problem.hpp"
#include "psifrac/special_functions.hpp"

namespace psifrac {

enum class QVariant { primary, alt };

// Uniqueness certificate for the fixed-point operator on the weighted
// space.  q is the contraction factor
//
//   q = Q1 * Gamma(gamma)/Gamma(alpha+gamma) * S^alpha
//     + Q1 Q2 * Gamma(gamma)/Gamma(alpha+gamma+1) * S^(alpha+1),
//
// with S the psi-span of the interval.  The alt variant keeps
// Gamma(alpha+gamma) in the second denominator; both are exposed because
// the two published forms of the estimate disagree and the difference is
// checkable.  p bounds the weighted norm of the zero-input image and
// quantifies where the iteration starts, it does not affect uniqueness.
struct Certificate {
    double p = 0.0;
    double q = 0.0;
    bool unique = false;
    double q_variant_alt = 0.0;
};

namespace detail {

inline double q_factor(double q1, double q2, double alpha, double gamma,
                       double span, QVariant variant) {
    const double g_gamma = gamma_fn(gamma);
    const double first = q1 * g_gamma / gamma_fn(alpha + gamma) * std::pow(span, alpha);
    const double second_den =
        (variant == QVariant::primary) ? gamma_fn(alpha + gamma + 1.0)
                                       : gamma_fn(alpha + gamma);
    const double second = q1 * q2 * g_gamma / second_den * std::pow(span, alpha + 1.0);
    return first + second;
}

}  // namespace detail

// Evaluates the certificate.  p is maximized over an n-panel grid; the
// zero-input image needs only the plain fractional integral because the
// integrand f(t, 0, W_0(t)) is bounded.
inline Certificate contraction_certificate(const IvProblem& problem,
                                           std::size_t n = 512,
                                           QVariant variant = QVariant::primary) {
    if (!problem.has_lipschitz_constants()) {
        throw certificate_unavailable_error(
            "contraction_certificate: q1/q2 constants not supplied");
    }
    problem.validate();

    const double alpha = problem.order.alpha();
    const double gamma = problem.order.gamma();
    const double span = problem.psi_span();
    const double q_primary = detail::q_factor(*problem.q1, *problem.q2, alpha,
                                              gamma, span, QVariant::primary);
    const double q_alt = detail::q_factor(*problem.q1, *problem.q2, alpha, gamma,
                                          span, QVariant::alt);

    SolutionGrid grid = make_grid(problem, n);
    const std::size_t count = grid.size();
    std::vector<double> zero_forcing(count);
    for (std::size_t i = 0; i < count; ++i) {
        double w0 = 0.0;
        if (!problem.w_known_zero) {
            // Trapezoid of w(t_i, tau, 0); regular integrand, no corner care.
            for (std::size_t j = 0; j + 1 <= i; ++j) {
                const double left = problem.w(grid.nodes[i], grid.nodes[j], 0.0);
                const double right = problem.w(grid.nodes[i], grid.nodes[j + 1], 0.0);
                w0 += 0.5 * (grid.nodes[j + 1] - grid.nodes[j]) * (left + right);
            }
        }
        zero_forcing[i] = problem.f(grid.nodes[i], 0.0, w0);
    }
    std::vector<double> image = psi_frac_integral(zero_forcing, alpha, grid);

    const double r0 = problem.z_a / gamma_fn(gamma);
    double p = std::abs(r0);
    for (std::size_t i = 1; i < count; ++i) {
        const double weighted =
            r0 + std::pow(grid.psi_span(i), 1.0 - gamma) * image[i];
        p = std::max(p, std::abs(weighted));
    }

    Certificate cert;
    cert.p = p;
    cert.q = (variant == QVariant::primary) ? q_primary : q_alt;
    cert.q_variant_alt = (variant == QVariant::primary) ? q_alt : q_primary;
    cert.unique = cert.q < 1.0;
    return cert;
}

}  // namespace psifrac
