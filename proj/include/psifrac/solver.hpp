#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "psifrac/certificate.hpp"
#include "psifrac/errors.hpp"
#include "psifrac/frac_integral.hpp"
#include "psifrac/grid.hpp"
#include "psifrac/hilfer_derivative.hpp"
#include "psifrac/problem.hpp"
#include "psifrac/special_functions.hpp"

namespace psifrac {

struct SolveReport {
    SolutionGrid solution;
    std::size_t iterations = 0;
    double final_delta = std::numeric_limits<double>::infinity();
    std::optional<double> residual;
    bool certified = false;
    bool converged = false;
    std::vector<double> delta_history;
};

namespace detail {

// Raw solution samples from the regularized ones.  Index 0 is only valid
// when gamma == 1; callers must not touch it otherwise.
inline std::vector<double> raw_samples(const SolutionGrid& z) {
    std::vector<double> raw(z.size());
    raw[0] = z.regular_values[0];
    for (std::size_t j = 1; j < z.size(); ++j) {
        raw[j] = z.regular_values[j] * std::pow(z.psi_span(j), z.gamma - 1.0);
    }
    return raw;
}

// Trapezoid of w(x_i, t, z(t)) over [a, x_i] in the original variable.
// The t = a sample is unbounded when gamma < 1, so it is replaced by the
// one-sided linear extrapolation from the first two interior samples; the
// first panel then carries the O(h) corner bias the rest of the scheme
// tolerates.
inline double inner_trapezoid(const IvProblem& problem, const SolutionGrid& z,
                              std::span<const double> raw, std::size_t i) {
    if (i == 0) return 0.0;
    const double xi = z.nodes[i];
    std::vector<double> phi(i + 1);
    for (std::size_t j = 1; j <= i; ++j) {
        phi[j] = problem.w(xi, z.nodes[j], raw[j]);
    }
    if (z.gamma == 1.0) {
        phi[0] = problem.w(xi, z.nodes[0], raw[0]);
    } else if (i >= 2) {
        const double slope = (phi[2] - phi[1]) / (z.nodes[2] - z.nodes[1]);
        phi[0] = phi[1] + slope * (z.nodes[0] - z.nodes[1]);
    } else {
        phi[0] = phi[1];
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
        acc += 0.5 * (z.nodes[j + 1] - z.nodes[j]) * (phi[j] + phi[j + 1]);
    }
    return acc;
}

}  // namespace detail

// Inner memory integral W(x_i) along the current iterate.
inline double inner_integral(const IvProblem& problem, const SolutionGrid& z,
                             std::size_t node_index) {
    if (node_index >= z.size()) {
        throw invalid_input_error("inner_integral: node index out of range");
    }
    if (problem.w_known_zero) return 0.0;
    std::vector<double> raw = detail::raw_samples(z);
    return detail::inner_trapezoid(problem, z, raw, node_index);
}

// One sweep of the fixed-point operator in regularized form:
//
//   r_new(x_i) = z_a/Gamma(gamma)
//              + (psi(x_i)-psi(a))^(1-gamma) * I^alpha[f(t, z, W)](x_i).
//
// The forcing samples are regularized before quadrature: the integrand is
// written as G(u) * (u-u_0)^(gamma-1) with G continuous, G at the endpoint
// supplied by one-sided extrapolation (or evaluated directly when
// gamma == 1), and the singular factor handled analytically inside
// psi_frac_integral_weighted.  The value at the first node is
// z_a/Gamma(gamma) exactly.
inline SolutionGrid picard_step(const SolutionGrid& z, const IvProblem& problem) {
    const std::size_t count = z.size();
    if (count < 3) {
        throw invalid_input_error("picard_step: need at least 3 nodes");
    }
    const double alpha = problem.order.alpha();
    const double gamma = problem.order.gamma();

    std::vector<double> raw = detail::raw_samples(z);

    std::vector<double> inner(count, 0.0);
    std::size_t at = 0;
    try {
        if (!problem.w_known_zero) {
            for (at = 1; at < count; ++at) {
                inner[at] = detail::inner_trapezoid(problem, z, raw, at);
            }
        }

        std::vector<double> reg_forcing(count);
        for (at = 1; at < count; ++at) {
            const double value = problem.f(z.nodes[at], raw[at], inner[at]);
            if (!std::isfinite(value)) {
                throw step_error("picard_step: forcing evaluated non-finite", at);
            }
            reg_forcing[at] = std::pow(z.psi_span(at), 1.0 - gamma) * value;
        }
        at = 0;
        reg_forcing[0] = (gamma == 1.0)
                             ? problem.f(z.nodes[0], raw[0], 0.0)
                             : 2.0 * reg_forcing[1] - reg_forcing[2];

        std::vector<double> image =
            psi_frac_integral_weighted(reg_forcing, gamma - 1.0, alpha, z);

        SolutionGrid next = z;
        const double head = problem.z_a / gamma_fn(gamma);
        next.regular_values[0] = head;
        for (std::size_t i = 1; i < count; ++i) {
            next.regular_values[i] =
                head + std::pow(z.psi_span(i), 1.0 - gamma) * image[i];
        }
        return next;
    } catch (const step_error&) {
        throw;
    } catch (const std::exception& e) {
        throw step_error(std::string("picard_step: kernel evaluation failed: ") +
                             e.what(),
                         at);
    }
}

// Picard iteration from the constant start r = z_a/Gamma(gamma), stopping
// when the weighted-norm update drops to tol.  Exhausting max_iter is not
// an exception: the report comes back with converged = false.
inline SolveReport solve(const IvProblem& problem, std::size_t n, double tol,
                         std::size_t max_iter) {
    if (!(tol > 0.0)) {
        throw invalid_input_error("solve: tolerance must be positive");
    }
    if (max_iter < 1) {
        throw invalid_input_error("solve: max_iter must be at least 1");
    }

    SolveReport report;
    SolutionGrid current = make_grid(problem, n);
    const double head = problem.z_a / gamma_fn(problem.order.gamma());
    for (double& r : current.regular_values) r = head;

    for (std::size_t sweep = 1; sweep <= max_iter; ++sweep) {
        SolutionGrid next = picard_step(current, problem);
        const double delta = weighted_distance(next, current);
        report.delta_history.push_back(delta);
        current = std::move(next);
        report.iterations = sweep;
        report.final_delta = delta;
        if (delta <= tol) {
            report.converged = true;
            break;
        }
    }
    report.solution = std::move(current);

    if (problem.has_lipschitz_constants()) {
        report.certified =
            contraction_certificate(problem, n, QVariant::primary).unique;
    }
    return report;
}

// Defect of a solution against the equation: composite derivative minus
// forcing, maximized over interior nodes.  First-order diagnostic when
// gamma == 1; for gamma < 1 the corner nodes dominate and their absolute
// defect grows like h^(gamma-1) because the forcing itself diverges there.
inline double residual_check(const SolutionGrid& solution, const IvProblem& problem) {
    const std::size_t count = solution.size();
    std::vector<double> derivative = psi_hilfer_derivative(solution, problem.order);
    std::vector<double> raw = detail::raw_samples(solution);

    double defect = 0.0;
    for (std::size_t i = 1; i + 1 < count; ++i) {
        const double w_i = problem.w_known_zero
                               ? 0.0
                               : detail::inner_trapezoid(problem, solution, raw, i);
        const double forcing = problem.f(solution.nodes[i], raw[i], w_i);
        defect = std::max(defect, std::abs(derivative[i - 1] - forcing));
    }
    return defect;
}

}  // namespace psifrac
