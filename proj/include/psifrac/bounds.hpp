#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "psifrac/errors.hpp"
#include "psifrac/frac_integral.hpp"
#include "psifrac/grid.hpp"
#include "psifrac/problem.hpp"
#include "psifrac/solver.hpp"
#include "psifrac/special_functions.hpp"

namespace psifrac {

enum class BoundKind { apriori, dependence };

// Pointwise envelope produced by one of the Gronwall-type estimates.
// scale is the leading factor (p2 for the growth bound, eps for the
// dependence bound).
struct BoundEnvelope {
    BoundKind kind = BoundKind::apriori;
    double scale = 0.0;
    std::vector<double> values;
};

// Discrete Gronwall evaluator on arbitrary nodes:
//
//   bound(t_k) = u0 * (1 + integral_0^{t_k} f(s) exp(integral_0^s (f+g)) ds)
//
// with all integrals by trapezoid in the original variable.
inline std::vector<double> nested_gronwall(double u0,
                                              std::span<const double> f,
                                              std::span<const double> g,
                                              std::span<const double> nodes) {
    const std::size_t count = nodes.size();
    if (count < 2 || f.size() != count || g.size() != count) {
        throw invalid_input_error("nested_gronwall: sample/node size mismatch");
    }
    if (!(u0 >= 0.0)) {
        throw invalid_input_error("nested_gronwall: u0 must be nonnegative");
    }
    for (std::size_t i = 0; i < count; ++i) {
        if (!(f[i] >= 0.0) || !(g[i] >= 0.0)) {
            throw invalid_input_error(
                "nested_gronwall: coefficient samples must be nonnegative");
        }
    }

    std::vector<double> bound(count);
    bound[0] = u0;
    double growth = 0.0;  // integral of f+g up to node k
    double outer = 0.0;   // integral of f * exp(growth)
    double prev_weighted = f[0];  // f(t_0) * exp(0)
    for (std::size_t k = 1; k < count; ++k) {
        const double dt = nodes[k] - nodes[k - 1];
        growth += 0.5 * dt * (f[k - 1] + g[k - 1] + f[k] + g[k]);
        const double weighted = f[k] * std::exp(growth);
        outer += 0.5 * dt * (prev_weighted + weighted);
        prev_weighted = weighted;
        bound[k] = u0 * (1.0 + outer);
    }
    return bound;
}

namespace detail {

// Exact integral of (u_m - u)^(alpha-1) times the linear interpolant of g
// over one panel [u_j, u_{j+1}]; d0 = u_m - u_j, d1 = u_m - u_{j+1}.
// Valid on the final panel (d1 = 0) where plain trapezoid diverges.
inline double kernel_panel(double d0, double d1, double h, double alpha,
                           double g_left, double g_right) {
    const double a0 = std::pow(d0, alpha);
    const double a1 = std::pow(d1, alpha);
    const double m0 = (a0 * d0 - a1 * d1) / (alpha + 1.0);
    const double head = (a0 - a1) / alpha;
    const double ramp = (d0 * head - m0) / h;  // integral of kernel*(u-u_j)/h
    return g_left * (head - ramp) + g_right * ramp;
}

inline std::vector<double> coeff_samples(const std::function<double(double)>& q,
                                         const SolutionGrid& grid,
                                         const char* name) {
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out[i] = q(grid.nodes[i]);
        if (!(out[i] >= 0.0)) {
            throw invalid_input_error(std::string(name) +
                                      ": coefficient sample negative on grid");
        }
    }
    return out;
}

// Shared core of the two envelopes.  For each frozen node m it accumulates
//
//   A(t_k) = kernel_scale * integral_a^{t_k} (psi(x_m)-psi(s))^(alpha-1)
//                                             Q3(s) psi'(s) ds
//          + integral_a^{t_k} Q4(s) ds
//
// and then integrates Q3(t) exp(A(t)) psi'(t) against either the moving
// kernel (u_m - u)^(alpha-1) (growth bound) or the frozen constant
// (u_m - u_0)^(alpha-1) (dependence bound).  O(N^2) overall.
inline std::vector<double> envelope_brackets(const SolutionGrid& grid, double alpha,
                                             double kernel_scale,
                                             bool moving_outer_kernel,
                                             double outer_scale,
                                             std::span<const double> q3,
                                             std::span<const double> q4) {
    const std::size_t count = grid.size();
    const double h = grid.step();
    std::vector<double> bracket(count, 1.0);
    std::vector<double> weighted(count);
    for (std::size_t m = 1; m < count; ++m) {
        const double um = grid.psi_nodes[m];
        double accum = 0.0;
        weighted[0] = q3[0];
        for (std::size_t k = 1; k <= m; ++k) {
            const double d0 = um - grid.psi_nodes[k - 1];
            const double d1 = um - grid.psi_nodes[k];
            accum += kernel_scale * kernel_panel(d0, d1, h, alpha, q3[k - 1], q3[k]);
            accum += 0.5 * (grid.nodes[k] - grid.nodes[k - 1]) * (q4[k - 1] + q4[k]);
            weighted[k] = q3[k] * std::exp(accum);
        }
        double outer = 0.0;
        if (moving_outer_kernel) {
            for (std::size_t k = 1; k <= m; ++k) {
                const double d0 = um - grid.psi_nodes[k - 1];
                const double d1 = um - grid.psi_nodes[k];
                outer += kernel_panel(d0, d1, h, alpha, weighted[k - 1], weighted[k]);
            }
        } else {
            for (std::size_t k = 1; k <= m; ++k) {
                outer += 0.5 * h * (weighted[k - 1] + weighted[k]);
            }
            outer *= std::pow(grid.psi_span(m), alpha - 1.0);
        }
        bracket[m] = 1.0 + outer_scale * outer;
    }
    return bracket;
}

}  // namespace detail

// Growth envelope: |z(x)| <= B(x) with
//
//   B(x) = p2 * [1 + 1/Gamma(alpha) * integral_a^x psi'(t)
//            (psi(x)-psi(t))^(alpha-1) Q3(t) exp(A(t)) dt],
//   A(t) = integral_a^t (psi'(s) (psi(x)-psi(s))^(alpha-1) Q3(s)/Gamma(alpha)
//            + Q4(s)) ds,
//
// where p2 is the grid maximum of the zero-input image
// |z_a (psi-psi(a))^(gamma-1)/Gamma(gamma) + I^alpha f(., 0, W_0)|.  The
// first node is excluded from the p2 scan when gamma < 1 (the raw solution
// is unbounded there); the envelope value at the first node is p2 itself.
inline BoundEnvelope apriori_bound(const IvProblem& problem, const SolutionGrid& grid) {
    auto q3_fn = problem.growth_coeff();
    auto q4_fn = problem.inner_growth_coeff();
    if (!q3_fn || !q4_fn) {
        throw bound_unavailable_error("apriori_bound: Lipschitz data not supplied");
    }
    std::vector<double> q3 = detail::coeff_samples(q3_fn, grid, "apriori_bound");
    std::vector<double> q4 = detail::coeff_samples(q4_fn, grid, "apriori_bound");

    const double alpha = problem.order.alpha();
    const double gamma = problem.order.gamma();
    const std::size_t count = grid.size();

    std::vector<double> zero_forcing(count);
    for (std::size_t i = 0; i < count; ++i) {
        double w0 = 0.0;
        if (!problem.w_known_zero) {
            for (std::size_t j = 0; j + 1 <= i; ++j) {
                const double left = problem.w(grid.nodes[i], grid.nodes[j], 0.0);
                const double right = problem.w(grid.nodes[i], grid.nodes[j + 1], 0.0);
                w0 += 0.5 * (grid.nodes[j + 1] - grid.nodes[j]) * (left + right);
            }
        }
        zero_forcing[i] = problem.f(grid.nodes[i], 0.0, w0);
    }
    std::vector<double> image = psi_frac_integral(zero_forcing, alpha, grid);

    const double head = problem.z_a / gamma_fn(gamma);
    double p2 = (gamma == 1.0) ? std::abs(head) : 0.0;
    for (std::size_t i = 1; i < count; ++i) {
        const double value = head * std::pow(grid.psi_span(i), gamma - 1.0) + image[i];
        p2 = std::max(p2, std::abs(value));
    }

    const double inv_ga = 1.0 / gamma_fn(alpha);
    std::vector<double> bracket = detail::envelope_brackets(
        grid, alpha, inv_ga, /*moving_outer_kernel=*/true, inv_ga, q3, q4);

    BoundEnvelope envelope;
    envelope.kind = BoundKind::apriori;
    envelope.scale = p2;
    envelope.values.resize(count);
    for (std::size_t m = 0; m < count; ++m) envelope.values[m] = p2 * bracket[m];
    return envelope;
}

namespace detail {

inline void check_compatible(const IvProblem& lhs, const IvProblem& rhs) {
    if (lhs.a != rhs.a || lhs.b != rhs.b ||
        lhs.order.alpha() != rhs.order.alpha() ||
        lhs.order.beta() != rhs.order.beta()) {
        throw incompatible_problems_error(
            "problems do not share interval and orders");
    }
    for (int i = 0; i <= 16; ++i) {
        const double x = lhs.a + (lhs.b - lhs.a) * i / 16.0;
        const double pl = lhs.psi.psi(x);
        const double pr = rhs.psi.psi(x);
        if (std::abs(pl - pr) > 1e-12 * std::max(1.0, std::abs(pl))) {
            throw incompatible_problems_error("problems use different psi scales");
        }
    }
}

}  // namespace detail

// Dependence envelope for a data perturbation with mismatch eps:
//
//   env(x) = eps * [1 + (psi(x)-psi(a))^(alpha-1) * integral_a^x psi'(t)
//              Q3(t) exp(A(t)) dt],
//   A(t) = integral_a^t (psi'(s) (psi(x)-psi(s))^(alpha-1) Q3(s)/Gamma(gamma)
//            + Q4(s)) ds.
//
// Note the asymmetry against the growth bound: the outer kernel is frozen
// at the left endpoint and the inner scale is Gamma(gamma), not
// Gamma(alpha).  Both shapes are kept as stated by the underlying
// estimates; see the envelope discussion in the README.
inline BoundEnvelope dependence_bound(const IvProblem& problem,
                                      const IvProblem& perturbed, double eps,
                                      const SolutionGrid& grid) {
    detail::check_compatible(problem, perturbed);
    if (!(eps > 0.0)) {
        throw invalid_input_error("dependence_bound: eps must be positive");
    }
    auto q3_fn = problem.growth_coeff();
    auto q4_fn = problem.inner_growth_coeff();
    if (!q3_fn || !q4_fn) {
        throw bound_unavailable_error("dependence_bound: Lipschitz data not supplied");
    }
    std::vector<double> q3 = detail::coeff_samples(q3_fn, grid, "dependence_bound");
    std::vector<double> q4 = detail::coeff_samples(q4_fn, grid, "dependence_bound");

    const double alpha = problem.order.alpha();
    const double inv_gg = 1.0 / gamma_fn(problem.order.gamma());
    std::vector<double> bracket = detail::envelope_brackets(
        grid, alpha, inv_gg, /*moving_outer_kernel=*/false, 1.0, q3, q4);

    BoundEnvelope envelope;
    envelope.kind = BoundKind::dependence;
    envelope.scale = eps;
    envelope.values.resize(grid.size());
    for (std::size_t m = 0; m < grid.size(); ++m) {
        envelope.values[m] = eps * bracket[m];
    }
    return envelope;
}

// Measured data mismatch between a problem and its perturbation along the
// perturbed solution v:
//
//   M(x_i) = |z_a - v_a| (psi(x_i)-psi(a))^(gamma-1) / Gamma(gamma)
//          + 1/Gamma(gamma) * integral_a^{x_i} psi'(t) (psi(x_i)-psi(t))^(alpha-1)
//              |f(t, v, W_v) - f~(t, v, W~_v)| dt,
//
// maximized over nodes i >= 1.  The kernel difference is evaluated along v
// for both problems, which is the quantity the dependence envelope needs.
inline double measure_mismatch(const IvProblem& problem, const IvProblem& perturbed,
                               const SolutionGrid& solution_v,
                               const SolutionGrid& grid) {
    detail::check_compatible(problem, perturbed);
    const std::size_t count = grid.size();
    if (solution_v.size() != count) {
        throw invalid_input_error("measure_mismatch: solution does not match grid");
    }
    const double alpha = problem.order.alpha();
    const double gamma = problem.order.gamma();
    const double h = grid.step();
    const double inv_gg = 1.0 / gamma_fn(gamma);

    std::vector<double> raw = detail::raw_samples(solution_v);
    std::vector<double> df(count);
    for (std::size_t j = 1; j < count; ++j) {
        const double w_base = problem.w_known_zero
                                  ? 0.0
                                  : detail::inner_trapezoid(problem, solution_v, raw, j);
        const double w_pert =
            perturbed.w_known_zero
                ? 0.0
                : detail::inner_trapezoid(perturbed, solution_v, raw, j);
        df[j] = std::abs(problem.f(grid.nodes[j], raw[j], w_base) -
                         perturbed.f(grid.nodes[j], raw[j], w_pert));
    }
    if (gamma == 1.0) {
        df[0] = std::abs(problem.f(grid.nodes[0], raw[0], 0.0) -
                         perturbed.f(grid.nodes[0], raw[0], 0.0));
    } else {
        df[0] = std::max(0.0, 2.0 * df[1] - df[2]);
    }

    const double gap = std::abs(problem.z_a - perturbed.z_a) * inv_gg;
    double mismatch = 0.0;
    for (std::size_t i = 1; i < count; ++i) {
        const double ui = grid.psi_nodes[i];
        double integral = 0.0;
        for (std::size_t k = 1; k <= i; ++k) {
            integral += detail::kernel_panel(ui - grid.psi_nodes[k - 1],
                                             ui - grid.psi_nodes[k], h, alpha,
                                             df[k - 1], df[k]);
        }
        const double value =
            gap * std::pow(grid.psi_span(i), gamma - 1.0) + inv_gg * integral;
        mismatch = std::max(mismatch, value);
    }
    return mismatch;
}

}  // namespace psifrac
