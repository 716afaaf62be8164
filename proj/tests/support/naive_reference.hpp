#pragma once

// Brute-force reference implementations for cross-checking the solver.
//
// Everything here mirrors the production discretization conventions (same
// grid, same corner extrapolations, same singularity split) but shares no
// code with it: plain std::tgamma, per-panel antiderivatives evaluated
// directly, no cached weight tables.  Agreement to ~1e-12 on small grids is
// the acceptance bar, so the arithmetic must be independent, not identical.

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include <nlohmann/json.hpp>

#include "psifrac/grid.hpp"
#include "psifrac/problem.hpp"

namespace naive {

// Exact integral over one panel [u_left, u_left + h] of
//   (u_target - u)^(alpha-1) * L(u),
// where L is the linear interpolant taking values g_left, g_right at the
// panel ends.  d0 = u_target - u_left, d1 = d0 - h, both nonnegative.
inline double panel_integral(double d0, double d1, double h, double alpha,
                             double g_left, double g_right) {
    const double slope = (g_right - g_left) / h;
    const double p0 = std::pow(d0, alpha);
    const double p1 = std::pow(d1, alpha);
    const double head = (g_left + slope * d0) * (p0 - p1) / alpha;
    const double tail = slope * (p0 * d0 - p1 * d1) / (alpha + 1.0);
    return head - tail;
}

// Trapezoid of w(x_i, t, z(t)) over [a, x_i] with the same t = a
// extrapolation convention the solver uses when gamma < 1.
inline double inner_memory(const psifrac::IvProblem& problem,
                           const psifrac::SolutionGrid& z,
                           const std::vector<double>& raw, std::size_t i) {
    if (i == 0 || problem.w_known_zero) return 0.0;
    std::vector<double> phi(i + 1);
    for (std::size_t j = 1; j <= i; ++j) {
        phi[j] = problem.w(z.nodes[i], z.nodes[j], raw[j]);
    }
    if (z.gamma == 1.0) {
        phi[0] = problem.w(z.nodes[i], z.nodes[0], raw[0]);
    } else if (i >= 2) {
        phi[0] = phi[1] + (phi[2] - phi[1]) / (z.nodes[2] - z.nodes[1]) *
                              (z.nodes[0] - z.nodes[1]);
    } else {
        phi[0] = phi[1];
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
        acc += 0.5 * (z.nodes[j + 1] - z.nodes[j]) * (phi[j] + phi[j + 1]);
    }
    return acc;
}

// One sweep of the fixed-point map, written as a direct double loop over
// target nodes and source panels.
inline psifrac::SolutionGrid picard_step(const psifrac::SolutionGrid& z,
                                         const psifrac::IvProblem& problem) {
    const std::size_t count = z.size();
    const double alpha = problem.order.alpha();
    const double gamma = problem.order.gamma();
    const double h = z.step();

    std::vector<double> raw(count);
    raw[0] = z.regular_values[0];
    for (std::size_t j = 1; j < count; ++j) {
        raw[j] = z.regular_values[j] * std::pow(z.psi_span(j), gamma - 1.0);
    }

    // Regularized forcing G with the endpoint limit extrapolated.
    std::vector<double> forcing(count);
    for (std::size_t j = 1; j < count; ++j) {
        const double w_j = inner_memory(problem, z, raw, j);
        forcing[j] = std::pow(z.psi_span(j), 1.0 - gamma) *
                     problem.f(z.nodes[j], raw[j], w_j);
    }
    forcing[0] = (gamma == 1.0) ? problem.f(z.nodes[0], raw[0], 0.0)
                                : 2.0 * forcing[1] - forcing[2];

    // I^alpha of G * span^(gamma-1): the constant part of G analytically,
    // the remainder panel by panel.
    std::vector<double> remainder(count, 0.0);
    for (std::size_t j = 1; j < count; ++j) {
        remainder[j] =
            (forcing[j] - forcing[0]) * std::pow(z.psi_span(j), gamma - 1.0);
    }

    const double head = problem.z_a / std::tgamma(gamma);
    psifrac::SolutionGrid next = z;
    next.regular_values[0] = head;
    for (std::size_t i = 1; i < count; ++i) {
        double quad = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            const double d0 = z.psi_nodes[i] - z.psi_nodes[j];
            const double d1 = z.psi_nodes[i] - z.psi_nodes[j + 1];
            quad += panel_integral(d0, d1, h, alpha, remainder[j],
                                   remainder[j + 1]);
        }
        quad /= std::tgamma(alpha);
        const double lead = forcing[0] * std::tgamma(gamma) /
                            std::tgamma(gamma + alpha) *
                            std::pow(z.psi_span(i), gamma + alpha - 1.0);
        next.regular_values[i] =
            head + std::pow(z.psi_span(i), 1.0 - gamma) * (lead + quad);
    }
    return next;
}

inline double max_regular_diff(const psifrac::SolutionGrid& lhs,
                               const psifrac::SolutionGrid& rhs) {
    double worst = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        worst = std::max(worst,
                         std::abs(lhs.regular_values[i] - rhs.regular_values[i]));
    }
    return worst;
}

// Random catalog problem covering every psi/f/w kind.  Intervals stay away
// from zero so the log and power maps are always admissible.
inline nlohmann::json random_problem_json(std::mt19937& rng) {
    auto uniform = [&rng](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    auto pick = [&rng](int n) {
        return std::uniform_int_distribution<int>(0, n - 1)(rng);
    };

    const double a = uniform(0.25, 1.0);
    const double b = a + uniform(0.5, 1.5);

    nlohmann::json j;
    j["interval"] = {a, b};
    j["alpha"] = uniform(0.3, 0.9);
    switch (pick(4)) {
        case 0: j["beta"] = 0.0; break;
        case 1: j["beta"] = 1.0; break;
        default: j["beta"] = uniform(0.1, 0.9); break;
    }
    j["z_a"] = uniform(-1.0, 1.0);

    switch (pick(4)) {
        case 0: j["psi"] = {{"kind", "linear"},
                            {"scale", uniform(0.5, 2.0)},
                            {"offset", uniform(-1.0, 1.0)}}; break;
        case 1: j["psi"] = {{"kind", "power"},
                            {"exponent", uniform(1.2, 2.5)}}; break;
        case 2: j["psi"] = {{"kind", "log"}}; break;
        default: j["psi"] = {{"kind", "exp"},
                             {"rate", uniform(0.3, 1.0)}}; break;
    }

    switch (pick(4)) {
        case 0: j["f"] = {{"kind", "zero"}}; break;
        case 1: j["f"] = {{"kind", "constant"},
                          {"value", uniform(-0.5, 0.5)}}; break;
        case 2: j["f"] = {{"kind", "linear-in-z"},
                          {"lambda", uniform(-0.6, 0.6)}}; break;
        default: j["f"] = {{"kind", "linear"},
                           {"lambda", uniform(-0.4, 0.4)},
                           {"mu", uniform(-0.3, 0.3)}}; break;
    }

    switch (pick(4)) {
        case 0: j["w"] = {{"kind", "zero"}}; break;
        case 1: j["w"] = {{"kind", "constant"},
                          {"value", uniform(-0.5, 0.5)}}; break;
        case 2: j["w"] = {{"kind", "linear-in-z"},
                          {"eta", uniform(-0.4, 0.4)}}; break;
        default: j["w"] = {{"kind", "separable"},
                           {"eta", uniform(-0.3, 0.3)},
                           {"x_exponent", static_cast<double>(1 + pick(2))},
                           {"t_exponent", static_cast<double>(1 + pick(2))}};
                 break;
    }
    return j;
}

}  // namespace naive
