#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "psifrac/errors.hpp"
#include "psifrac/problem.hpp"

namespace psifrac {

// Discrete solution container.  Nodes are uniform in psi-space; the stored
// values are the regularized samples r_i with
//
//   z(x_i) = r_i * (psi(x_i) - psi(a))^(gamma - 1),
//
// so r stays bounded through the endpoint singularity.
struct SolutionGrid {
    std::vector<double> nodes;        // x_i
    std::vector<double> psi_nodes;    // psi(x_i), arithmetic progression
    std::vector<double> regular_values;
    double gamma = 1.0;

    std::size_t size() const noexcept { return nodes.size(); }

    double step() const { return (psi_nodes.back() - psi_nodes.front()) /
                                 static_cast<double>(size() - 1); }

    double psi_span(std::size_t i) const { return psi_nodes[i] - psi_nodes[0]; }

    // Recovered solution value; infinite at the first node when gamma < 1
    // and r_0 != 0.
    double raw_value(std::size_t i) const {
        if (gamma == 1.0) return regular_values[i];
        return regular_values[i] * std::pow(psi_span(i), gamma - 1.0);
    }
};

// Node i sits at psi(x_i) = psi(a) + i * span / n.  Positions come from the
// registered inverse or bisection; the endpoints are pinned exactly.
inline SolutionGrid make_grid(const IvProblem& problem, std::size_t n) {
    if (n < 2) {
        throw invalid_input_error("make_grid: need at least 2 panels");
    }
    problem.validate();

    SolutionGrid grid;
    grid.gamma = problem.order.gamma();
    grid.nodes.resize(n + 1);
    grid.psi_nodes.resize(n + 1);
    grid.regular_values.assign(n + 1, 0.0);

    const double ua = problem.psi.psi(problem.a);
    const double ub = problem.psi.psi(problem.b);
    const double span = ub - ua;
    for (std::size_t i = 0; i <= n; ++i) {
        const double u = ua + span * static_cast<double>(i) / static_cast<double>(n);
        grid.psi_nodes[i] = u;
        grid.nodes[i] = problem.psi.invert(u, problem.a, problem.b);
    }
    grid.nodes.front() = problem.a;
    grid.nodes.back() = problem.b;
    grid.psi_nodes.front() = ua;
    grid.psi_nodes.back() = ub;
    return grid;
}

// Weighted supremum norm: max_i |r_i|.
inline double weighted_norm(const SolutionGrid& grid) {
    if (grid.regular_values.empty()) {
        throw invalid_input_error("weighted_norm: empty grid");
    }
    double m = 0.0;
    for (double r : grid.regular_values) m = std::max(m, std::abs(r));
    return m;
}

// Weighted distance between two solutions on the same grid.
inline double weighted_distance(const SolutionGrid& lhs, const SolutionGrid& rhs) {
    if (lhs.regular_values.size() != rhs.regular_values.size() ||
        lhs.regular_values.empty()) {
        throw invalid_input_error("weighted_distance: incompatible grids");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < lhs.regular_values.size(); ++i) {
        m = std::max(m, std::abs(lhs.regular_values[i] - rhs.regular_values[i]));
    }
    return m;
}

}  // namespace psifrac
