#pragma once

#include <functional>
#include <optional>

#include "psifrac/errors.hpp"
#include "psifrac/fractional_order.hpp"
#include "psifrac/psi_function.hpp"

namespace psifrac {

// Initial value problem data for the integrodifferential equation
//
//   D^{alpha,beta;psi} z(x) = f(x, z(x), W(x)),
//   W(x) = integral_a^x w(x, t, z(t)) dt,
//
// with the weighted initial condition carried by z_a.  Lipschitz data is
// optional: constants (q1, q2) certify uniqueness, coefficient functions
// (q3, q4) feed the growth and dependence envelopes.
struct IvProblem {
    double a = 0.0;
    double b = 1.0;
    FractionalOrder order{0.5, 1.0};
    PsiFunction psi = PsiFunction::identity();
    double z_a = 0.0;

    // f(x, z, W)
    std::function<double(double, double, double)> f;
    // w(x, t, z)
    std::function<double(double, double, double)> w;
    // Set when w is identically zero so sweeps can skip the inner loop.
    bool w_known_zero = false;

    std::optional<double> q1;
    std::optional<double> q2;
    std::function<double(double)> q3;  // empty means absent
    std::function<double(double)> q4;

    double psi_span() const { return psi.psi(b) - psi.psi(a); }

    void validate() const {
        if (!(b > a)) {
            throw construction_error("interval: requires b > a");
        }
        if (!f) {
            throw construction_error("problem: f kernel not set");
        }
        if (!w && !w_known_zero) {
            throw construction_error("problem: w kernel not set");
        }
        if (q1 && !(*q1 >= 0.0)) {
            throw construction_error("lipschitz: q1 must be >= 0");
        }
        if (q2 && !(*q2 >= 0.0)) {
            throw construction_error("lipschitz: q2 must be >= 0");
        }
        psi.check_increasing(a, b);
    }

    bool has_lipschitz_constants() const { return q1.has_value() && q2.has_value(); }
    bool has_lipschitz_functions() const {
        return static_cast<bool>(q3) && static_cast<bool>(q4);
    }

    // Coefficient functions for the envelope evaluators, lifting the
    // constants when explicit functions were not supplied.
    std::function<double(double)> growth_coeff() const {
        if (q3) return q3;
        if (q1) {
            const double c = *q1;
            return [c](double) { return c; };
        }
        return {};
    }
    std::function<double(double)> inner_growth_coeff() const {
        if (q4) return q4;
        if (q2) {
            const double c = *q2;
            return [c](double) { return c; };
        }
        return {};
    }
};

}  // namespace psifrac
