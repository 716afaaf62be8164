#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "psifrac/errors.hpp"

namespace psifrac {

// Strictly increasing C^1 scale function that defines the integration
// geometry.  An analytic inverse may be registered; otherwise inversion
// falls back to bisection on the problem interval.
struct PsiFunction {
    std::function<double(double)> psi;
    std::function<double(double)> psi_prime;
    std::string label;
    std::function<double(double)> inverse;  // optional; empty means bisection

    static PsiFunction identity() {
        return {[](double x) { return x; }, [](double) { return 1.0; },
                "linear", [](double u) { return u; }};
    }

    // Monotonicity probe: psi_prime must be strictly positive and psi values
    // strictly increasing across a uniform sample of [a, b].
    void check_increasing(double a, double b, int probes = 64) const {
        if (!psi || !psi_prime) {
            throw construction_error("psi function or derivative not set");
        }
        double prev = psi(a);
        for (int i = 0; i <= probes; ++i) {
            const double x = a + (b - a) * static_cast<double>(i) / probes;
            if (!(psi_prime(x) > 0.0)) {
                throw construction_error(
                    "psi is not strictly increasing on the interval (label " +
                    label + ")");
            }
            const double v = psi(x);
            if (i > 0 && !(v > prev)) {
                throw construction_error(
                    "psi samples not strictly increasing (label " + label +
                    ")");
            }
            if (i > 0) prev = v;
        }
    }

    // Solve psi(x) = u for x in [a, b].  Bisection tolerance 1e-14 on the
    // abscissa; endpoints are returned exactly when u matches them.
    double invert(double u, double a, double b) const {
        if (inverse) return inverse(u);
        double lo = a;
        double hi = b;
        const double ua = psi(a);
        const double ub = psi(b);
        if (u <= ua) return a;
        if (u >= ub) return b;
        while (hi - lo > 1e-14 * std::max(1.0, std::abs(hi) + std::abs(lo))) {
            const double mid = 0.5 * (lo + hi);
            if (psi(mid) < u) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    }
};

}  // namespace psifrac
