#pragma once

#include "psifrac/errors.hpp"

namespace psifrac {

// Differentiation order pair.  alpha in (0,1) is the fractional order,
// beta in [0,1] the interpolation type, and gamma = alpha + beta*(1-alpha)
// the induced endpoint exponent.  beta = 0 and beta = 1 give exactly
// gamma = alpha and gamma = 1.
class FractionalOrder {
public:
    FractionalOrder(double alpha, double beta) : alpha_(alpha), beta_(beta) {
        if (!(alpha > 0.0 && alpha < 1.0)) {
            throw invalid_input_error("order: alpha must lie in (0, 1)");
        }
        if (!(beta >= 0.0 && beta <= 1.0)) {
            throw invalid_input_error("order: beta must lie in [0, 1]");
        }
        if (beta == 0.0) {
            gamma_ = alpha;
        } else if (beta == 1.0) {
            gamma_ = 1.0;
        } else {
            gamma_ = alpha + beta * (1.0 - alpha);
        }
    }

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double gamma() const noexcept { return gamma_; }

    // Orders of the two embedded integrals in the derivative composition.
    double inner_order() const noexcept { return (1.0 - beta_) * (1.0 - alpha_); }
    double outer_order() const noexcept { return beta_ * (1.0 - alpha_); }

private:
    double alpha_;
    double beta_;
    double gamma_;
};

}  // namespace psifrac
