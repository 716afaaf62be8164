#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "psifrac/errors.hpp"

namespace psifrac {

namespace detail {

// Lower-triangular coefficient table c_{i,j}, 0 <= j <= i <= n, flattened
// row-major.  Row i holds the product-trapezoid coefficients for the
// integral up to node i.
struct TriangularTable {
    std::size_t n = 0;
    std::vector<double> data;

    double at(std::size_t i, std::size_t j) const {
        return data[i * (i + 1) / 2 + j];
    }
    const double* row(std::size_t i) const { return data.data() + i * (i + 1) / 2; }
};

// Dimensionless product-trapezoid coefficients for the kernel
// (u_i - u)^(alpha-1) on a unit-step grid, scaled so that
//
//   integral_0^{u_i} (u_i - u)^(alpha-1) g(u) du
//     ~= h^alpha / (alpha (alpha + 1)) * sum_j c_{i,j} g_j
//
// with g interpolated linearly on each panel and the kernel integrated
// exactly.  The coefficients are second differences of k^(alpha+1) except
// at the two ends of each row, and are nonnegative for alpha in (0, 1].
inline std::shared_ptr<const TriangularTable> build_coefficients(double alpha,
                                                                 std::size_t n) {
    auto table = std::make_shared<TriangularTable>();
    table->n = n;
    table->data.resize((n + 1) * (n + 2) / 2);

    std::vector<double> pa(n + 2), pa1(n + 2);  // k^alpha, k^(alpha+1)
    for (std::size_t k = 0; k <= n + 1; ++k) {
        pa[k] = std::pow(static_cast<double>(k), alpha);
        pa1[k] = pa[k] * static_cast<double>(k);
    }

    double* out = table->data.data();
    out[0] = 0.0;  // row 0: empty integral
    for (std::size_t i = 1; i <= n; ++i) {
        double* row = out + i * (i + 1) / 2;
        const double di = static_cast<double>(i);
        row[0] = pa1[i - 1] - pa[i] * (di - alpha - 1.0);
        for (std::size_t j = 1; j < i; ++j) {
            const std::size_t k = i - j;
            row[j] = pa1[k + 1] - 2.0 * pa1[k] + pa1[k - 1];
        }
        row[i] = 1.0;
    }
    return table;
}

inline std::shared_ptr<const TriangularTable> coefficient_cache(double alpha,
                                                                std::size_t n) {
    static std::mutex mutex;
    static std::map<std::pair<double, std::size_t>,
                    std::shared_ptr<const TriangularTable>>
        cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(alpha, n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto table = build_coefficients(alpha, n);
    cache.emplace(key, table);
    return table;
}

}  // namespace detail

// Quadrature weights w_{i,j} with
//
//   integral_{u_0}^{u_i} (u_i - u)^(alpha-1) g(u) du ~= sum_j w_{i,j} g_j
//
// for samples g_j on a grid with uniform psi-spacing h.  Row sums equal
// (i h)^alpha / alpha up to roundoff because the rule is exact for
// constants.  The dimensionless part is cached per (alpha, n) and shared
// across sweeps; the h-dependence is a pure h^alpha scale.
class QuadratureWeights {
public:
    QuadratureWeights(double alpha, std::size_t n, double h)
        : alpha_(alpha), h_(h), scale_(std::pow(h, alpha) / (alpha * (alpha + 1.0))),
          table_(detail::coefficient_cache(alpha, n)) {
        if (!(alpha > 0.0 && alpha <= 1.0)) {
            throw invalid_input_error("quadrature: order must lie in (0, 1]");
        }
        if (!(h > 0.0)) {
            throw invalid_input_error("quadrature: step must be positive");
        }
    }

    double alpha() const noexcept { return alpha_; }
    double h() const noexcept { return h_; }
    std::size_t panels() const noexcept { return table_->n; }

    double weight(std::size_t i, std::size_t j) const {
        return scale_ * table_->at(i, j);
    }

    double row_sum(std::size_t i) const {
        const double* row = table_->row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j <= i; ++j) acc += row[j];
        return scale_ * acc;
    }

    // sum_j w_{i,j} g_j for one row.
    double apply_row(std::size_t i, const double* g) const {
        const double* row = table_->row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j <= i; ++j) acc += row[j] * g[j];
        return scale_ * acc;
    }

private:
    double alpha_;
    double h_;
    double scale_;
    std::shared_ptr<const detail::TriangularTable> table_;
};

}  // namespace psifrac
