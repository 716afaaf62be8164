#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "psifrac/errors.hpp"
#include "psifrac/fractional_order.hpp"
#include "psifrac/grid.hpp"
#include "psifrac/problem.hpp"
#include "psifrac/psi_function.hpp"

using namespace psifrac;

namespace {

IvProblem basic_problem() {
    IvProblem p;
    p.a = 0.0;
    p.b = 1.0;
    p.order = FractionalOrder(0.5, 1.0);
    p.f = [](double, double, double) { return 0.0; };
    p.w = [](double, double, double) { return 0.0; };
    p.w_known_zero = true;
    return p;
}

PsiFunction square_psi() {
    PsiFunction psi;
    psi.psi = [](double x) { return x * x; };
    psi.psi_prime = [](double x) { return 2.0 * x; };
    psi.label = "power";
    psi.inverse = [](double u) { return std::sqrt(u); };
    return psi;
}

PsiFunction log_psi() {
    PsiFunction psi;
    psi.psi = [](double x) { return std::log(x); };
    psi.psi_prime = [](double x) { return 1.0 / x; };
    psi.label = "log";
    psi.inverse = [](double u) { return std::exp(u); };
    return psi;
}

}  // namespace

TEST_CASE("fractional order recovers the classical limits") {
    // beta = 0 and beta = 1 must hit the endpoint exponents exactly, not
    // just approximately: downstream code switches on gamma == 1.
    CHECK(FractionalOrder(0.37, 0.0).gamma() == 0.37);
    CHECK(FractionalOrder(0.37, 1.0).gamma() == 1.0);
    CHECK(FractionalOrder(0.9, 1.0).gamma() == 1.0);

    const FractionalOrder mid(0.4, 0.25);
    CHECK(mid.gamma() == Catch::Approx(0.4 + 0.25 * 0.6).epsilon(1e-15));
    CHECK(mid.gamma() >= mid.alpha());
    CHECK(mid.gamma() <= 1.0);
    CHECK(mid.inner_order() + mid.outer_order() ==
          Catch::Approx(1.0 - mid.alpha()).epsilon(1e-15));
}

TEST_CASE("fractional order rejects out-of-range parameters") {
    CHECK_THROWS_AS(FractionalOrder(0.0, 0.5), invalid_input_error);
    CHECK_THROWS_AS(FractionalOrder(1.0, 0.5), invalid_input_error);
    CHECK_THROWS_AS(FractionalOrder(-0.2, 0.5), invalid_input_error);
    CHECK_THROWS_AS(FractionalOrder(0.5, -0.01), invalid_input_error);
    CHECK_THROWS_AS(FractionalOrder(0.5, 1.01), invalid_input_error);
}

TEST_CASE("monotonicity probe rejects non-increasing maps") {
    PsiFunction bad;
    bad.psi = [](double x) { return -x; };
    bad.psi_prime = [](double) { return -1.0; };
    bad.label = "decreasing";
    CHECK_THROWS_AS(bad.check_increasing(0.0, 1.0), construction_error);

    PsiFunction flat;
    flat.psi = [](double) { return 1.0; };
    flat.psi_prime = [](double) { return 0.0; };
    flat.label = "flat";
    CHECK_THROWS_AS(flat.check_increasing(0.0, 1.0), construction_error);

    CHECK_NOTHROW(PsiFunction::identity().check_increasing(0.0, 1.0));
}

TEST_CASE("grid nodes for the identity map are uniform") {
    IvProblem p = basic_problem();
    SolutionGrid g = make_grid(p, 4);
    REQUIRE(g.size() == 5);
    const std::vector<double> want{0.0, 0.25, 0.5, 0.75, 1.0};
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(g.nodes[i] == Catch::Approx(want[i]).margin(1e-15));
        CHECK(g.psi_nodes[i] == Catch::Approx(want[i]).margin(1e-15));
        CHECK(g.regular_values[i] == 0.0);
    }
    CHECK(g.nodes.front() == 0.0);
    CHECK(g.nodes.back() == 1.0);
}

TEST_CASE("grid nodes follow registered analytic inverses") {
    IvProblem p = basic_problem();
    p.a = 1.0;
    p.b = 2.0;
    p.psi = square_psi();
    SolutionGrid g = make_grid(p, 3);
    REQUIRE(g.size() == 4);
    CHECK(g.nodes[0] == 1.0);
    CHECK(g.nodes[1] == Catch::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(g.nodes[2] == Catch::Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK(g.nodes[3] == 2.0);

    IvProblem q = basic_problem();
    q.a = 1.0;
    q.b = std::exp(1.0);
    q.psi = log_psi();
    SolutionGrid lg = make_grid(q, 2);
    REQUIRE(lg.size() == 3);
    CHECK(lg.nodes[1] == Catch::Approx(std::exp(0.5)).epsilon(1e-14));
}

TEST_CASE("grid bisection fallback matches the analytic inverse") {
    IvProblem p = basic_problem();
    p.a = 1.0;
    p.b = 2.0;
    p.psi = square_psi();
    SolutionGrid exact = make_grid(p, 16);

    p.psi.inverse = nullptr;
    SolutionGrid bisected = make_grid(p, 16);
    for (std::size_t i = 0; i < exact.size(); ++i) {
        CHECK(std::fabs(exact.nodes[i] - bisected.nodes[i]) < 1e-12);
    }
}

TEST_CASE("psi values of grid nodes form an arithmetic progression") {
    IvProblem p = basic_problem();
    p.a = 0.5;
    p.b = 2.0;
    p.psi.psi = [](double x) { return std::exp(0.7 * x); };
    p.psi.psi_prime = [](double x) { return 0.7 * std::exp(0.7 * x); };
    p.psi.label = "exp";
    p.psi.inverse = nullptr;
    SolutionGrid g = make_grid(p, 64);
    const double ua = g.psi_nodes.front();
    const double span = g.psi_nodes.back() - ua;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double want = ua + span * static_cast<double>(i) / 64.0;
        CHECK(std::fabs(p.psi.psi(g.nodes[i]) - want) < 1e-12 * span);
    }
}

TEST_CASE("grid construction rejects degenerate requests") {
    IvProblem p = basic_problem();
    CHECK_THROWS_AS(make_grid(p, 1), invalid_input_error);

    IvProblem bad = basic_problem();
    bad.psi.psi = [](double x) { return std::sin(8.0 * x); };
    bad.psi.psi_prime = [](double x) { return 8.0 * std::cos(8.0 * x); };
    CHECK_THROWS_AS(make_grid(bad, 8), construction_error);
}

TEST_CASE("weighted norm is the max of the stored values") {
    IvProblem p = basic_problem();
    SolutionGrid g = make_grid(p, 10);

    SECTION("zero function") { CHECK(weighted_norm(g) == 0.0); }

    SECTION("alternating signs") {
        for (std::size_t i = 0; i < g.size(); ++i) {
            g.regular_values[i] = (i % 2 == 0) ? 3.0 : -3.0;
        }
        CHECK(weighted_norm(g) == 3.0);
    }

    SECTION("identity solution with unit weight") {
        // gamma = 1, psi(x) = x, z(x) = x: the weight is 1, so the norm is
        // the plain sup over the nodes.
        for (std::size_t i = 0; i < g.size(); ++i) {
            g.regular_values[i] = g.nodes[i];
        }
        CHECK(weighted_norm(g) == 1.0);
    }
}

TEST_CASE("weighted norm is homogeneous and subadditive") {
    IvProblem p = basic_problem();
    SolutionGrid a = make_grid(p, 12);
    SolutionGrid b = make_grid(p, 12);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a.regular_values[i] = std::sin(1.7 * static_cast<double>(i)) * 2.0;
        b.regular_values[i] = std::cos(0.9 * static_cast<double>(i)) - 0.4;
    }
    SolutionGrid scaled = a;
    SolutionGrid sum = a;
    for (std::size_t i = 0; i < a.size(); ++i) {
        scaled.regular_values[i] *= -2.5;
        sum.regular_values[i] += b.regular_values[i];
    }
    CHECK(weighted_norm(scaled) ==
          Catch::Approx(2.5 * weighted_norm(a)).epsilon(1e-15));
    CHECK(weighted_norm(sum) <= weighted_norm(a) + weighted_norm(b) + 1e-15);
}

TEST_CASE("weighted distance demands matching grids") {
    IvProblem p = basic_problem();
    SolutionGrid a = make_grid(p, 8);
    SolutionGrid b = make_grid(p, 8);
    b.regular_values[3] = 0.7;
    CHECK(weighted_distance(a, a) == 0.0);
    CHECK(weighted_distance(a, b) == 0.7);

    SolutionGrid c = make_grid(p, 9);
    CHECK_THROWS_AS(weighted_distance(a, c), invalid_input_error);
}

TEST_CASE("raw values reattach the endpoint weight") {
    IvProblem p = basic_problem();
    p.order = FractionalOrder(0.5, 0.5);  // gamma = 0.75
    SolutionGrid g = make_grid(p, 8);
    for (double& r : g.regular_values) r = 2.0;
    for (std::size_t i = 1; i < g.size(); ++i) {
        CHECK(g.raw_value(i) ==
              Catch::Approx(2.0 * std::pow(g.psi_span(i), -0.25))
                  .epsilon(1e-14));
    }

    SolutionGrid unit = make_grid(basic_problem(), 8);
    for (double& r : unit.regular_values) r = 2.0;
    CHECK(unit.raw_value(0) == 2.0);  // gamma = 1: no weight
}

TEST_CASE("problem validation flags broken data") {
    IvProblem p = basic_problem();
    p.b = p.a;
    CHECK_THROWS_AS(p.validate(), construction_error);

    IvProblem no_f = basic_problem();
    no_f.f = nullptr;
    CHECK_THROWS_AS(no_f.validate(), construction_error);

    IvProblem neg_q = basic_problem();
    neg_q.q1 = -0.5;
    neg_q.q2 = 0.0;
    CHECK_THROWS_AS(neg_q.validate(), construction_error);

    IvProblem ok = basic_problem();
    ok.q1 = 0.3;
    ok.q2 = 0.1;
    CHECK_NOTHROW(ok.validate());
    CHECK(ok.has_lipschitz_constants());
    CHECK(ok.psi_span() == 1.0);
}
