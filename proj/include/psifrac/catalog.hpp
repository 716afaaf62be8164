#pragma once

#include <cmath>
#include <fstream>
#include <functional>
#include <string>

#include <json.hpp>

#include "psifrac/errors.hpp"
#include "psifrac/problem.hpp"

namespace psifrac {

// A problem definition parsed from a file, keeping the catalog names so
// run artifacts can echo them.
struct ProblemSpec {
    IvProblem problem;
    std::string psi_kind;
    std::string f_kind;
    std::string w_kind;
};

namespace catalog {

using nlohmann::json;

inline double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) {
        throw config_error(std::string("problem file: missing numeric field '") +
                           key + "'");
    }
    return j[key].get<double>();
}

inline double optional_number(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) {
        throw config_error(std::string("problem file: field '") + key +
                           "' must be a number");
    }
    return j[key].get<double>();
}

inline PsiFunction make_psi(const json& spec, double a, double /*b*/) {
    const std::string kind = spec.value("kind", "");
    if (kind == "linear") {
        const double scale = optional_number(spec, "scale", 1.0);
        const double offset = optional_number(spec, "offset", 0.0);
        if (!(scale > 0.0)) {
            throw config_error("psi linear: scale must be positive");
        }
        return {[=](double x) { return offset + scale * x; },
                [=](double) { return scale; },
                "linear",
                [=](double u) { return (u - offset) / scale; }};
    }
    if (kind == "power") {
        const double p = require_number(spec, "exponent");
        if (!(p > 0.0)) {
            throw config_error("psi power: exponent must be positive");
        }
        if (a < 0.0) {
            throw config_error("psi power: interval must start at a >= 0");
        }
        return {[=](double x) { return std::pow(x, p); },
                [=](double x) { return p * std::pow(x, p - 1.0); },
                "power",
                [=](double u) { return std::pow(u, 1.0 / p); }};
    }
    if (kind == "log") {
        if (!(a > 0.0)) {
            throw config_error("psi log: interval must start at a > 0");
        }
        return {[](double x) { return std::log(x); },
                [](double x) { return 1.0 / x; },
                "log",
                [](double u) { return std::exp(u); }};
    }
    if (kind == "exp") {
        const double rate = optional_number(spec, "rate", 1.0);
        if (!(rate > 0.0)) {
            throw config_error("psi exp: rate must be positive");
        }
        return {[=](double x) { return std::exp(rate * x); },
                [=](double x) { return rate * std::exp(rate * x); },
                "exp",
                [=](double u) { return std::log(u) / rate; }};
    }
    throw config_error("problem file: unknown psi kind '" + kind + "'");
}

inline void apply_f(ProblemSpec& out, const json& spec) {
    const std::string kind = spec.value("kind", "");
    out.f_kind = kind;
    if (kind == "zero") {
        out.problem.f = [](double, double, double) { return 0.0; };
        return;
    }
    if (kind == "constant") {
        const double value = require_number(spec, "value");
        out.problem.f = [=](double, double, double) { return value; };
        return;
    }
    if (kind == "linear-in-z") {
        const double lambda = require_number(spec, "lambda");
        out.problem.f = [=](double, double z, double) { return lambda * z; };
        return;
    }
    if (kind == "linear-in-z-and-w" || kind == "linear") {
        const double lambda = optional_number(spec, "lambda", 0.0);
        const double mu = optional_number(spec, "mu", 0.0);
        out.problem.f = [=](double, double z, double w) {
            return lambda * z + mu * w;
        };
        out.f_kind = "linear-in-z-and-w";
        return;
    }
    throw config_error("problem file: unknown f kind '" + kind + "'");
}

inline void apply_w(ProblemSpec& out, const json& spec) {
    const std::string kind = spec.value("kind", "");
    out.w_kind = kind;
    if (kind == "zero") {
        out.problem.w = [](double, double, double) { return 0.0; };
        out.problem.w_known_zero = true;
        return;
    }
    if (kind == "constant") {
        const double value = require_number(spec, "value");
        out.problem.w = [=](double, double, double) { return value; };
        return;
    }
    if (kind == "linear-in-z") {
        const double eta = require_number(spec, "eta");
        out.problem.w = [=](double, double, double z) { return eta * z; };
        return;
    }
    if (kind == "separable") {
        const double eta = require_number(spec, "eta");
        const double px = optional_number(spec, "x_exponent", 1.0);
        const double pt = optional_number(spec, "t_exponent", 1.0);
        out.problem.w = [=](double x, double t, double z) {
            return eta * std::pow(x, px) * std::pow(t, pt) * z;
        };
        return;
    }
    throw config_error("problem file: unknown w kind '" + kind + "'");
}

inline std::function<double(double)> make_coefficient(const json& spec,
                                                      const char* name) {
    if (spec.is_number()) {
        const double c = spec.get<double>();
        if (!(c >= 0.0)) {
            throw config_error(std::string(name) + ": constant must be >= 0");
        }
        return [c](double) { return c; };
    }
    if (spec.is_object()) {
        const std::string kind = spec.value("kind", "");
        if (kind == "constant") {
            const double c = require_number(spec, "value");
            if (!(c >= 0.0)) {
                throw config_error(std::string(name) + ": value must be >= 0");
            }
            return [c](double) { return c; };
        }
        if (kind == "affine") {
            const double c0 = optional_number(spec, "c0", 0.0);
            const double c1 = optional_number(spec, "c1", 0.0);
            if (!(c0 >= 0.0) || !(c1 >= 0.0)) {
                throw config_error(std::string(name) +
                                   ": affine coefficients must be >= 0");
            }
            return [=](double x) { return c0 + c1 * x; };
        }
        throw config_error(std::string(name) + ": unknown coefficient kind '" +
                           kind + "'");
    }
    throw config_error(std::string(name) + ": expected number or object");
}

inline ProblemSpec from_json(const json& j) {
    ProblemSpec out;
    if (!j.contains("interval") || !j["interval"].is_array() ||
        j["interval"].size() != 2) {
        throw config_error("problem file: 'interval' must be [a, b]");
    }
    out.problem.a = j["interval"][0].get<double>();
    out.problem.b = j["interval"][1].get<double>();
    if (!(out.problem.b > out.problem.a)) {
        throw config_error("problem file: interval requires b > a");
    }

    const double alpha = require_number(j, "alpha");
    const double beta = require_number(j, "beta");
    try {
        out.problem.order = FractionalOrder(alpha, beta);
    } catch (const invalid_input_error& e) {
        throw config_error(std::string("problem file: ") + e.what());
    }
    out.problem.z_a = require_number(j, "z_a");

    if (!j.contains("psi") || !j["psi"].is_object()) {
        throw config_error("problem file: 'psi' object required");
    }
    out.problem.psi = make_psi(j["psi"], out.problem.a, out.problem.b);
    out.psi_kind = j["psi"].value("kind", "");

    if (!j.contains("f") || !j["f"].is_object()) {
        throw config_error("problem file: 'f' object required");
    }
    apply_f(out, j["f"]);

    if (j.contains("w")) {
        if (!j["w"].is_object()) {
            throw config_error("problem file: 'w' must be an object");
        }
        apply_w(out, j["w"]);
    } else {
        apply_w(out, json{{"kind", "zero"}});
    }

    if (j.contains("q1")) out.problem.q1 = require_number(j, "q1");
    if (j.contains("q2")) out.problem.q2 = require_number(j, "q2");
    if (j.contains("q1") != j.contains("q2")) {
        throw config_error("problem file: q1 and q2 must be supplied together");
    }
    if (j.contains("q3")) out.problem.q3 = make_coefficient(j["q3"], "q3");
    if (j.contains("q4")) out.problem.q4 = make_coefficient(j["q4"], "q4");
    if (j.contains("q3") != j.contains("q4")) {
        throw config_error("problem file: q3 and q4 must be supplied together");
    }

    try {
        out.problem.validate();
    } catch (const std::exception& e) {
        throw config_error(std::string("problem file: ") + e.what());
    }
    return out;
}

inline ProblemSpec from_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("problem file: JSON parse error: ") +
                           e.what());
    }
    return from_json(j);
}

inline ProblemSpec load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw config_error("problem file: cannot open '" + path + "'");
    }
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return from_string(text);
}

}  // namespace catalog
}  // namespace psifrac
