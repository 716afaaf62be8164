#pragma once

#include <stdexcept>
#include <string>

namespace psifrac {

// Bad user-supplied data: orders, grids, tolerances, sample sizes.
class invalid_input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A problem definition that cannot be instantiated (non-monotone psi,
// interval outside the domain of psi, and so on).
class construction_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Argument outside the working range of a series evaluation.
class unsupported_range_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Lipschitz data required for a certificate or bound is missing.
class certificate_unavailable_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class bound_unavailable_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two problems fed to a comparison do not share interval, orders, or psi.
class incompatible_problems_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Kernel evaluation blew up mid-sweep; carries the node where it happened.
class step_error : public std::runtime_error {
public:
    step_error(const std::string& what, std::size_t node)
        : std::runtime_error(what + " (node " + std::to_string(node) + ")"),
          node_(node) {}
    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

// Problem-file or command-line configuration errors.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace psifrac
