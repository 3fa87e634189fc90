#pragma once

#include <string>
#include <vector>

#include "radop/algebra.hpp"

namespace radop {

struct VerifyCheck {
    std::string name;
    bool pass = false;
    double residual = 0.0;
    double tolerance = 0.0;
};

struct VerifyOptions {
    int trials = 100;
    std::uint64_t seed = 1;
    double rel_tol = 1e-8;
};

// Named suites: unitarity, commutation, adjoint, representation,
// algebra-laws, hardy-dirichlet.
std::vector<VerifyCheck> run_verify_suite(const std::string& suite, const VerifyOptions& options);

std::vector<std::string> verify_suite_names();

} // namespace radop
