#pragma once
// Randomized checks of the operator identities, shared by the command-line front end
// and the acceptance suite.
#include <cstdint>
#include <string>
#include <vector>

namespace percrit {

struct IdentityCheck {
    std::string identity;
    int sample = 0;
    double x = 0;
    double lhs = 0, rhs = 0;
    double rel_err = 0;
    double tol = 0;
    bool pass = false;
};

struct IdentityOptions {
    int samples = 10;
    std::uint64_t seed = 1;
    double tol = 1e-7;
    double formula_tol = 1e-8;  // F[f](h) against sqrt2 h^2 T'(h^2)
};

std::vector<IdentityCheck> identity_suite(const IdentityOptions& opt = {});

}  // namespace percrit
