#pragma once

#include <string_view>
#include <vector>

#include "ldposc/method.hpp"

namespace ldposc {

/// Built-in methods in display order: symplectic beta-method (beta = 0, 1/2, 1),
/// EX, INT, OPT, theta-method (theta = 1), the two predictor-correctors,
/// the constructed methods M1-M6 and Euler-Maruyama.
const std::vector<MethodDef>& catalog();

/// Resolves a selector: a catalog id ("opt", "m4", "pc-em-bem"), a display
/// name ("OPT"), "midpoint", or a parameterized family "beta:<b>" / "theta:<t>".
/// Throws InvalidMethodError for unknown selectors.
MethodDef find_method(std::string_view selector);

/// Symplectic beta-method, beta in [0, 1], admissible on (0, 2).
MethodDef beta_method(double beta);

/// Stochastic theta-method, theta in [0, 1]. det A < 1 iff theta in (1/2, 1].
MethodDef theta_method(double theta);

/// Symplectic ansatz
///   A = [[1 + c11 h^2, h + c12 h^2], [-h + c21 h^2, 1 + c22 h^2]],  b = (d1 h, 1 + d2 h).
struct AnsatzParams {
    double c11 = 0.0;
    double c12 = 0.0;
    double c21 = 0.0;
    double c22 = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// Builds the ansatz method with the given id and metadata.
MethodDef ansatz_method(std::string id, const AnsatzParams& params, MethodDef::Metadata metadata);

}  // namespace ldposc
