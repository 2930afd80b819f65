#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ldposc/method.hpp"

namespace ldposc::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitNotApplicable = 2,
    kExitInvariant = 3,
};

/// Entry point of the ldp_osc tool; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "lo:hi:n" (linear) or "lo:hi:nlog" (geometric), endpoints included, ascending.
/// Throws DomainError("sweep requires >= 2 points") for n < 2.
std::vector<double> parse_sweep(const std::string& text);

/// "a:b" with a <= b; "inf" and "-inf" accepted.
std::pair<double, double> parse_interval(const std::string& text);

/// Comma-separated positive integers, e.g. "100,1000,10000".
std::vector<long long> parse_count_list(const std::string& text);

/// Catalog selector or path to a method-definition file.
MethodDef resolve_method(const std::string& selector);

}  // namespace ldposc::cli
