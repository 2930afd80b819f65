#pragma once

#include <string>
#include <vector>

#include "ldposc/catalog.hpp"
#include "ldposc/method_file.hpp"
#include "ldposc/types.hpp"

namespace ldposc {

/// Grid for the symplectic ansatz
///   A = [[1 + c11 h^2, h + s h^2], [-h + s h^2, 1 + c22 h^2]],  b = (d1 h, 1 + d2 h)
/// with c11 + c22 = -1 and c11 c22 = s^2 (so det A = 1 identically).
struct SearchConfig {
    std::vector<double> sigma_grid{-0.5, 0.0, 0.5};
    std::vector<double> d_grid{-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<double> probe_h{0.1, 0.3, 0.5, 0.7, 0.9, 1.1, 1.5, 1.9};
    /// Relative tolerance on the modified coefficient at every probe.
    double tolerance = 1e-10;
};

struct SearchHit {
    AnsatzParams params;
    /// Catalog id of the constructed method with the same coefficients, or empty.
    std::string catalog_id;
    /// Largest relative deviation from the target over the probes.
    double max_deviation = 0.0;

    MethodDef method() const;
    MethodFile file() const;
};

/// All grid members whose modified rate for `observable` (alpha = 1) equals the
/// continuous rate at every probe step-size, deduplicated, in grid order.
std::vector<SearchHit> exact_preservation_search(Observable observable,
                                                 const SearchConfig& config = {});

}  // namespace ldposc
