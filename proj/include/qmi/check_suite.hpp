#pragma once

#include "qmi/capacity.hpp"

#include <string>
#include <vector>

namespace qmi {

struct CheckEntry {
    std::string name;
    int dim = 0;
    std::uint64_t seed = 0;
    bool pass = false;
    std::string detail;  // counterexample dump on failure
};

struct CheckSuiteReport {
    std::vector<CheckEntry> entries;
    int failures() const;
};

// Invariant battery over all modules: eigendecomposition round trips,
// Schatten invariants, entropy laws, channel properties, the mutual-entropy
// conditions, and the capacity chains.
CheckSuiteReport check_suite(const std::vector<int>& dims,
                             const std::vector<std::uint64_t>& seeds);

}  // namespace qmi
