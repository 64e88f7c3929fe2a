#pragma once

#include "qbn/network.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace qbn {

// One observed case, bound to a network: state[i] is the state index of
// variable i, or -1 when the variable is hidden or missing in the case.
struct Case {
    std::vector<int> state;

    bool operator==(const Case&) const = default;
};

// A sequence of cases plus the list of variables that appear as columns
// when the dataset is written to disk. Variables outside `columns` are
// missing in every case.
struct Dataset {
    std::vector<int> columns;  // variable indices, file column order
    std::vector<Case> cases;

    size_t size() const { return cases.size(); }
};

// Builds a case from name -> state label pairs. Unlisted variables are
// missing. Throws Error on unknown names or labels.
Case make_case(const Network& net,
               const std::unordered_map<std::string, std::string>& assignment);

// A case pattern with its multiplicity. Inference-heavy loops run per
// distinct pattern; `first_index` identifies the original case in
// diagnostics.
struct WeightedCase {
    Case pattern;
    double weight = 0.0;
    size_t first_index = 0;
};

// Groups identical cases, preserving first-occurrence order so that
// reductions over the result are deterministic.
std::vector<WeightedCase> aggregate(const Dataset& data);

} // namespace qbn
