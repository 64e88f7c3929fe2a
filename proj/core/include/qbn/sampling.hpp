#pragma once

#include "qbn/dataset.hpp"
#include "qbn/network.hpp"

#include <cstdint>
#include <set>
#include <string>

namespace qbn {

struct SamplingSpec {
    int count = 0;
    std::set<std::string> hidden;  // variables removed from every record
    uint64_t seed = 0;
};

// Ancestral sampling: each case assigns every variable in topological
// order from its CPT row given the sampled parents, then the hidden
// variables are deleted. Deterministic per seed.
Dataset forward_sample(const Network& net, const SamplingSpec& spec);

} // namespace qbn
