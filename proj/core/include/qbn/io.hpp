#pragma once

#include "qbn/constraint_set.hpp"
#include "qbn/dataset.hpp"
#include "qbn/network.hpp"

#include <string>

namespace qbn {

// Network file: {"nodes": [{name, states, parents}...], "cpts": {name: [rows]}}.
// Reals are written with round-trip precision (up to 17 significant digits).
// Loading escalates validation defects to errors; rows whose sum is off by
// at most kRowSumTolerance are renormalized, larger deviations are rejected.
Network load_network(const std::string& path);
void save_network(const Network& net, const std::string& path);

// Constraint file: {"influences": [{"parent", "child", "sign"}...]}.
ConstraintSet load_constraints(const std::string& path, const Network& net);
void save_constraints(const ConstraintSet& cs, const std::string& path);

// Dataset file: comma-delimited text, header row of variable names, one
// row per case, missing values written as "?".
Dataset load_dataset(const std::string& path, const Network& net);
void save_dataset(const Dataset& data, const Network& net, const std::string& path);

} // namespace qbn
