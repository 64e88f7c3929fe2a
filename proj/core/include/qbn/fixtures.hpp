#pragma once

#include "qbn/constraint_set.hpp"
#include "qbn/network.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qbn {

// A bundled ground-truth network with its declared influences, the
// variables treated as hidden when generating data, and the target
// variable scored by quadratic loss.
struct Fixture {
    Network network;
    ConstraintSet constraints;
    std::vector<std::string> hidden;
    std::string target;
};

// Assistance-domain network: one hidden load variable with three
// observed parents and two observed children. Four positive influences,
// all satisfied by the bundled CPTs.
Fixture assistance_fixture();

// Abstract network with two hidden variables feeding an observed target
// node G; six influences of mixed sign, all satisfied.
Fixture abstract_fixture();

// Both fixtures, in the order (assistance, abstract).
std::pair<Fixture, Fixture> fixture_networks();

} // namespace qbn
