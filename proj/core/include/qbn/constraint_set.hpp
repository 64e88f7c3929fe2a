#pragma once

#include "qbn/network.hpp"

#include <string>
#include <vector>

namespace qbn {

enum class Sign { positive, negative };

inline char sign_char(Sign s) { return s == Sign::positive ? '+' : '-'; }

// A signed monotonic relationship between a parent and one of its
// children, relative to the state orders declared on both variables.
struct QualitativeInfluence {
    std::string parent;
    std::string child;
    Sign sign = Sign::positive;

    bool operator==(const QualitativeInfluence&) const = default;
};

struct ConstraintSet {
    std::vector<QualitativeInfluence> influences;

    bool operator==(const ConstraintSet&) const = default;
};

// Checks that every influence names a graph parent/child pair of net
// and that no pair carries two signs. Empty result = valid.
std::vector<Defect> validate(const Network& net, const ConstraintSet& cs);

} // namespace qbn
