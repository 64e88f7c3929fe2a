#include "qbn/constraint_set.hpp"

#include <set>

namespace qbn {

std::vector<Defect> validate(const Network& net, const ConstraintSet& cs) {
    std::vector<Defect> defects;
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& inf : cs.influences) {
        int w = net.index_of(inf.parent);
        int z = net.index_of(inf.child);
        if (w < 0) {
            defects.push_back({"influence names unknown variable '" + inf.parent + "'"});
            continue;
        }
        if (z < 0) {
            defects.push_back({"influence names unknown variable '" + inf.child + "'"});
            continue;
        }
        if (!net.is_parent(w, z))
            defects.push_back({"influence (" + inf.parent + ", " + inf.child +
                               "): '" + inf.parent + "' is not a parent of '" + inf.child + "'"});
        if (!seen.insert({inf.parent, inf.child}).second)
            defects.push_back({"more than one influence declared for pair (" +
                               inf.parent + ", " + inf.child + ")"});
    }
    return defects;
}

} // namespace qbn
