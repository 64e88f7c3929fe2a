#include "qbn/dataset.hpp"

#include "qbn/error.hpp"

#include <map>

namespace qbn {

Case make_case(const Network& net,
               const std::unordered_map<std::string, std::string>& assignment) {
    Case c{std::vector<int>(net.variable_count(), -1)};
    for (const auto& [name, label] : assignment) {
        int i = net.index_of(name);
        if (i < 0) throw Error("unknown variable '" + name + "'");
        int j = net.variable(i).state_index(label);
        if (j < 0)
            throw Error("unknown state label '" + label + "' for variable '" + name + "'");
        c.state[i] = j;
    }
    return c;
}

std::vector<WeightedCase> aggregate(const Dataset& data) {
    std::vector<WeightedCase> out;
    std::map<std::vector<int>, size_t> index;
    for (size_t l = 0; l < data.cases.size(); ++l) {
        auto [it, fresh] = index.try_emplace(data.cases[l].state, out.size());
        if (fresh)
            out.push_back({data.cases[l], 1.0, l});
        else
            out[it->second].weight += 1.0;
    }
    return out;
}

} // namespace qbn
