#include "qbn/sampling.hpp"

#include "qbn/error.hpp"
#include "qbn/rng.hpp"

#include <vector>

namespace qbn {

Dataset forward_sample(const Network& net, const SamplingSpec& spec) {
    if (spec.count < 0) throw Error("sample count must be >= 0");
    std::vector<bool> hidden(net.variable_count(), false);
    for (const std::string& name : spec.hidden) {
        int i = net.index_of(name);
        if (i < 0) throw Error("hidden variable '" + name + "' is not in the network");
        hidden[i] = true;
    }

    Dataset data;
    for (int i = 0; i < net.variable_count(); ++i)
        if (!hidden[i]) data.columns.push_back(i);

    Rng rng(spec.seed);
    std::vector<int> full(net.variable_count());
    std::vector<int> pstates;
    data.cases.reserve(spec.count);
    for (int c = 0; c < spec.count; ++c) {
        for (int i : net.topological_order()) {
            const auto& parents = net.parents(i);
            pstates.resize(parents.size());
            for (size_t d = 0; d < parents.size(); ++d) pstates[d] = full[parents[d]];
            int k = encode_parent_config(net, i, pstates);
            full[i] = rng.categorical(net.cpt(i).row(k));
        }
        Case kase{full};
        for (int i = 0; i < net.variable_count(); ++i)
            if (hidden[i]) kase.state[i] = -1;
        data.cases.push_back(std::move(kase));
    }
    return data;
}

} // namespace qbn
