#include "qbn/network.hpp"

#include "qbn/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace qbn {

void Cpt::set_row(int k, std::span<const double> values) {
    if (static_cast<int>(values.size()) != state_count_)
        throw Error("CPT row length mismatch");
    std::copy(values.begin(), values.end(),
              p_.begin() + static_cast<size_t>(k) * state_count_);
}

void Network::add_variable(Variable v, const std::vector<std::string>& parent_names) {
    if (index_.count(v.name))
        throw Error("duplicate variable name: " + v.name);
    std::vector<int> pidx;
    pidx.reserve(parent_names.size());
    for (const auto& pname : parent_names) {
        int p = index_of(pname);
        if (p < 0)
            throw Error("unknown parent '" + pname + "' of variable '" + v.name + "'");
        pidx.push_back(p);
    }
    int id = variable_count();
    index_[v.name] = id;
    variables_.push_back(std::move(v));
    parents_.push_back(std::move(pidx));
    topo_order_.push_back(id);  // insertion order is topological by construction

    int configs = 1;
    for (int p : parents_[id]) configs *= variables_[p].state_count();
    cpts_.emplace_back(configs, variables_[id].state_count());
}

int Network::index_of(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

bool Network::is_parent(int parent, int child) const {
    const auto& ps = parents_[child];
    return std::find(ps.begin(), ps.end(), parent) != ps.end();
}

void Network::set_cpt(int i, Cpt cpt) {
    if (cpt.config_count() != config_count(i) ||
        cpt.state_count() != variables_[i].state_count())
        throw Error("CPT dimensions do not match variable '" + variables_[i].name + "'");
    cpts_[i] = std::move(cpt);
}

int Network::config_count(int i) const {
    int configs = 1;
    for (int p : parents_[i]) configs *= variables_[p].state_count();
    return configs;
}

size_t Network::parameter_count() const {
    size_t n = 0;
    for (int i = 0; i < variable_count(); ++i)
        n += static_cast<size_t>(config_count(i)) * variables_[i].state_count();
    return n;
}

int encode_parent_config(const Network& net, int variable, std::span<const int> parent_states) {
    const auto& parents = net.parents(variable);
    if (parent_states.size() != parents.size())
        throw Error("parent state tuple has wrong arity");
    int k = 0;
    for (size_t d = 0; d < parents.size(); ++d) {
        int card = net.variable(parents[d]).state_count();
        int s = parent_states[d];
        if (s < 0 || s >= card)
            throw Error("parent state index out of range");
        k = k * card + s;
    }
    return k;
}

std::vector<int> decode_parent_config(const Network& net, int variable, int k) {
    const auto& parents = net.parents(variable);
    std::vector<int> states(parents.size());
    for (size_t d = parents.size(); d-- > 0;) {
        int card = net.variable(parents[d]).state_count();
        states[d] = k % card;
        k /= card;
    }
    if (k != 0)
        throw Error("parent configuration index out of range");
    return states;
}

int encode_parent_config(const Network& net, int variable,
                         const std::vector<std::string>& parent_state_labels) {
    const auto& parents = net.parents(variable);
    if (parent_state_labels.size() != parents.size())
        throw Error("parent state tuple has wrong arity");
    std::vector<int> states(parents.size());
    for (size_t d = 0; d < parents.size(); ++d) {
        const Variable& pv = net.variable(parents[d]);
        int s = pv.state_index(parent_state_labels[d]);
        if (s < 0)
            throw Error("unknown state label '" + parent_state_labels[d] +
                        "' for variable '" + pv.name + "'");
        states[d] = s;
    }
    return encode_parent_config(net, variable, states);
}

namespace {

// Cycle check over the parent relation; insertion order normally makes
// this moot, but validation must not rely on how the net was built.
bool has_cycle(const Network& net) {
    int n = net.variable_count();
    std::vector<int> color(n, 0);  // 0 unseen, 1 in progress, 2 done
    // iterative DFS over parent edges
    for (int start = 0; start < n; ++start) {
        if (color[start]) continue;
        std::vector<std::pair<int, size_t>> stack{{start, 0}};
        color[start] = 1;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            const auto& ps = net.parents(v);
            if (next < ps.size()) {
                int p = ps[next++];
                if (color[p] == 1) return true;
                if (color[p] == 0) {
                    color[p] = 1;
                    stack.emplace_back(p, 0);
                }
            } else {
                color[v] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

} // namespace

std::vector<Defect> validate(const Network& net) {
    std::vector<Defect> defects;
    auto add = [&](const std::string& msg) { defects.push_back({msg}); };

    std::set<std::string> names;
    for (int i = 0; i < net.variable_count(); ++i) {
        const Variable& v = net.variable(i);
        if (!names.insert(v.name).second)
            add("duplicate variable name: " + v.name);
        if (v.state_count() < 2)
            add("variable '" + v.name + "' has fewer than 2 states");
        std::set<std::string> labels(v.states.begin(), v.states.end());
        if (static_cast<int>(labels.size()) != v.state_count())
            add("variable '" + v.name + "' has duplicate state labels");
    }

    if (has_cycle(net))
        add("parent graph contains a cycle");

    for (int i = 0; i < net.variable_count(); ++i) {
        const Variable& v = net.variable(i);
        const Cpt& cpt = net.cpt(i);
        if (cpt.config_count() != net.config_count(i) ||
            cpt.state_count() != v.state_count()) {
            std::ostringstream os;
            os << "CPT of '" << v.name << "' has dimensions " << cpt.config_count()
               << "x" << cpt.state_count() << ", expected " << net.config_count(i)
               << "x" << v.state_count();
            add(os.str());
            continue;
        }
        for (int k = 0; k < cpt.config_count(); ++k) {
            double sum = 0.0;
            bool range_ok = true;
            for (int j = 0; j < cpt.state_count(); ++j) {
                double p = cpt.at(k, j);
                if (!(p >= 0.0 && p <= 1.0)) range_ok = false;
                sum += p;
            }
            if (!range_ok) {
                std::ostringstream os;
                os << "CPT of '" << v.name << "' row k=" << k << " has an entry outside [0,1]";
                add(os.str());
            }
            if (std::abs(sum - 1.0) > kRowSumTolerance) {
                std::ostringstream os;
                os << "CPT of '" << v.name << "' row k=" << k << " sums to " << sum;
                add(os.str());
            }
        }
    }
    return defects;
}

double joint_probability(const Network& net, std::span<const int> full_assignment) {
    if (static_cast<int>(full_assignment.size()) != net.variable_count())
        throw Error("assignment length does not match variable count");
    double p = 1.0;
    for (int i = 0; i < net.variable_count(); ++i) {
        int j = full_assignment[i];
        if (j < 0 || j >= net.variable(i).state_count())
            throw Error("assignment is missing variable '" + net.variable(i).name + "'");
        const auto& parents = net.parents(i);
        std::vector<int> pstates(parents.size());
        for (size_t d = 0; d < parents.size(); ++d)
            pstates[d] = full_assignment[parents[d]];
        int k = encode_parent_config(net, i, pstates);
        p *= net.cpt(i).at(k, j);
    }
    return p;
}

double joint_probability(const Network& net,
                         const std::unordered_map<std::string, std::string>& assignment) {
    std::vector<int> full(net.variable_count(), -1);
    for (const auto& [name, label] : assignment) {
        int i = net.index_of(name);
        if (i < 0) throw Error("unknown variable '" + name + "'");
        int j = net.variable(i).state_index(label);
        if (j < 0)
            throw Error("unknown state label '" + label + "' for variable '" + name + "'");
        full[i] = j;
    }
    return joint_probability(net, full);
}

} // namespace qbn
