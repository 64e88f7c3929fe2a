#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace qbn {

// Row sums of a CPT must match 1 within this tolerance.
inline constexpr double kRowSumTolerance = 1e-9;

// A discrete random variable. The order in which states are listed is
// the total order x_1 < x_2 < ... used by qualitative influences.
struct Variable {
    std::string name;
    std::vector<std::string> states;

    int state_count() const { return static_cast<int>(states.size()); }

    // Index of a state label, -1 if unknown.
    int state_index(const std::string& label) const {
        for (int j = 0; j < state_count(); ++j)
            if (states[j] == label) return j;
        return -1;
    }
};

// Conditional probability table of one variable: one row per parent
// configuration k, one column per child state j. Stored flat, row-major.
class Cpt {
public:
    Cpt() = default;
    Cpt(int config_count, int state_count, double fill = 0.0)
        : config_count_(config_count),
          state_count_(state_count),
          p_(static_cast<size_t>(config_count) * state_count, fill) {}

    int config_count() const { return config_count_; }
    int state_count() const { return state_count_; }

    double at(int k, int j) const { return p_[static_cast<size_t>(k) * state_count_ + j]; }
    double& at(int k, int j) { return p_[static_cast<size_t>(k) * state_count_ + j]; }

    std::span<const double> row(int k) const {
        return {p_.data() + static_cast<size_t>(k) * state_count_,
                static_cast<size_t>(state_count_)};
    }
    void set_row(int k, std::span<const double> values);

    bool operator==(const Cpt&) const = default;

private:
    int config_count_ = 0;
    int state_count_ = 0;
    std::vector<double> p_;
};

// One defect found by validate(). Defects are data, not exceptions;
// loaders escalate them to errors.
struct Defect {
    std::string message;
};

// A directed acyclic graph of discrete variables plus one CPT per
// variable. Immutable in normal use; learners copy and replace whole
// CPTs through set_cpt on the copy.
class Network {
public:
    Network() = default;

    // Appends a variable whose parents must already be present.
    // Throws Error on unknown parent or duplicate name; cycles are
    // impossible to introduce through this interface, but validate()
    // re-checks acyclicity for networks assembled by other means.
    void add_variable(Variable v, const std::vector<std::string>& parent_names);

    int variable_count() const { return static_cast<int>(variables_.size()); }
    const Variable& variable(int i) const { return variables_[i]; }
    const std::vector<Variable>& variables() const { return variables_; }

    // Index lookup by name, -1 if absent.
    int index_of(const std::string& name) const;

    const std::vector<int>& parents(int i) const { return parents_[i]; }
    bool is_parent(int parent, int child) const;

    const Cpt& cpt(int i) const { return cpts_[i]; }
    void set_cpt(int i, Cpt cpt);

    // Number of parent configurations of variable i.
    int config_count(int i) const;

    // Variables ordered so that parents precede children.
    const std::vector<int>& topological_order() const { return topo_order_; }

    // Total number of free CPT entries (sum over variables of K_i * n_i).
    size_t parameter_count() const;

    bool operator==(const Network&) const = default;

private:
    std::vector<Variable> variables_;
    std::vector<std::vector<int>> parents_;
    std::vector<Cpt> cpts_;
    std::vector<int> topo_order_;
    std::unordered_map<std::string, int> index_;
};

// Mixed-radix index of one joint assignment of a variable's parents.
// The first-listed parent is the most significant digit, so k runs
// 0..K-1 as the last parent's state cycles fastest.
int encode_parent_config(const Network& net, int variable, std::span<const int> parent_states);
std::vector<int> decode_parent_config(const Network& net, int variable, int k);

// Label-based variant; throws Error on an unknown state label.
int encode_parent_config(const Network& net, int variable,
                         const std::vector<std::string>& parent_state_labels);

// Checks acyclicity, duplicate names and states, CPT dimensions, row
// sums within kRowSumTolerance, and entry ranges. Empty result = valid.
std::vector<Defect> validate(const Network& net);

// Product of the local conditional probabilities at a full assignment
// (one state index per variable). Throws Error if any variable is
// missing (state index < 0).
double joint_probability(const Network& net, std::span<const int> full_assignment);

// Name/label convenience wrapper used by tests and tools.
double joint_probability(const Network& net,
                         const std::unordered_map<std::string, std::string>& assignment);

} // namespace qbn
