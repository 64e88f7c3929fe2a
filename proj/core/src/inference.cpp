#include "qbn/inference.hpp"

#include "qbn/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace qbn {
namespace {

// A nonnegative function over the joint states of a sorted set of
// variables. Values are row-major with the last variable fastest, so
// the first variable is the most significant digit.
struct Factor {
    std::vector<int> vars;  // ascending variable indices
    std::vector<int> card;
    std::vector<double> val;

    bool scalar() const { return vars.empty(); }
};

size_t table_size(const std::vector<int>& card) {
    size_t n = 1;
    for (int c : card) n *= static_cast<size_t>(c);
    return n;
}

Factor multiply(const Factor& a, const Factor& b, const Network& net) {
    Factor out;
    out.vars.reserve(a.vars.size() + b.vars.size());
    std::set_union(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end(),
                   std::back_inserter(out.vars));
    out.card.reserve(out.vars.size());
    for (int v : out.vars) out.card.push_back(net.variable(v).state_count());
    out.val.assign(table_size(out.card), 0.0);

    // Strides of each output dimension within a and b (0 if absent).
    const size_t dims = out.vars.size();
    std::vector<size_t> stride_a(dims, 0), stride_b(dims, 0);
    {
        size_t s = 1;
        for (size_t d = a.vars.size(); d-- > 0;) {
            size_t pos = std::lower_bound(out.vars.begin(), out.vars.end(), a.vars[d]) -
                         out.vars.begin();
            stride_a[pos] = s;
            s *= static_cast<size_t>(a.card[d]);
        }
        s = 1;
        for (size_t d = b.vars.size(); d-- > 0;) {
            size_t pos = std::lower_bound(out.vars.begin(), out.vars.end(), b.vars[d]) -
                         out.vars.begin();
            stride_b[pos] = s;
            s *= static_cast<size_t>(b.card[d]);
        }
    }

    std::vector<int> pos(dims, 0);
    size_t ia = 0, ib = 0;
    for (size_t i = 0; i < out.val.size(); ++i) {
        out.val[i] = a.val[ia] * b.val[ib];
        for (size_t d = dims; d-- > 0;) {  // odometer, last dim fastest
            if (++pos[d] < out.card[d]) {
                ia += stride_a[d];
                ib += stride_b[d];
                break;
            }
            pos[d] = 0;
            ia -= stride_a[d] * (out.card[d] - 1);
            ib -= stride_b[d] * (out.card[d] - 1);
        }
    }
    return out;
}

Factor sum_out(const Factor& f, int var) {
    size_t d0 = std::lower_bound(f.vars.begin(), f.vars.end(), var) - f.vars.begin();
    Factor out;
    out.vars = f.vars;
    out.vars.erase(out.vars.begin() + d0);
    out.card = f.card;
    out.card.erase(out.card.begin() + d0);
    out.val.assign(table_size(out.card), 0.0);

    size_t inner = 1;  // stride of the summed dimension
    for (size_t d = f.vars.size(); d-- > d0 + 1;) inner *= static_cast<size_t>(f.card[d]);
    size_t n_var = static_cast<size_t>(f.card[d0]);
    size_t outer = f.val.size() / (inner * n_var);

    size_t src = 0;
    for (size_t o = 0; o < outer; ++o)
        for (size_t s = 0; s < n_var; ++s)
            for (size_t in = 0; in < inner; ++in)
                out.val[o * inner + in] += f.val[src++];
    return out;
}

Factor reduce(const Factor& f, int var, int state) {
    size_t d0 = std::lower_bound(f.vars.begin(), f.vars.end(), var) - f.vars.begin();
    Factor out;
    out.vars = f.vars;
    out.vars.erase(out.vars.begin() + d0);
    out.card = f.card;
    out.card.erase(out.card.begin() + d0);
    out.val.reserve(table_size(out.card));

    size_t inner = 1;
    for (size_t d = f.vars.size(); d-- > d0 + 1;) inner *= static_cast<size_t>(f.card[d]);
    size_t n_var = static_cast<size_t>(f.card[d0]);
    size_t outer = f.val.size() / (inner * n_var);

    for (size_t o = 0; o < outer; ++o) {
        size_t base = (o * n_var + static_cast<size_t>(state)) * inner;
        for (size_t in = 0; in < inner; ++in) out.val.push_back(f.val[base + in]);
    }
    return out;
}

// CPT of variable i as a factor over {i} U parents(i), reduced by the
// case's evidence.
Factor cpt_factor(const Network& net, int i, const Case& c) {
    Factor f;
    f.vars = net.parents(i);
    f.vars.push_back(i);
    std::sort(f.vars.begin(), f.vars.end());
    f.card.reserve(f.vars.size());
    for (int v : f.vars) f.card.push_back(net.variable(v).state_count());
    f.val.resize(table_size(f.card));

    const Cpt& cpt = net.cpt(i);
    const auto& parents = net.parents(i);
    std::vector<int> pos(f.vars.size(), 0);
    std::vector<int> pstates(parents.size());
    for (size_t idx = 0; idx < f.val.size(); ++idx) {
        int j = 0;
        for (size_t d = 0; d < f.vars.size(); ++d) {
            if (f.vars[d] == i) {
                j = pos[d];
            } else {
                size_t pd = std::find(parents.begin(), parents.end(), f.vars[d]) -
                            parents.begin();
                pstates[pd] = pos[d];
            }
        }
        f.val[idx] = cpt.at(encode_parent_config(net, i, pstates), j);
        for (size_t d = f.vars.size(); d-- > 0;) {
            if (++pos[d] < f.card[d]) break;
            pos[d] = 0;
        }
    }

    for (int v : std::vector<int>(f.vars)) {
        int s = c.state[v];
        if (s >= 0) f = reduce(f, v, s);
    }
    return f;
}

// Greedy min-fill ordering of `to_eliminate` over the interaction graph
// induced by the factor scopes. Ties break toward the smallest index.
std::vector<int> min_fill_order(const std::vector<Factor>& factors,
                                const std::set<int>& to_eliminate) {
    std::set<std::pair<int, int>> edges;
    std::set<int> nodes = to_eliminate;
    auto link = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        edges.insert({a, b});
    };
    for (const Factor& f : factors) {
        for (int v : f.vars) nodes.insert(v);
        for (size_t x = 0; x < f.vars.size(); ++x)
            for (size_t y = x + 1; y < f.vars.size(); ++y) link(f.vars[x], f.vars[y]);
    }

    std::vector<int> order;
    std::set<int> remaining = to_eliminate;
    while (!remaining.empty()) {
        int best = -1;
        int best_fill = std::numeric_limits<int>::max();
        for (int v : remaining) {
            std::vector<int> nb;
            for (int u : nodes)
                if (u != v && edges.count({std::min(u, v), std::max(u, v)})) nb.push_back(u);
            int fill = 0;
            for (size_t x = 0; x < nb.size(); ++x)
                for (size_t y = x + 1; y < nb.size(); ++y)
                    if (!edges.count({std::min(nb[x], nb[y]), std::max(nb[x], nb[y])}))
                        ++fill;
            if (fill < best_fill) {
                best_fill = fill;
                best = v;
            }
        }
        order.push_back(best);
        std::vector<int> nb;
        for (int u : nodes)
            if (u != best && edges.count({std::min(u, best), std::max(u, best)}))
                nb.push_back(u);
        for (size_t x = 0; x < nb.size(); ++x)
            for (size_t y = x + 1; y < nb.size(); ++y) link(nb[x], nb[y]);
        nodes.erase(best);
        remaining.erase(best);
    }
    return order;
}

// Eliminates every variable in `order` from the factor list, in place.
// Factors that become scalars are folded into the returned constant.
double eliminate(std::vector<Factor>& factors, const std::vector<int>& order,
                 const Network& net) {
    double constant = 1.0;
    for (int v : order) {
        Factor prod;
        prod.val = {1.0};
        bool touched = false;
        std::vector<Factor> rest;
        for (Factor& f : factors) {
            if (std::binary_search(f.vars.begin(), f.vars.end(), v)) {
                prod = touched ? multiply(prod, f, net) : std::move(f);
                touched = true;
            } else {
                rest.push_back(std::move(f));
            }
        }
        factors = std::move(rest);
        if (!touched) continue;
        Factor summed = sum_out(prod, v);
        if (summed.scalar())
            constant *= summed.val[0];
        else
            factors.push_back(std::move(summed));
    }

    // fold any scalars produced by evidence reduction
    std::vector<Factor> rest;
    for (Factor& f : factors) {
        if (f.scalar())
            constant *= f.val[0];
        else
            rest.push_back(std::move(f));
    }
    factors = std::move(rest);
    return constant;
}

std::vector<Factor> reduced_factors(const Network& net, const Case& c) {
    if (static_cast<int>(c.state.size()) != net.variable_count())
        throw Error("case is not bound to this network");
    std::vector<Factor> factors;
    factors.reserve(net.variable_count());
    for (int i = 0; i < net.variable_count(); ++i) {
        int s = c.state[i];
        if (s >= net.variable(i).state_count())
            throw Error("case has out-of-range state for variable '" +
                        net.variable(i).name + "'");
        factors.push_back(cpt_factor(net, i, c));
    }
    return factors;
}

// Joint factor over the unobserved variables in `keep`, unnormalized:
// F(u) = P(u, evidence). Variables of `keep` that are observed do not
// appear in the result's scope.
Factor joint_over(const Network& net, const Case& c, std::vector<Factor> factors,
                  const std::set<int>& keep) {
    std::set<int> eliminate_set;
    for (int v = 0; v < net.variable_count(); ++v)
        if (c.state[v] < 0 && !keep.count(v)) eliminate_set.insert(v);
    double constant = eliminate(factors, min_fill_order(factors, eliminate_set), net);

    Factor result;
    result.val = {constant};
    for (Factor& f : factors) result = multiply(result, f, net);
    return result;
}

} // namespace

double case_likelihood(const Network& net, const Case& c) {
    std::vector<Factor> factors = reduced_factors(net, c);
    Factor f = joint_over(net, c, std::move(factors), {});
    double mass = 0.0;
    for (double v : f.val) mass += v;
    return mass;
}

double log_likelihood(const Network& net, const Dataset& data) {
    double ll = 0.0;
    for (const WeightedCase& wc : aggregate(data)) {
        double p = case_likelihood(net, wc.pattern);
        if (!(p > 0.0)) {
            std::ostringstream os;
            os << "case " << wc.first_index << " has zero likelihood";
            throw Error(os.str());
        }
        ll += wc.weight * std::log(p);
    }
    return ll;
}

double mean_log_likelihood(const Network& net, const Dataset& data) {
    if (data.cases.empty()) return 0.0;
    return log_likelihood(net, data) / static_cast<double>(data.cases.size());
}

ParamTable family_posteriors(const Network& net, const Case& c) {
    std::vector<Factor> factors = reduced_factors(net, c);

    double likelihood = 0.0;
    {
        Factor f = joint_over(net, c, factors, {});
        for (double v : f.val) likelihood += v;
    }
    if (!(likelihood > 0.0)) throw Error("zero-likelihood evidence");

    ParamTable post = zero_table(net);
    for (int i = 0; i < net.variable_count(); ++i) {
        const auto& parents = net.parents(i);
        const int n = net.variable(i).state_count();

        std::set<int> family{i};
        family.insert(parents.begin(), parents.end());

        bool all_observed = c.state[i] >= 0;
        for (int p : parents) all_observed = all_observed && c.state[p] >= 0;
        if (all_observed) {
            std::vector<int> pstates(parents.size());
            for (size_t d = 0; d < parents.size(); ++d) pstates[d] = c.state[parents[d]];
            int k = encode_parent_config(net, i, pstates);
            post[i][static_cast<size_t>(k) * n + c.state[i]] = 1.0;
            continue;
        }

        Factor joint = joint_over(net, c, factors, family);
        double mass = 0.0;
        for (double v : joint.val) mass += v;
        if (!(mass > 0.0)) throw Error("zero-likelihood evidence");

        // strides of each family variable inside the joint factor
        std::vector<size_t> strides(net.variable_count(), 0);
        {
            size_t s = 1;
            for (size_t d = joint.vars.size(); d-- > 0;) {
                strides[joint.vars[d]] = s;
                s *= static_cast<size_t>(joint.card[d]);
            }
        }

        std::vector<int> pstates(parents.size());
        for (int k = 0; k < net.config_count(i); ++k) {
            pstates = decode_parent_config(net, i, k);
            bool consistent = true;
            size_t base = 0;
            for (size_t d = 0; d < parents.size(); ++d) {
                int p = parents[d];
                if (c.state[p] >= 0) {
                    if (c.state[p] != pstates[d]) consistent = false;
                } else {
                    base += strides[p] * static_cast<size_t>(pstates[d]);
                }
            }
            if (!consistent) continue;
            for (int j = 0; j < n; ++j) {
                if (c.state[i] >= 0) {
                    if (c.state[i] == j)
                        post[i][static_cast<size_t>(k) * n + j] = joint.val[base] / mass;
                } else {
                    post[i][static_cast<size_t>(k) * n + j] =
                        joint.val[base + strides[i] * static_cast<size_t>(j)] / mass;
                }
            }
        }
    }
    return post;
}

std::vector<double> posterior_marginal(const Network& net, const Case& c, int target) {
    Case query = c;
    query.state[target] = -1;  // evidence on the target itself is ignored
    std::vector<Factor> factors = reduced_factors(net, query);
    Factor f = joint_over(net, query, std::move(factors), {target});

    int n = net.variable(target).state_count();
    std::vector<double> dist(n, 0.0);
    if (f.vars.empty())
        throw Error("posterior_marginal: target did not survive elimination");
    for (int j = 0; j < n; ++j) dist[j] = f.val[j];
    double mass = std::accumulate(dist.begin(), dist.end(), 0.0);
    if (!(mass > 0.0)) throw Error("zero-likelihood evidence");
    for (double& d : dist) d /= mass;
    return dist;
}

} // namespace qbn
