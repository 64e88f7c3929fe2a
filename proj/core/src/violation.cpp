#include "qbn/violation.hpp"

#include "qbn/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qbn {
namespace {

// Accumulates the v- / v+ counts of one violated inequality: the
// upper-tail entries under the higher parent state move one way, those
// under the lower parent state the other way, with directions swapped
// for negative influences.
void count_violated(const Network& net, const Inequality& q, ParamTable& v_minus,
                    ParamTable& v_plus) {
    const int n = net.variable(q.child).state_count();
    ParamTable& hi_side = (q.sign == Sign::positive) ? v_plus : v_minus;
    ParamTable& lo_side = (q.sign == Sign::positive) ? v_minus : v_plus;
    for (int l = q.threshold; l < n; ++l) {
        hi_side[q.child][static_cast<size_t>(q.k_hi) * n + l] += 1.0;
        lo_side[q.child][static_cast<size_t>(q.k_lo) * n + l] += 1.0;
    }
}

} // namespace

std::vector<Inequality> enumerate_inequalities(const Network& net, const ConstraintSet& cs) {
    auto defects = validate(net, cs);
    if (!defects.empty()) {
        std::ostringstream os;
        os << "invalid constraint set:";
        for (const auto& d : defects) os << "\n  " << d.message;
        throw Error(os.str());
    }

    std::vector<Inequality> out;
    for (size_t c = 0; c < cs.influences.size(); ++c) {
        const auto& inf = cs.influences[c];
        const int w = net.index_of(inf.parent);
        const int z = net.index_of(inf.child);
        const int n_w = net.variable(w).state_count();
        const int n_z = net.variable(z).state_count();
        const auto& zparents = net.parents(z);
        const size_t w_pos = std::find(zparents.begin(), zparents.end(), w) -
                             zparents.begin();

        std::vector<int> others;  // parents of z except w, in parent-list order
        for (int p : zparents)
            if (p != w) others.push_back(p);
        size_t context_count = 1;
        for (int p : others) context_count *= net.variable(p).state_count();

        std::vector<int> context(others.size(), 0);
        for (size_t y = 0; y < context_count; ++y) {
            for (int m = 1; m < n_z; ++m) {
                for (int hi = 1; hi < n_w; ++hi) {
                    for (int lo = 0; lo < hi; ++lo) {
                        Inequality q;
                        q.influence = static_cast<int>(c);
                        q.parent = w;
                        q.child = z;
                        q.sign = inf.sign;
                        q.threshold = m;
                        q.hi_state = hi;
                        q.lo_state = lo;
                        q.context = context;
                        std::vector<int> full(zparents.size());
                        for (size_t d = 0, o = 0; d < zparents.size(); ++d)
                            full[d] = (d == w_pos) ? hi : context[o++];
                        q.k_hi = encode_parent_config(net, z, full);
                        full[w_pos] = lo;
                        q.k_lo = encode_parent_config(net, z, full);
                        out.push_back(std::move(q));
                    }
                }
            }
            for (size_t d = others.size(); d-- > 0;) {  // next context, last parent fastest
                if (++context[d] < net.variable(others[d]).state_count()) break;
                context[d] = 0;
            }
        }
    }
    return out;
}

double inequality_slack(const Network& net, const Inequality& q) {
    const Cpt& cpt = net.cpt(q.child);
    double slack = 0.0;
    for (int l = q.threshold; l < cpt.state_count(); ++l)
        slack += cpt.at(q.k_hi, l) - cpt.at(q.k_lo, l);
    return slack;
}

double partial_violation(Sign sign, double slack) {
    if (sign == Sign::positive && slack < 0.0) return -slack;
    if (sign == Sign::negative && slack > 0.0) return slack;
    return 0.0;
}

double total_violation(const Network& net, std::span<const Inequality> ineqs) {
    double total = 0.0;
    for (const Inequality& q : ineqs)
        total += partial_violation(q.sign, inequality_slack(net, q));
    return total;
}

double total_violation(const Network& net, const ConstraintSet& cs) {
    auto ineqs = enumerate_inequalities(net, cs);
    return total_violation(net, ineqs);
}

ParamTable violation_gradient(const Network& net, std::span<const Inequality> ineqs) {
    ParamTable v_minus = zero_table(net);
    ParamTable v_plus = zero_table(net);
    for (const Inequality& q : ineqs)
        if (partial_violation(q.sign, inequality_slack(net, q)) > 0.0)
            count_violated(net, q, v_minus, v_plus);

    ParamTable v = std::move(v_minus);
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t e = 0; e < v[i].size(); ++e) v[i][e] -= v_plus[i][e];
    return v;
}

ParamTable violation_gradient(const Network& net, const ConstraintSet& cs) {
    auto ineqs = enumerate_inequalities(net, cs);
    return violation_gradient(net, ineqs);
}

double expert_agreement_likelihood(const Network& net, const ConstraintSet& cs, double w) {
    if (!(w > 0.0)) throw Error("penalty weight w must be positive");
    return std::exp(-w * total_violation(net, cs));
}

ViolationReport audit(const Network& net, const ConstraintSet& cs) {
    auto ineqs = enumerate_inequalities(net, cs);
    ViolationReport report;
    report.inequality_count = ineqs.size();
    report.v_minus = zero_table(net);
    report.v_plus = zero_table(net);
    report.records.reserve(ineqs.size());
    for (const Inequality& q : ineqs) {
        double slack = inequality_slack(net, q);
        double partial = partial_violation(q.sign, slack);
        if (partial > 0.0) {
            ++report.violated_count;
            report.total += partial;
            count_violated(net, q, report.v_minus, report.v_plus);
        }
        report.records.push_back({q, slack, partial});
    }
    std::stable_sort(report.records.begin(), report.records.end(),
                     [](const InequalityRecord& a, const InequalityRecord& b) {
                         return a.partial > b.partial;
                     });
    return report;
}

} // namespace qbn
