#pragma once

#include "qbn/constraint_set.hpp"
#include "qbn/network.hpp"
#include "qbn/param_table.hpp"

#include <span>
#include <vector>

namespace qbn {

// One cumulative-probability inequality induced by a qualitative
// influence of w on z. For a positive influence it reads
//
//   sum_{l >= threshold} P(z=l | w=hi_state, context)
//     >= sum_{l >= threshold} P(z=l | w=lo_state, context)
//
// and the comparison flips for a negative influence. All state indices
// are 0-based; threshold >= 1, hi_state > lo_state. `context` holds one
// state per parent of z other than w, in z's parent-list order, and
// k_hi / k_lo are the corresponding rows of z's CPT.
struct Inequality {
    int influence = 0;  // index into ConstraintSet::influences
    int parent = 0;     // variable index of w
    int child = 0;      // variable index of z
    Sign sign = Sign::positive;
    int threshold = 1;
    int hi_state = 1;
    int lo_state = 0;
    std::vector<int> context;
    int k_hi = 0;
    int k_lo = 0;
};

// The full inequality system of a constraint set, including the
// non-adjacent parent-state pairs implied by transitivity; those
// redundant inequalities identify every parameter involved in a
// violation, which lets a repair step adjust all of them at once.
// One inequality per (influence, threshold > first state, state pair
// hi > lo, context of z's other parents). Throws Error if the
// constraint set does not validate against the network.
std::vector<Inequality> enumerate_inequalities(const Network& net, const ConstraintSet& cs);

// Signed left-hand side of the inequality: the difference of the two
// upper-tail sums of z's CPT rows. Negative slack on a positive
// influence (or positive slack on a negative one) is a violation.
double inequality_slack(const Network& net, const Inequality& ineq);

// Magnitude by which a single inequality is violated; 0 when satisfied
// (equality counts as satisfied).
double partial_violation(Sign sign, double slack);

// Sum of all partial violation terms.
double total_violation(const Network& net, std::span<const Inequality> ineqs);
double total_violation(const Network& net, const ConstraintSet& cs);

// Per-parameter gradient of the total violation term: for each theta
// entry, the number of violated inequalities that want it lower minus
// the number that want it higher.
ParamTable violation_gradient(const Network& net, std::span<const Inequality> ineqs);
ParamTable violation_gradient(const Network& net, const ConstraintSet& cs);

// exp(-w * total_violation): the likelihood of an expert endorsing the
// constraints given the current parameters. 1.0 iff no violation.
double expert_agreement_likelihood(const Network& net, const ConstraintSet& cs, double w);

struct InequalityRecord {
    Inequality ineq;
    double slack = 0.0;
    double partial = 0.0;
};

struct ViolationReport {
    double total = 0.0;
    size_t violated_count = 0;
    size_t inequality_count = 0;  // structural maximum of `total` (each partial term <= 1)
    std::vector<InequalityRecord> records;  // sorted by partial descending
    ParamTable v_minus;  // per-parameter "ought to be lower" counts
    ParamTable v_plus;   // per-parameter "ought to be higher" counts
};

ViolationReport audit(const Network& net, const ConstraintSet& cs);

} // namespace qbn
