#pragma once

#include "qbn/dataset.hpp"
#include "qbn/network.hpp"
#include "qbn/param_table.hpp"

#include <vector>

namespace qbn {

// Marginal probability of the case's observed assignment, with every
// unobserved variable summed out. Empty case -> 1.0.
double case_likelihood(const Network& net, const Case& c);

// Sum over cases of ln P(D_l | theta). Throws Error naming the first
// case whose likelihood is zero.
double log_likelihood(const Network& net, const Dataset& data);

// log_likelihood divided by the number of cases; 0.0 on an empty dataset.
double mean_log_likelihood(const Network& net, const Dataset& data);

// Exact posterior joint of each variable with its parent configuration
// given the case's evidence: result[i][k * n_i + j] = P(x_ij, pa_k | case).
// Entries of each family sum to 1. Throws Error on zero-likelihood evidence.
ParamTable family_posteriors(const Network& net, const Case& c);

// Posterior distribution over one variable's states given the case's
// evidence (any evidence on the target itself is ignored).
std::vector<double> posterior_marginal(const Network& net, const Case& c, int target);

} // namespace qbn
