#pragma once

#include "qbn/dataset.hpp"
#include "qbn/network.hpp"

#include <optional>
#include <string>

namespace qbn {

struct EvalResult {
    double avg_neg_log_likelihood = 0.0;
    std::optional<double> avg_quadratic_loss;  // present iff a target was given
    std::optional<std::string> target;
    size_t case_count = 0;
};

// -(1/s) * sum_l ln P(D_l | theta). Lower is better.
double avg_neg_log_likelihood(const Network& net, const Dataset& test);

// Mean multi-class quadratic (Brier) loss of the posterior over the
// target given all other observed variables of each case:
// sum_j (p_j - 1{observed=j})^2, averaged over cases. The target must
// be observed in every case. Lower is better; range [0, 2].
double avg_quadratic_loss(const Network& net, const Dataset& test, int target);

EvalResult evaluate(const Network& net, const Dataset& test,
                    const std::optional<std::string>& target);

} // namespace qbn
