#include "qbn/eval.hpp"

#include "qbn/error.hpp"
#include "qbn/inference.hpp"

#include <sstream>

namespace qbn {

double avg_neg_log_likelihood(const Network& net, const Dataset& test) {
    return -mean_log_likelihood(net, test);
}

double avg_quadratic_loss(const Network& net, const Dataset& test, int target) {
    if (test.cases.empty()) throw Error("quadratic loss needs at least one case");
    const int n = net.variable(target).state_count();
    double total = 0.0;
    for (const WeightedCase& wc : aggregate(test)) {
        int observed = wc.pattern.state[target];
        if (observed < 0) {
            std::ostringstream os;
            os << "case " << wc.first_index << " does not observe target '"
               << net.variable(target).name << "'";
            throw Error(os.str());
        }
        auto posterior = posterior_marginal(net, wc.pattern, target);
        double loss = 0.0;
        for (int j = 0; j < n; ++j) {
            double d = posterior[j] - (j == observed ? 1.0 : 0.0);
            loss += d * d;
        }
        total += wc.weight * loss;
    }
    return total / static_cast<double>(test.cases.size());
}

EvalResult evaluate(const Network& net, const Dataset& test,
                    const std::optional<std::string>& target) {
    EvalResult result;
    result.case_count = test.cases.size();
    result.avg_neg_log_likelihood = avg_neg_log_likelihood(net, test);
    if (target) {
        int t = net.index_of(*target);
        if (t < 0) throw Error("unknown target variable '" + *target + "'");
        result.target = target;
        result.avg_quadratic_loss = avg_quadratic_loss(net, test, t);
    }
    return result;
}

} // namespace qbn
