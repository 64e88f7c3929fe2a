#include "qbn/learning.hpp"

#include "qbn/inference.hpp"
#include "qbn/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qbn {

Algorithm algorithm_from_name(const std::string& name) {
    if (name == "em") return Algorithm::em;
    if (name == "apn") return Algorithm::apn;
    if (name == "em-qc") return Algorithm::em_qc;
    if (name == "apn-qc") return Algorithm::apn_qc;
    throw Error("unknown algorithm '" + name + "' (expected em, apn, em-qc or apn-qc)");
}

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::em: return "em";
        case Algorithm::apn: return "apn";
        case Algorithm::em_qc: return "em-qc";
        case Algorithm::apn_qc: return "apn-qc";
    }
    return "?";
}

bool algorithm_uses_constraints(Algorithm a) {
    return a == Algorithm::em_qc || a == Algorithm::apn_qc;
}

ParamTable expected_counts(const Network& net, const Dataset& data) {
    ParamTable counts = zero_table(net);
    for (const WeightedCase& wc : aggregate(data)) {
        ParamTable post;
        try {
            post = family_posteriors(net, wc.pattern);
        } catch (const Error&) {
            std::ostringstream os;
            os << "case " << wc.first_index << " has zero likelihood";
            throw Error(os.str());
        }
        for (size_t i = 0; i < counts.size(); ++i)
            for (size_t e = 0; e < counts[i].size(); ++e)
                counts[i][e] += wc.weight * post[i][e];
    }
    return counts;
}

Network em_step(const Network& net, const Dataset& data, double min_prob) {
    ParamTable counts = expected_counts(net, data);
    Network out = net;
    for (int i = 0; i < net.variable_count(); ++i) {
        const int n = net.variable(i).state_count();
        Cpt cpt = net.cpt(i);
        for (int k = 0; k < net.config_count(i); ++k) {
            std::span<const double> row{counts[i].data() + static_cast<size_t>(k) * n,
                                        static_cast<size_t>(n)};
            double row_total = 0.0;
            for (double c : row) row_total += c;
            if (row_total == 0.0) continue;  // configuration never expected: keep old row
            cpt.set_row(k, box_constrained_row_mle(row, min_prob));
        }
        out.set_cpt(i, std::move(cpt));
    }
    return out;
}

ParamTable apn_unprojected_gradient(const Network& net, const Dataset& data,
                                    double min_prob) {
    ParamTable theta = cpts_to_table(net);
    for (int i = 0; i < net.variable_count(); ++i)
        for (double t : theta[i])
            if (t < min_prob)
                throw Error("parameter of '" + net.variable(i).name +
                            "' is below the floor; cannot form the gradient");
    ParamTable g = expected_counts(net, data);
    for (size_t i = 0; i < g.size(); ++i)
        for (size_t e = 0; e < g[i].size(); ++e) g[i][e] /= theta[i][e];
    return g;
}

ParamTable project_gradient(const Network& net, ParamTable gradient) {
    project_rows_to_tangent(net, gradient);
    return gradient;
}

namespace {

// Shared ascent step: theta += alpha * project(grad - w * v), then each
// row is projected back onto the truncated simplex. The plain APN step
// passes an empty inequality span, which makes the w * v term vanish.
Network gradient_ascent_step(const Network& net, const Dataset& data,
                             std::span<const Inequality> ineqs, double w,
                             const LearnConfig& cfg) {
    ParamTable g = apn_unprojected_gradient(net, data, cfg.min_prob);
    if (!ineqs.empty()) {
        ParamTable v = violation_gradient(net, ineqs);
        for (size_t i = 0; i < g.size(); ++i)
            for (size_t e = 0; e < g[i].size(); ++e) g[i][e] -= w * v[i][e];
    }
    project_rows_to_tangent(net, g);

    ParamTable theta = cpts_to_table(net);
    for (size_t i = 0; i < theta.size(); ++i)
        for (size_t e = 0; e < theta[i].size(); ++e)
            theta[i][e] += cfg.step_size * g[i][e];

    Network out = net;
    for (int i = 0; i < net.variable_count(); ++i) {
        const int n = net.variable(i).state_count();
        for (int k = 0; k < net.config_count(i); ++k)
            project_row_to_box_simplex({theta[i].data() + static_cast<size_t>(k) * n,
                                        static_cast<size_t>(n)},
                                       cfg.min_prob);
    }
    set_cpts_from_table(out, theta);
    return out;
}

} // namespace

Network apn_step(const Network& net, const Dataset& data, const LearnConfig& cfg) {
    return gradient_ascent_step(net, data, {}, 0.0, cfg);
}

Network constrained_apn_step(const Network& net, const Dataset& data,
                             std::span<const Inequality> ineqs, const LearnConfig& cfg) {
    return gradient_ascent_step(net, data, ineqs, cfg.penalty_weight, cfg);
}

Network constrained_em_step(const Network& net, const Dataset& data,
                            std::span<const Inequality> ineqs, const LearnConfig& cfg) {
    Network em_net = em_step(net, data, cfg.min_prob);

    ParamTable v = violation_gradient(em_net, ineqs);
    ParamTable direction = project_gradient(em_net, std::move(v));
    double dir_max = max_abs(direction);
    if (dir_max == 0.0) return em_net;  // constraints satisfied: pure EM step

    ParamTable before = cpts_to_table(net);
    ParamTable theta = cpts_to_table(em_net);
    double displacement = 0.0;
    for (size_t i = 0; i < theta.size(); ++i)
        for (size_t e = 0; e < theta[i].size(); ++e)
            displacement = std::max(displacement, std::abs(theta[i][e] - before[i][e]));

    // Match the violation step to the size of the EM move; at an EM
    // fixed point fall back to a fixed cap of step_size.
    double scale = (displacement > 0.0 ? displacement : cfg.step_size) / dir_max;
    if (cfg.hybrid_scale_by_weight) scale *= cfg.penalty_weight;

    for (size_t i = 0; i < theta.size(); ++i)
        for (size_t e = 0; e < theta[i].size(); ++e)
            theta[i][e] -= scale * direction[i][e];

    Network out = em_net;
    for (int i = 0; i < out.variable_count(); ++i) {
        const int n = out.variable(i).state_count();
        for (int k = 0; k < out.config_count(i); ++k)
            project_row_to_box_simplex({theta[i].data() + static_cast<size_t>(k) * n,
                                        static_cast<size_t>(n)},
                                       cfg.min_prob);
    }
    set_cpts_from_table(out, theta);
    return out;
}

LearnResult learn(const Network& net0, const Dataset& train, const ConstraintSet* cs,
                  const LearnConfig& cfg, const Dataset* test) {
    if (cfg.iterations < 0) throw Error("iterations must be >= 0");
    if (!(cfg.penalty_weight > 0.0)) throw Error("penalty weight w must be positive");
    if (!(cfg.step_size > 0.0)) throw Error("step size must be positive");
    if (cfg.record_every < 1) throw Error("record_every must be >= 1");
    if (algorithm_uses_constraints(cfg.algorithm) && cs == nullptr)
        throw Error(algorithm_name(cfg.algorithm) + " requires a constraint set");

    std::vector<Inequality> ineqs;
    if (cs != nullptr) ineqs = enumerate_inequalities(net0, *cs);

    RunTrace trace;
    auto record = [&](int iteration, const Network& net) {
        TraceRow row;
        row.iteration = iteration;
        row.train_log_likelihood_per_case = mean_log_likelihood(net, train);
        if (test != nullptr)
            row.test_log_likelihood_per_case = mean_log_likelihood(net, *test);
        if (cs != nullptr) row.violation = total_violation(net, ineqs);
        if (cfg.record_parameters) row.parameters = cpts_to_table(net);
        trace.rows.push_back(std::move(row));
    };

    Network net = net0;
    try {
        record(0, net);
        for (int it = 1; it <= cfg.iterations; ++it) {
            switch (cfg.algorithm) {
                case Algorithm::em:
                    net = em_step(net, train, cfg.min_prob);
                    break;
                case Algorithm::apn:
                    net = apn_step(net, train, cfg);
                    break;
                case Algorithm::em_qc:
                    net = constrained_em_step(net, train, ineqs, cfg);
                    break;
                case Algorithm::apn_qc:
                    net = constrained_apn_step(net, train, ineqs, cfg);
                    break;
            }
            if (it % cfg.record_every == 0 || it == cfg.iterations) record(it, net);
        }
    } catch (const Error& e) {
        throw LearnError(e.what(), std::move(trace));
    }
    return {std::move(net), std::move(trace)};
}

Network random_init(const Network& structure, uint64_t seed, double min_prob) {
    Rng rng(seed);
    Network out = structure;
    for (int i = 0; i < out.variable_count(); ++i) {
        const int n = out.variable(i).state_count();
        Cpt cpt(out.config_count(i), n);
        for (int k = 0; k < cpt.config_count(); ++k) {
            std::vector<double> row = rng.simplex(n);
            project_row_to_box_simplex(row, min_prob);
            cpt.set_row(k, row);
        }
        out.set_cpt(i, std::move(cpt));
    }
    return out;
}

} // namespace qbn
