#pragma once

#include "qbn/constraint_set.hpp"
#include "qbn/dataset.hpp"
#include "qbn/error.hpp"
#include "qbn/network.hpp"
#include "qbn/param_table.hpp"
#include "qbn/violation.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qbn {

enum class Algorithm { em, apn, em_qc, apn_qc };

Algorithm algorithm_from_name(const std::string& name);
std::string algorithm_name(Algorithm a);
bool algorithm_uses_constraints(Algorithm a);

struct LearnConfig {
    Algorithm algorithm = Algorithm::em;
    int iterations = 100;
    double penalty_weight = 2.0;  // w
    double step_size = 0.05;      // alpha, gradient steps only
    double min_prob = 1e-6;       // parameter floor
    uint64_t seed = 0;
    int record_every = 1;
    bool record_parameters = false;
    // When true (default), the rescaled violation step of the hybrid EM
    // is additionally multiplied by penalty_weight; when false the
    // rescaled direction is applied as-is.
    bool hybrid_scale_by_weight = true;
};

struct TraceRow {
    int iteration = 0;
    double train_log_likelihood_per_case = 0.0;
    std::optional<double> test_log_likelihood_per_case;
    std::optional<double> violation;
    std::optional<ParamTable> parameters;
};

struct RunTrace {
    std::vector<TraceRow> rows;
};

struct LearnResult {
    Network net;
    RunTrace trace;
};

// Raised when a learning sweep aborts (e.g. a zero-likelihood case);
// carries the trace recorded up to the failure point.
class LearnError : public Error {
public:
    LearnError(const std::string& msg, RunTrace trace)
        : Error(msg), trace_(std::move(trace)) {}
    const RunTrace& trace() const { return trace_; }

private:
    RunTrace trace_;
};

// Expected family counts E[N_ijk]: per parameter, the sum over cases of
// the exact posterior P(x_ij, pa_k | D_l, theta). Errors name the first
// zero-likelihood case.
ParamTable expected_counts(const Network& net, const Dataset& data);

// One EM update: theta'_ijk = E[N_ijk] / E[N_ik], constrained to the
// box [min_prob, 1 - min_prob]. Rows whose expected parent-configuration
// count is zero keep their previous values.
Network em_step(const Network& net, const Dataset& data, double min_prob = 1e-6);

// Unprojected log-likelihood gradient: E[N_ijk] / theta_ijk. Requires
// every parameter to be at or above the floor.
ParamTable apn_unprojected_gradient(const Network& net, const Dataset& data,
                                    double min_prob = 1e-6);

// Projects every CPT-row slice onto the tangent space of its row-sum
// constraint (per-row mean subtraction).
ParamTable project_gradient(const Network& net, ParamTable gradient);

// One projected-gradient ascent step on the log-likelihood.
Network apn_step(const Network& net, const Dataset& data, const LearnConfig& cfg);

// One ascent step on the penalized score: the unprojected gradient gets
// the -w * v_ijk correction before projection.
Network constrained_apn_step(const Network& net, const Dataset& data,
                             std::span<const Inequality> ineqs, const LearnConfig& cfg);

// One hybrid step: a plain EM update followed by a violation-gradient
// correction evaluated at the post-EM point, rescaled so its largest
// component matches the largest component of the EM displacement.
Network constrained_em_step(const Network& net, const Dataset& data,
                            std::span<const Inequality> ineqs, const LearnConfig& cfg);

// Runs cfg.iterations steps of cfg.algorithm from net0, recording a
// trace row at iteration 0, every record_every iterations, and at the
// final iteration. `cs` is required for the constrained algorithms and,
// when present, adds violation tracking for the plain ones too.
LearnResult learn(const Network& net0, const Dataset& train, const ConstraintSet* cs,
                  const LearnConfig& cfg, const Dataset* test = nullptr);

// Network with the same structure whose CPT rows are drawn uniformly
// from the probability simplex, deterministically per seed.
Network random_init(const Network& structure, uint64_t seed, double min_prob = 1e-6);

} // namespace qbn
