// qbn: learn, audit and evaluate discrete Bayesian networks with hidden
// variables, optionally guided by qualitative monotonicity constraints.

#include "qbn/error.hpp"
#include "qbn/eval.hpp"
#include "qbn/experiment.hpp"
#include "qbn/inference.hpp"
#include "qbn/io.hpp"
#include "qbn/learning.hpp"
#include "qbn/sampling.hpp"
#include "qbn/violation.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;  // validation, constraint or usage errors
constexpr int kExitIo = 2;      // unreadable or malformed files

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

int cmd_validate(const std::string& network_path) {
    // load_network escalates defects to errors; report them instead
    qbn::Network net;
    try {
        net = qbn::load_network(network_path);
    } catch (const qbn::ParseError&) {
        throw;
    } catch (const qbn::Error& e) {
        std::cout << e.what() << "\n";
        return kExitDomain;
    }
    std::cout << "valid: " << net.variable_count() << " variables, "
              << net.parameter_count() << " CPT entries\n";
    return kExitOk;
}

int cmd_sample(const std::string& network_path, int count,
               const std::vector<std::string>& hidden, uint64_t seed,
               const std::string& out) {
    qbn::Network net = qbn::load_network(network_path);
    qbn::SamplingSpec spec{count, {hidden.begin(), hidden.end()}, seed};
    qbn::Dataset data = qbn::forward_sample(net, spec);
    qbn::save_dataset(data, net, out);
    std::cout << "wrote " << data.size() << " cases to " << out << "\n";
    return kExitOk;
}

void write_curve_file(const std::string& path, const qbn::RunTrace& trace) {
    std::ofstream curve(path, std::ios::binary);
    if (!curve) throw qbn::ParseError("cannot write '" + path + "'");
    curve << "iteration,train_nll_per_case,test_nll_per_case,violation\n";
    for (const auto& row : trace.rows) {
        curve << row.iteration << ',' << fmt(-row.train_log_likelihood_per_case) << ',';
        if (row.test_log_likelihood_per_case)
            curve << fmt(-*row.test_log_likelihood_per_case);
        curve << ',';
        if (row.violation) curve << fmt(*row.violation);
        curve << '\n';
    }
}

int cmd_learn(const std::string& structure_path, const std::string& data_path,
              const std::string& algorithm_name, qbn::LearnConfig cfg,
              const std::string& constraints_path, const std::string& test_path,
              const std::string& curve_out, const std::string& out) {
    cfg.algorithm = qbn::algorithm_from_name(algorithm_name);
    if (qbn::algorithm_uses_constraints(cfg.algorithm) && constraints_path.empty())
        throw qbn::Error(algorithm_name + " requires --constraints");

    qbn::Network structure = qbn::load_network(structure_path);
    qbn::Dataset train = qbn::load_dataset(data_path, structure);

    std::optional<qbn::ConstraintSet> cs;
    if (!constraints_path.empty())
        cs = qbn::load_constraints(constraints_path, structure);
    std::optional<qbn::Dataset> test;
    if (!test_path.empty()) test = qbn::load_dataset(test_path, structure);

    qbn::Network net0 = qbn::random_init(structure, cfg.seed, cfg.min_prob);
    qbn::LearnResult result = qbn::learn(net0, train, cs ? &*cs : nullptr, cfg,
                                         test ? &*test : nullptr);

    if (!out.empty()) qbn::save_network(result.net, out);
    if (!curve_out.empty()) write_curve_file(curve_out, result.trace);

    const auto& last = result.trace.rows.back();
    std::cout << "final train_nll_per_case " << fmt(-last.train_log_likelihood_per_case)
              << "\n";
    if (last.test_log_likelihood_per_case)
        std::cout << "final test_nll_per_case "
                  << fmt(-*last.test_log_likelihood_per_case) << "\n";
    if (last.violation) std::cout << "final violation " << fmt(*last.violation) << "\n";
    return kExitOk;
}

int cmd_violations(const std::string& network_path, const std::string& constraints_path) {
    qbn::Network net = qbn::load_network(network_path);
    qbn::ConstraintSet cs = qbn::load_constraints(constraints_path, net);
    qbn::ViolationReport report = qbn::audit(net, cs);

    std::cout << "total " << fmt(report.total) << "\n";
    std::cout << "violated " << report.violated_count << " of "
              << report.inequality_count << " inequalities (structural maximum "
              << report.inequality_count << ")\n";
    for (const auto& rec : report.records) {
        if (rec.partial <= 0.0) continue;
        const auto& q = rec.ineq;
        std::cout << "  " << net.variable(q.child).name << " | "
                  << net.variable(q.parent).name << " sign " << qbn::sign_char(q.sign)
                  << " m=" << q.threshold + 1 << " i=" << q.hi_state + 1
                  << " j=" << q.lo_state + 1 << " context (";
        bool first = true;
        size_t d = 0;
        for (int p : net.parents(q.child)) {
            if (p == q.parent) continue;
            if (!first) std::cout << ", ";
            std::cout << net.variable(p).name << "="
                      << net.variable(p).states[q.context[d]];
            first = false;
            ++d;
        }
        std::cout << ") slack " << fmt(rec.slack) << "\n";
    }
    return kExitOk;
}

int cmd_eval(const std::string& network_path, const std::string& test_path,
             const std::string& target) {
    qbn::Network net = qbn::load_network(network_path);
    qbn::Dataset test = qbn::load_dataset(test_path, net);
    std::optional<std::string> target_opt;
    if (!target.empty()) target_opt = target;
    qbn::EvalResult result = qbn::evaluate(net, test, target_opt);

    std::cout << "cases " << result.case_count << "\n";
    std::cout << "avg_neg_log_likelihood " << fmt(result.avg_neg_log_likelihood) << "\n";
    if (result.avg_quadratic_loss)
        std::cout << "avg_quadratic_loss[" << *result.target << "] "
                  << fmt(*result.avg_quadratic_loss) << "\n";
    return kExitOk;
}

int cmd_experiment(const std::string& config_path) {
    qbn::ExperimentConfig cfg = qbn::load_experiment_config(config_path);
    qbn::ExperimentResult result = qbn::run_experiment(cfg);
    std::cout << "wrote " << result.summary_file << " (" << result.runs.size()
              << " rows)\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian-network parameter learning with qualitative constraints"};
    app.require_subcommand(1);

    std::string val_network;
    auto* validate = app.add_subcommand("validate", "Check a network file");
    validate->add_option("network", val_network, "network JSON file")->required();

    std::string smp_network, smp_out;
    int smp_count = 1000;
    uint64_t smp_seed = 0;
    std::vector<std::string> smp_hidden;
    auto* sample = app.add_subcommand("sample", "Draw cases by forward sampling");
    sample->add_option("network", smp_network, "ground-truth network JSON file")
        ->required();
    sample->add_option("--count", smp_count, "number of cases")->capture_default_str();
    sample->add_option("--hidden", smp_hidden, "variables omitted from the records");
    sample->add_option("--seed", smp_seed, "RNG seed")->capture_default_str();
    sample->add_option("--out", smp_out, "output dataset file")->required();

    std::string lrn_structure, lrn_data, lrn_algorithm;
    std::string lrn_constraints, lrn_test, lrn_curve, lrn_out;
    qbn::LearnConfig lrn_cfg;
    auto* learn = app.add_subcommand("learn", "Learn CPTs from data");
    learn
        ->add_option("structure", lrn_structure,
                     "network JSON file (CPTs re-initialized from --seed)")
        ->required();
    learn->add_option("data", lrn_data, "training dataset")->required();
    learn->add_option("--algorithm", lrn_algorithm, "em, apn, em-qc or apn-qc")
        ->required();
    learn->add_option("--iterations", lrn_cfg.iterations)->capture_default_str();
    learn->add_option("--weight", lrn_cfg.penalty_weight, "violation penalty weight w")
        ->capture_default_str();
    learn->add_option("--step-size", lrn_cfg.step_size, "gradient step size alpha")
        ->capture_default_str();
    learn->add_option("--min-prob", lrn_cfg.min_prob, "parameter floor")
        ->capture_default_str();
    learn->add_option("--seed", lrn_cfg.seed, "seed for the random initialization")
        ->capture_default_str();
    learn->add_option("--record-every", lrn_cfg.record_every, "curve recording stride")
        ->capture_default_str();
    learn->add_option("--constraints", lrn_constraints, "constraint JSON file");
    learn->add_option("--test-data", lrn_test, "held-out dataset scored along the curve");
    learn->add_option("--curve-out", lrn_curve, "write the learning curve here");
    learn->add_option("--out", lrn_out, "write the learned network here");

    std::string vio_network, vio_constraints;
    auto* violations = app.add_subcommand("violations", "Audit constraint violations");
    violations->add_option("network", vio_network)->required();
    violations->add_option("constraints", vio_constraints)->required();

    std::string evl_network, evl_test, evl_target;
    auto* eval = app.add_subcommand("eval", "Score a network on held-out data");
    eval->add_option("network", evl_network)->required();
    eval->add_option("data", evl_test)->required();
    eval->add_option("--target", evl_target, "variable scored by quadratic loss");

    std::string exp_config;
    auto* experiment =
        app.add_subcommand("experiment", "Run the full synthetic-data protocol");
    experiment->add_option("config", exp_config, "experiment config JSON file")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitDomain;
    }

    try {
        if (*validate) return cmd_validate(val_network);
        if (*sample)
            return cmd_sample(smp_network, smp_count, smp_hidden, smp_seed, smp_out);
        if (*learn)
            return cmd_learn(lrn_structure, lrn_data, lrn_algorithm, lrn_cfg,
                             lrn_constraints, lrn_test, lrn_curve, lrn_out);
        if (*violations) return cmd_violations(vio_network, vio_constraints);
        if (*eval) return cmd_eval(evl_network, evl_test, evl_target);
        if (*experiment) return cmd_experiment(exp_config);
    } catch (const qbn::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const qbn::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitDomain;
}
