#include "qbn/experiment.hpp"

#include "qbn/error.hpp"
#include "qbn/eval.hpp"
#include "qbn/io.hpp"
#include "qbn/sampling.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace qbn {
namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_curve(const std::string& path, const RunTrace& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << "iteration,train_nll_per_case,test_nll_per_case,violation\n";
    for (const TraceRow& row : trace.rows) {
        out << row.iteration << ',' << fmt(-row.train_log_likelihood_per_case) << ',';
        if (row.test_log_likelihood_per_case)
            out << fmt(-*row.test_log_likelihood_per_case);
        out << ',';
        if (row.violation) out << fmt(*row.violation);
        out << '\n';
    }
}

} // namespace

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }

    ExperimentConfig cfg;
    try {
        cfg.ground_truth_path = doc.at("ground_truth").get<std::string>();
        cfg.constraints_path = doc.at("constraints").get<std::string>();
        cfg.structure_path = doc.value("structure", std::string{});
        cfg.hidden = doc.value("hidden", std::vector<std::string>{});
        if (doc.contains("target")) cfg.target = doc.at("target").get<std::string>();
        cfg.train_count = doc.value("train_count", cfg.train_count);
        cfg.test_count = doc.value("test_count", cfg.test_count);
        cfg.replications = doc.value("replications", cfg.replications);
        if (doc.contains("algorithms")) {
            cfg.algorithms.clear();
            for (const auto& name : doc.at("algorithms"))
                cfg.algorithms.push_back(algorithm_from_name(name.get<std::string>()));
        }
        cfg.iterations = doc.value("iterations", cfg.iterations);
        cfg.penalty_weight = doc.value("weight", cfg.penalty_weight);
        cfg.step_size = doc.value("step_size", cfg.step_size);
        cfg.min_prob = doc.value("min_prob", cfg.min_prob);
        cfg.record_every = doc.value("record_every", cfg.record_every);
        cfg.hybrid_scale_by_weight =
            doc.value("hybrid_scale_by_weight", cfg.hybrid_scale_by_weight);
        cfg.master_seed = doc.value("master_seed", cfg.master_seed);
        cfg.output_dir = doc.at("output_dir").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return cfg;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.replications < 1) throw Error("replications must be >= 1");
    if (cfg.train_count < 1 || cfg.test_count < 1) throw Error("case counts must be >= 1");
    if (cfg.algorithms.empty()) throw Error("no algorithms selected");

    Network truth = load_network(cfg.ground_truth_path);
    ConstraintSet cs = load_constraints(cfg.constraints_path, truth);
    Network structure =
        cfg.structure_path.empty() ? truth : load_network(cfg.structure_path);

    std::filesystem::create_directories(cfg.output_dir);
    auto out_path = [&](const std::string& name) {
        return (std::filesystem::path(cfg.output_dir) / name).string();
    };

    SamplingSpec train_spec{cfg.train_count,
                            {cfg.hidden.begin(), cfg.hidden.end()},
                            cfg.master_seed};
    SamplingSpec test_spec{cfg.test_count,
                           {cfg.hidden.begin(), cfg.hidden.end()},
                           cfg.master_seed + static_cast<uint64_t>(cfg.replications) + 1};
    Dataset train = forward_sample(truth, train_spec);
    Dataset test = forward_sample(truth, test_spec);

    ExperimentResult result;
    result.train_file = out_path("train.csv");
    result.test_file = out_path("test.csv");
    save_dataset(train, truth, result.train_file);
    save_dataset(test, truth, result.test_file);

    int target_index = -1;
    if (cfg.target) {
        target_index = truth.index_of(*cfg.target);
        if (target_index < 0) throw Error("unknown target variable '" + *cfg.target + "'");
    }

    auto score = [&](const Network& net, const std::string& algorithm, int rep,
                     const std::string& curve_file) {
        ExperimentRun run;
        run.algorithm = algorithm;
        run.replication = rep;
        run.train_nll_per_case = avg_neg_log_likelihood(net, train);
        run.test_nll_per_case = avg_neg_log_likelihood(net, test);
        run.violation = total_violation(net, cs);
        if (target_index >= 0)
            run.quadratic_loss = avg_quadratic_loss(net, test, target_index);
        run.curve_file = curve_file;
        return run;
    };

    result.runs.push_back(score(truth, "baseline", 0, ""));

    for (Algorithm algorithm : cfg.algorithms) {
        for (int rep = 1; rep <= cfg.replications; ++rep) {
            LearnConfig lc;
            lc.algorithm = algorithm;
            lc.iterations = cfg.iterations;
            lc.penalty_weight = cfg.penalty_weight;
            lc.step_size = cfg.step_size;
            lc.min_prob = cfg.min_prob;
            lc.record_every = cfg.record_every;
            lc.hybrid_scale_by_weight = cfg.hybrid_scale_by_weight;
            lc.seed = cfg.master_seed + static_cast<uint64_t>(rep);

            Network net0 = random_init(structure, lc.seed, lc.min_prob);
            LearnResult learned = learn(net0, train, &cs, lc, &test);

            std::string curve = out_path("curve_" + algorithm_name(algorithm) + "_rep" +
                                         std::to_string(rep) + ".csv");
            write_curve(curve, learned.trace);
            result.runs.push_back(score(learned.net, algorithm_name(algorithm), rep, curve));
        }
    }

    result.summary_file = out_path("summary.csv");
    std::ofstream summary(result.summary_file, std::ios::binary);
    if (!summary) throw ParseError("cannot write '" + result.summary_file + "'");
    summary << "algorithm,replication,train_nll_per_case,test_nll_per_case,"
               "violation,quadratic_loss\n";
    for (const ExperimentRun& run : result.runs) {
        summary << run.algorithm << ',' << run.replication << ','
                << fmt(run.train_nll_per_case) << ',' << fmt(run.test_nll_per_case) << ','
                << fmt(run.violation) << ',';
        if (run.quadratic_loss) summary << fmt(*run.quadratic_loss);
        summary << '\n';
    }
    return result;
}

} // namespace qbn
