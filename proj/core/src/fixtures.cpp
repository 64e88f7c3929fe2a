#include "qbn/fixtures.hpp"

#include <initializer_list>

namespace qbn {
namespace {

void fill_cpt(Network& net, const std::string& name,
              std::initializer_list<std::initializer_list<double>> rows) {
    int i = net.index_of(name);
    Cpt cpt(net.config_count(i), net.variable(i).state_count());
    int k = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (double p : row) cpt.at(k, j++) = p;
        ++k;
    }
    net.set_cpt(i, std::move(cpt));
}

} // namespace

Fixture assistance_fixture() {
    Fixture fx;
    Network& net = fx.network;
    net.add_variable({"SECONDARY_TASK", {"absent", "present"}}, {});
    net.add_variable({"PRESENTATION", {"stepwise", "bundled"}}, {});
    net.add_variable({"TIME_PRESSURE", {"low", "high"}}, {});
    net.add_variable({"COGNITIVE_LOAD", {"low", "medium", "high"}},
                     {"SECONDARY_TASK", "PRESENTATION", "TIME_PRESSURE"});
    net.add_variable({"ERROR_IN_PRIMARY_TASK", {"no", "yes"}}, {"COGNITIVE_LOAD"});
    net.add_variable({"EXECUTION_TIME", {"very_short", "short", "long", "very_long"}},
                     {"COGNITIVE_LOAD"});
    net.add_variable({"SUBJECTIVE_WORKLOAD", {"low", "medium", "high"}},
                     {"COGNITIVE_LOAD"});

    fill_cpt(net, "SECONDARY_TASK", {{0.5, 0.5}});
    fill_cpt(net, "PRESENTATION", {{0.5, 0.5}});
    fill_cpt(net, "TIME_PRESSURE", {{0.55, 0.45}});
    // rows ordered (SECONDARY_TASK, PRESENTATION, TIME_PRESSURE), last fastest;
    // the upper-tail sums step by 0.28 per active parent
    fill_cpt(net, "COGNITIVE_LOAD", {{0.86, 0.12, 0.02},
                                     {0.58, 0.12, 0.30},
                                     {0.58, 0.12, 0.30},
                                     {0.30, 0.12, 0.58},
                                     {0.58, 0.12, 0.30},
                                     {0.30, 0.12, 0.58},
                                     {0.30, 0.12, 0.58},
                                     {0.02, 0.12, 0.86}});
    fill_cpt(net, "ERROR_IN_PRIMARY_TASK", {{0.95, 0.05}, {0.60, 0.40}, {0.12, 0.88}});
    fill_cpt(net, "EXECUTION_TIME", {{0.55, 0.30, 0.10, 0.05},
                                     {0.30, 0.35, 0.25, 0.10},
                                     {0.10, 0.25, 0.35, 0.30}});
    fill_cpt(net, "SUBJECTIVE_WORKLOAD",
             {{0.70, 0.22, 0.08}, {0.35, 0.40, 0.25}, {0.10, 0.30, 0.60}});

    fx.constraints.influences = {
        {"SECONDARY_TASK", "COGNITIVE_LOAD", Sign::positive},
        {"PRESENTATION", "COGNITIVE_LOAD", Sign::positive},
        {"TIME_PRESSURE", "COGNITIVE_LOAD", Sign::positive},
        {"COGNITIVE_LOAD", "ERROR_IN_PRIMARY_TASK", Sign::positive},
    };
    fx.hidden = {"COGNITIVE_LOAD"};
    fx.target = "ERROR_IN_PRIMARY_TASK";
    return fx;
}

Fixture abstract_fixture() {
    Fixture fx;
    Network& net = fx.network;
    net.add_variable({"A", {"a1", "a2"}}, {});
    net.add_variable({"B", {"b1", "b2", "b3"}}, {});
    net.add_variable({"C", {"c1", "c2"}}, {});
    net.add_variable({"H1", {"h1_lo", "h1_hi"}}, {"A", "B"});
    net.add_variable({"H2", {"h2_lo", "h2_hi"}}, {"C"});
    net.add_variable({"D", {"d1", "d2"}}, {"H1"});
    net.add_variable({"E", {"e1", "e2", "e3"}}, {"H2"});
    net.add_variable({"F", {"f1", "f2", "f3"}}, {"H2", "A"});
    net.add_variable({"L", {"l1", "l2", "l3"}}, {"H1", "H2"});
    net.add_variable({"G", {"g1", "g2", "g3"}}, {"H1", "H2"});

    fill_cpt(net, "A", {{0.5, 0.5}});
    fill_cpt(net, "B", {{0.46, 0.46, 0.08}});  // b3 contexts are data-starved on purpose
    fill_cpt(net, "C", {{0.5, 0.5}});
    // rows ordered (A, B), B fastest
    fill_cpt(net, "H1", {{0.90, 0.10}, {0.54, 0.46}, {0.18, 0.82},
                         {0.82, 0.18}, {0.46, 0.54}, {0.10, 0.90}});
    fill_cpt(net, "H2", {{0.22, 0.78}, {0.70, 0.30}});
    fill_cpt(net, "D", {{0.88, 0.12}, {0.25, 0.75}});
    fill_cpt(net, "E", {{0.60, 0.25, 0.15}, {0.25, 0.30, 0.45}});
    // rows ordered (H2, A), A fastest
    fill_cpt(net, "F", {{0.15, 0.35, 0.50}, {0.25, 0.40, 0.35},
                        {0.50, 0.32, 0.18}, {0.60, 0.25, 0.15}});
    // rows ordered (H1, H2), H2 fastest
    fill_cpt(net, "L", {{0.55, 0.30, 0.15}, {0.30, 0.35, 0.35},
                        {0.28, 0.40, 0.32}, {0.12, 0.30, 0.58}});
    fill_cpt(net, "G", {{0.58, 0.10, 0.32}, {0.86, 0.10, 0.04},
                        {0.24, 0.10, 0.66}, {0.52, 0.10, 0.38}});

    fx.constraints.influences = {
        {"B", "H1", Sign::positive},
        {"C", "H2", Sign::negative},
        {"H1", "D", Sign::positive},
        {"H1", "G", Sign::positive},
    };
    fx.hidden = {"H1", "H2"};
    fx.target = "G";
    return fx;
}

std::pair<Fixture, Fixture> fixture_networks() {
    return {assistance_fixture(), abstract_fixture()};
}

} // namespace qbn
