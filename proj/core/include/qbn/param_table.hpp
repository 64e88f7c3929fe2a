#pragma once

#include "qbn/network.hpp"

#include <span>
#include <vector>

namespace qbn {

// One flat array per variable, laid out like that variable's CPT
// ([k * n_states + j]). Used for gradients, family posteriors, and
// expected counts alike.
using ParamTable = std::vector<std::vector<double>>;

// All-zero table shaped like net's CPTs.
ParamTable zero_table(const Network& net);

// Copies of the CPT entries in ParamTable shape, and back.
ParamTable cpts_to_table(const Network& net);
void set_cpts_from_table(Network& net, const ParamTable& table);

double max_abs(const ParamTable& t);

// Orthogonal projection of one CPT-row slice onto the tangent space of
// the row-sum constraint: subtracts the row mean from every component.
void project_row_to_tangent(std::span<double> row);

// Applies project_row_to_tangent to every row of every variable.
void project_rows_to_tangent(const Network& net, ParamTable& t);

// Euclidean projection of a row onto {x : sum x = 1, eps <= x_j <= 1-eps}.
// Entries pushed outside the box land exactly on the bound and the row
// sums to 1 exactly (up to rounding).
void project_row_to_box_simplex(std::span<double> row, double eps);

// Maximizer of sum_j counts[j] * ln(theta_j) over the same truncated
// simplex. Equals counts / sum(counts) whenever that point is interior.
// Requires sum(counts) > 0.
std::vector<double> box_constrained_row_mle(std::span<const double> counts, double eps);

} // namespace qbn
