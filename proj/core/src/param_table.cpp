#include "qbn/param_table.hpp"

#include "qbn/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qbn {

ParamTable zero_table(const Network& net) {
    ParamTable t(net.variable_count());
    for (int i = 0; i < net.variable_count(); ++i)
        t[i].assign(static_cast<size_t>(net.config_count(i)) *
                        net.variable(i).state_count(),
                    0.0);
    return t;
}

ParamTable cpts_to_table(const Network& net) {
    ParamTable t(net.variable_count());
    for (int i = 0; i < net.variable_count(); ++i) {
        const Cpt& cpt = net.cpt(i);
        t[i].resize(static_cast<size_t>(cpt.config_count()) * cpt.state_count());
        for (int k = 0; k < cpt.config_count(); ++k)
            for (int j = 0; j < cpt.state_count(); ++j)
                t[i][static_cast<size_t>(k) * cpt.state_count() + j] = cpt.at(k, j);
    }
    return t;
}

void set_cpts_from_table(Network& net, const ParamTable& table) {
    for (int i = 0; i < net.variable_count(); ++i) {
        int n = net.variable(i).state_count();
        int configs = net.config_count(i);
        Cpt cpt(configs, n);
        for (int k = 0; k < configs; ++k)
            for (int j = 0; j < n; ++j)
                cpt.at(k, j) = table[i][static_cast<size_t>(k) * n + j];
        net.set_cpt(i, std::move(cpt));
    }
}

double max_abs(const ParamTable& t) {
    double m = 0.0;
    for (const auto& block : t)
        for (double x : block) m = std::max(m, std::abs(x));
    return m;
}

void project_row_to_tangent(std::span<double> row) {
    double mean = std::accumulate(row.begin(), row.end(), 0.0) / row.size();
    for (double& x : row) x -= mean;
}

void project_rows_to_tangent(const Network& net, ParamTable& t) {
    for (int i = 0; i < net.variable_count(); ++i) {
        int n = net.variable(i).state_count();
        for (int k = 0; k < net.config_count(i); ++k)
            project_row_to_tangent({t[i].data() + static_cast<size_t>(k) * n,
                                    static_cast<size_t>(n)});
    }
}

namespace {

double clip(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }

} // namespace

void project_row_to_box_simplex(std::span<double> row, double eps) {
    const size_t n = row.size();
    if (n * eps >= 1.0)
        throw Error("min_prob floor too large for this row length");

    // x_j = clip(row_j - tau); sum_j x_j is continuous and nonincreasing
    // in tau, so bisection brackets the solution, after which the active
    // partition gives tau in closed form.
    double lo = *std::min_element(row.begin(), row.end()) - 1.0;
    double hi = *std::max_element(row.begin(), row.end());
    auto total = [&](double tau) {
        double s = 0.0;
        for (double r : row) s += clip(r - tau, eps, 1.0 - eps);
        return s;
    };
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        if (total(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    double tau = 0.5 * (lo + hi);

    double free_sum = 0.0;
    double bound_mass = 0.0;
    size_t free_count = 0;
    for (double r : row) {
        double v = r - tau;
        if (v <= eps)
            bound_mass += eps;
        else if (v >= 1.0 - eps)
            bound_mass += 1.0 - eps;
        else {
            free_sum += r;
            ++free_count;
        }
    }
    if (free_count > 0)
        tau = (free_sum - (1.0 - bound_mass)) / static_cast<double>(free_count);
    for (double& r : row) r = clip(r - tau, eps, 1.0 - eps);
}

std::vector<double> box_constrained_row_mle(std::span<const double> counts, double eps) {
    const size_t n = counts.size();
    if (n * eps >= 1.0)
        throw Error("min_prob floor too large for this row length");
    double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    if (!(total > 0.0))
        throw Error("box_constrained_row_mle requires a positive count total");

    // KKT: theta_j = clip(counts_j / lambda). sum_j theta_j is
    // nonincreasing in lambda; locate lambda by bisection, then resolve
    // the free entries exactly from the active partition.
    auto sum_at = [&](double lambda) {
        double s = 0.0;
        for (double c : counts) s += clip(c / lambda, eps, 1.0 - eps);
        return s;
    };
    double lo = total;  // sum_at(total) >= sum of c/total = 1
    double hi = *std::max_element(counts.begin(), counts.end()) / eps;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (sum_at(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    double lambda = 0.5 * (lo + hi);

    double free_sum = 0.0;
    double bound_mass = 0.0;
    for (double c : counts) {
        double v = c / lambda;
        if (v <= eps)
            bound_mass += eps;
        else if (v >= 1.0 - eps)
            bound_mass += 1.0 - eps;
        else
            free_sum += c;
    }
    if (free_sum > 0.0 && bound_mass < 1.0)
        lambda = free_sum / (1.0 - bound_mass);

    std::vector<double> theta(n);
    for (size_t j = 0; j < n; ++j) theta[j] = clip(counts[j] / lambda, eps, 1.0 - eps);
    return theta;
}

} // namespace qbn
