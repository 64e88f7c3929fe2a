#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace qbn {

// Seeded generator with a pinned algorithm (mt19937_64 plus explicit
// output mapping), so streams are bit-stable across platforms and
// standard-library versions.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    // Uniform double in the open interval (0, 1).
    double next_unit() {
        return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Index drawn from an unnormalized weight vector.
    int categorical(std::span<const double> weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        double u = next_unit() * total;
        double acc = 0.0;
        for (size_t j = 0; j + 1 < weights.size(); ++j) {
            acc += weights[j];
            if (u < acc) return static_cast<int>(j);
        }
        return static_cast<int>(weights.size()) - 1;
    }

    // Uniform draw from the probability simplex (flat Dirichlet), via
    // normalized unit-exponential variates.
    std::vector<double> simplex(int n) {
        std::vector<double> x(n);
        double total = 0.0;
        for (int j = 0; j < n; ++j) {
            x[j] = -std::log(next_unit());
            total += x[j];
        }
        for (double& v : x) v /= total;
        return x;
    }

private:
    std::mt19937_64 gen_;
};

} // namespace qbn
