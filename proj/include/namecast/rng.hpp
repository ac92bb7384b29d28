#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace namecast {

// Seeded generator with hand-rolled transforms. mt19937_64 output is pinned
// by the standard; std::*_distribution is not, so sampling stays here to keep
// artifacts byte-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // inclusive bounds
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(uniform() * (hi - lo + 1));
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    // index drawn proportionally to non-negative weights (need not sum to 1)
    int sample_discrete(const std::vector<double>& weights) {
        double total = 0;
        for (double w : weights) total += w;
        double x = uniform() * total;
        double acc = 0;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            acc += weights[i];
            if (x < acc) return static_cast<int>(i);
        }
        return static_cast<int>(weights.size()) - 1;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0;
    bool have_spare_ = false;
};

}  // namespace namecast
