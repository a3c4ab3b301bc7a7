#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace swarmnav {

// Seeded generator with hand-rolled Gaussian sampling. std::mt19937_64 has a
// standard-specified sequence, but std::normal_distribution does not, so the
// Box-Muller transform is spelled out to keep runs replayable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform double in (0, 1].
    double uniform() {
        return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
    }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace swarmnav
