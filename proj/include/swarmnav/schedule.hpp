#pragma once

#include <cmath>
#include <vector>

#include "swarmnav/error.hpp"

namespace swarmnav {

// Variance schedule for T diffusion steps. Vectors are indexed by step t in
// 1..T; index 0 carries alpha_bar[0] = 1 and placeholder zeros elsewhere.
struct NoiseSchedule {
    int steps = 0;
    std::vector<double> beta;
    std::vector<double> alpha;
    std::vector<double> alpha_bar;
    std::vector<double> posterior_variance;  // beta_tilde
};

// Squared-cosine schedule: alpha_bar(t) = f(t)/f(0) with
// f(t) = cos^2(((t/T + s)/(1 + s)) * pi/2), offset s = 0.008. Betas are the
// step ratios clipped to 0.999, and alpha_bar is rebuilt from the clipped
// betas so the cumulative product stays exact.
inline NoiseSchedule cosine_schedule(int steps) {
    if (steps < 2) throw InvalidStepCount("schedule needs at least 2 steps");
    constexpr double s = 0.008;
    auto f = [steps](int t) {
        const double u = ((static_cast<double>(t) / steps + s) / (1.0 + s)) * M_PI / 2.0;
        const double c = std::cos(u);
        return c * c;
    };

    NoiseSchedule sched;
    sched.steps = steps;
    sched.beta.assign(steps + 1, 0.0);
    sched.alpha.assign(steps + 1, 0.0);
    sched.alpha_bar.assign(steps + 1, 0.0);
    sched.posterior_variance.assign(steps + 1, 0.0);

    const double f0 = f(0);
    double prev_raw = 1.0;
    sched.alpha_bar[0] = 1.0;
    for (int t = 1; t <= steps; ++t) {
        const double raw = f(t) / f0;
        double beta = 1.0 - raw / prev_raw;
        beta = std::min(beta, 0.999);
        prev_raw = raw;
        sched.beta[t] = beta;
        sched.alpha[t] = 1.0 - beta;
        sched.alpha_bar[t] = sched.alpha_bar[t - 1] * sched.alpha[t];
        sched.posterior_variance[t] =
            (1.0 - sched.alpha_bar[t - 1]) / (1.0 - sched.alpha_bar[t]) * beta;
    }
    return sched;
}

}  // namespace swarmnav
