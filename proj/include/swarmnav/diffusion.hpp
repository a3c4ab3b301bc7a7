#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <utility>

#include "swarmnav/astar.hpp"
#include "swarmnav/error.hpp"
#include "swarmnav/mask.hpp"
#include "swarmnav/rng.hpp"
#include "swarmnav/schedule.hpp"

namespace swarmnav {

// x_t = sqrt(alpha_bar_t) * x0 + sqrt(1 - alpha_bar_t) * eps
inline TrajectoryMask forward_noise(const TrajectoryMask& x0, int t, const TrajectoryMask& eps,
                                    const NoiseSchedule& sched) {
    if (!x0.same_shape(eps)) throw DimMismatch("x0 and eps dims differ");
    if (t < 1 || t > sched.steps) throw InvalidStepCount("step outside schedule");
    const double a = std::sqrt(sched.alpha_bar[t]);
    const double b = std::sqrt(1.0 - sched.alpha_bar[t]);
    TrajectoryMask out(x0.height, x0.width);
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] = a * x0.data[i] + b * eps.data[i];
    return out;
}

// One reverse step in the predicted-x0 parameterization:
//   mu_t  = sqrt(alpha_bar_{t-1}) * beta_t / (1 - alpha_bar_t) * x0_hat
//         + sqrt(alpha_t) * (1 - alpha_bar_{t-1}) / (1 - alpha_bar_t) * x_t
//   x_{t-1} = mu_t + sqrt(beta_tilde_t) * z,   z dropped at t = 1.
inline TrajectoryMask posterior_step(const TrajectoryMask& x_t, const TrajectoryMask& x0_hat,
                                     int t, const TrajectoryMask& z, const NoiseSchedule& sched) {
    if (!x_t.same_shape(x0_hat) || !x_t.same_shape(z)) throw DimMismatch("posterior step dims differ");
    if (t < 1 || t > sched.steps) throw InvalidStepCount("step outside schedule");
    const double ab_prev = sched.alpha_bar[t - 1];
    const double ab = sched.alpha_bar[t];
    const double beta = sched.beta[t];
    const double coef_x0 = std::sqrt(ab_prev) * beta / (1.0 - ab);
    const double coef_xt = std::sqrt(sched.alpha[t]) * (1.0 - ab_prev) / (1.0 - ab);
    const double sigma = t > 1 ? std::sqrt(sched.posterior_variance[t]) : 0.0;
    TrajectoryMask out(x_t.height, x_t.width);
    for (std::size_t i = 0; i < out.data.size(); ++i)
        out.data[i] = coef_x0 * x0_hat.data[i] + coef_xt * x_t.data[i] + sigma * z.data[i];
    return out;
}

// Conditioning handed to a denoiser: the traversability grid plus the pinned
// endpoint cells.
struct DenoiseContext {
    const OccupancyGrid* grid = nullptr;
    Cell start;
    Cell goal;
};

// Seam for the learned network. Implementations predict the clean mask from a
// noisy one; output dims must equal input dims.
class Denoiser {
public:
    virtual ~Denoiser() = default;
    virtual TrajectoryMask predict_x0(const TrajectoryMask& x_t, int t,
                                      const DenoiseContext& ctx) const = 0;
};

// Returns the grid-search ground-truth mask for the conditioned endpoints,
// ignoring the noisy input. Validates the sampling loop independently of any
// trained weights.
class OracleDenoiser : public Denoiser {
public:
    explicit OracleDenoiser(int dilate_radius = 0) : dilate_radius_(dilate_radius) {}

    TrajectoryMask predict_x0(const TrajectoryMask&, int, const DenoiseContext& ctx) const override {
        return target(ctx);
    }

    const TrajectoryMask& target(const DenoiseContext& ctx) const {
        const std::uint64_t key = pack(ctx.start, ctx.goal);
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            const PixelPath path = astar_plan(*ctx.grid, ctx.start, ctx.goal);
            it = cache_.emplace(key, path_to_mask(path, ctx.grid->height, ctx.grid->width,
                                                  dilate_radius_)).first;
        }
        return it->second;
    }

private:
    static std::uint64_t pack(const Cell& a, const Cell& b) {
        auto u16 = [](int v) { return static_cast<std::uint64_t>(static_cast<std::uint16_t>(v)); };
        return u16(a.x) | u16(a.y) << 16 | u16(b.x) << 32 | u16(b.y) << 48;
    }

    int dilate_radius_;
    mutable std::map<std::uint64_t, TrajectoryMask> cache_;
};

// Partial-information stress denoiser: gamma * ground truth blended with the
// noisy input rescaled into [0,1]. Exercises sampler convergence when the
// prediction is imperfect.
class BlendDenoiser : public Denoiser {
public:
    explicit BlendDenoiser(double gamma, int dilate_radius = 0)
        : gamma_(gamma), oracle_(dilate_radius) {}

    TrajectoryMask predict_x0(const TrajectoryMask& x_t, int t,
                              const DenoiseContext& ctx) const override {
        TrajectoryMask out = oracle_.predict_x0(x_t, t, ctx);
        for (std::size_t i = 0; i < out.data.size(); ++i) {
            const double rescaled = std::clamp(x_t.data[i], 0.0, 1.0);
            out.data[i] = gamma_ * out.data[i] + (1.0 - gamma_) * rescaled;
        }
        return out;
    }

private:
    double gamma_;
    OracleDenoiser oracle_;
};

struct SampleOptions {
    bool zero_noise = false;  // deterministic limit: posterior z forced to 0
};

// Full reverse pass: x_T ~ N(0, I), then T posterior steps with endpoint
// inpainting after each one; the returned x_0 has its path channel clamped to
// [0,1].
inline TrajectoryMask sample(const Denoiser& denoiser, const DenoiseContext& ctx,
                             const NoiseSchedule& sched, std::uint64_t seed,
                             const SampleOptions& opts = {}) {
    const int h = ctx.grid->height;
    const int w = ctx.grid->width;
    Rng rng(seed);
    TrajectoryMask x(h, w);
    for (auto& v : x.data) v = rng.normal();

    TrajectoryMask z(h, w);
    for (int t = sched.steps; t >= 1; --t) {
        const TrajectoryMask x0_hat = denoiser.predict_x0(x, t, ctx);
        if (!x0_hat.same_shape(x)) throw DimMismatch("denoiser changed dims");
        if (t > 1 && !opts.zero_noise) {
            for (auto& v : z.data) v = rng.normal();
        } else {
            std::fill(z.data.begin(), z.data.end(), 0.0);
        }
        x = posterior_step(x, x0_hat, t, z, sched);
        inpaint_endpoints(x, ctx.start, ctx.goal);
    }
    const std::size_t plane = static_cast<std::size_t>(h) * w;
    for (std::size_t i = 2 * plane; i < 3 * plane; ++i)
        x.data[i] = std::clamp(x.data[i], 0.0, 1.0);
    return x;
}

struct LossWeights {
    double lambda_path = 1.0;
    double lambda_endpoint = 1.0;
    double w_t = 1.0;
    double w_s = 1.0;
    double w_g = 1.0;
};

struct LossBreakdown {
    double total = 0.0;
    double path = 0.0;
    double endpoint = 0.0;
};

// path term: w_t * mean squared error over the path channel;
// endpoint term: (w_s * L_s + w_g * L_g) / 2 over the endpoint channels;
// total: lambda_path * path + lambda_endpoint * endpoint.
inline LossBreakdown loss(const TrajectoryMask& pred, const TrajectoryMask& gt,
                          const LossWeights& w = {}) {
    if (!pred.same_shape(gt)) throw DimMismatch("loss dims differ");
    const std::size_t plane = static_cast<std::size_t>(pred.height) * pred.width;
    auto mse = [&](int c) {
        double s = 0.0;
        for (std::size_t i = plane * c; i < plane * (c + 1); ++i) {
            const double d = pred.data[i] - gt.data[i];
            s += d * d;
        }
        return s / static_cast<double>(plane);
    };
    LossBreakdown out;
    out.path = w.w_t * mse(2);
    out.endpoint = 0.5 * (w.w_s * mse(0) + w.w_g * mse(1));
    out.total = w.lambda_path * out.path + w.lambda_endpoint * out.endpoint;
    return out;
}

}  // namespace swarmnav
