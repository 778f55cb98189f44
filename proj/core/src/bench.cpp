#include "aastar/bench.hpp"

#include <chrono>
#include <stdexcept>

namespace aastar {

LinearFit linear_fit(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit: need at least two points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0)
        throw std::invalid_argument("linear_fit: degenerate x values");

    LinearFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;

    const double mean_y = sy / n;
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double pred = fit.slope * x[i] + fit.intercept;
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
    }
    fit.r2 = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

std::vector<LatencyPoint> inference_latency_table(int state_dim, int action_dim, int hidden_width,
                                                  int hidden_layers, int embed_dim,
                                                  const std::vector<int> &steps_axis, int reps,
                                                  std::uint64_t seed) {
    if (steps_axis.empty())
        throw std::invalid_argument("inference_latency_table: empty steps axis");
    for (int t : steps_axis)
        if (t < 1)
            throw std::invalid_argument("inference_latency_table: diffusion steps must be >= 1");
    if (reps < 1)
        throw std::invalid_argument("inference_latency_table: reps must be >= 1");

    DiffusionPolicy policy;
    policy.action_dim = action_dim;
    policy.condition_dim = state_dim;
    policy.embed_dim = embed_dim;
    Rng init_rng(split_seed(seed, "bench-init"));
    policy.net = Mlp::init(DiffusionPolicy::make_spec(action_dim, state_dim, embed_dim,
                                                      hidden_width, hidden_layers),
                           init_rng, 0.01);

    Rng rng(split_seed(seed, "bench"));
    Eigen::VectorXd state(state_dim);
    for (int i = 0; i < state_dim; ++i)
        state[i] = rng.uniform(-1.0, 1.0);

    std::vector<LatencyPoint> table;
    table.reserve(steps_axis.size());
    for (int t : steps_axis) {
        policy.schedule = make_schedule(t, ScheduleKind::cosine);
        // warm up caches before timing
        for (int i = 0; i < 5; ++i)
            sample_action(state, policy, rng);

        const auto start = std::chrono::steady_clock::now();
        for (int i = 0; i < reps; ++i)
            sample_action(state, policy, rng);
        const std::chrono::duration<double, std::milli> elapsed =
            std::chrono::steady_clock::now() - start;
        table.push_back({t, elapsed.count() / reps});
    }
    return table;
}

} // namespace aastar
