#pragma once

#include <cstdint>
#include <vector>

#include "aastar/diffusion.hpp"

namespace aastar {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

LinearFit linear_fit(const std::vector<double> &x, const std::vector<double> &y);

struct LatencyPoint {
    int steps = 0;
    double mean_ms = 0.0;
};

// Mean wall-clock of one reverse-chain action sample per diffusion-step count.
// The predictor is fixed; only the schedule length varies across points.
std::vector<LatencyPoint> inference_latency_table(int state_dim, int action_dim, int hidden_width,
                                                  int hidden_layers, int embed_dim,
                                                  const std::vector<int> &steps_axis, int reps,
                                                  std::uint64_t seed);

} // namespace aastar
