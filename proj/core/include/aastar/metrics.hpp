#pragma once

#include <vector>

#include "aastar/star_ris.hpp"

namespace aastar {

// Powers and gains of the end-to-end link over the reference bandwidth.
struct LinkBudget {
    double p_a = 0.0;      // satellite transmit power, W
    double g_a = 0.0;      // satellite transmit gain, linear
    double sigma_k2 = 0.0; // user noise power, W
    double sigma_r2 = 0.0; // RIS amplifier noise power, W
};

// log2(1 + p_a g_a |h_rk^H Phi h_ar|^2 / (sigma_r2 ||h_rk^H Phi||^2 + sigma_k2))
double user_capacity(const ChannelVector &h_rk, const TransmissionMatrix &phi,
                     const ChannelVector &h_ar, const LinkBudget &budget);

// (sum r)^2 / (K sum r^2); defined as 1 when every rate is zero.
double jain_index(const std::vector<double> &rates);

// Fairness-weighted sum: jain_index(rates) * sum(rates).
double slot_objective(const std::vector<double> &rates);

} // namespace aastar
