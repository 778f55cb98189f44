#include "aastar/metrics.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace aastar {

double user_capacity(const ChannelVector &h_rk, const TransmissionMatrix &phi,
                     const ChannelVector &h_ar, const LinkBudget &budget) {
    const double signal = budget.p_a * budget.g_a * std::norm(compose_cascade(h_rk, phi, h_ar));
    const double noise = budget.sigma_r2 * effective_noise_gain(h_rk, phi) + budget.sigma_k2;
    return std::log2(1.0 + signal / noise);
}

double jain_index(const std::vector<double> &rates) {
    if (rates.empty())
        throw std::invalid_argument("jain_index: need at least one rate");
    double sum = 0.0, sum_sq = 0.0;
    for (double r : rates) {
        sum += r;
        sum_sq += r * r;
    }
    if (sum_sq == 0.0)
        return 1.0; // all-zero slot; the objective is zero anyway
    return sum * sum / (static_cast<double>(rates.size()) * sum_sq);
}

double slot_objective(const std::vector<double> &rates) {
    const double sum = std::accumulate(rates.begin(), rates.end(), 0.0);
    return jain_index(rates) * sum;
}

} // namespace aastar
