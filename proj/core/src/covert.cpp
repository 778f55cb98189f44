#include "aastar/covert.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aastar {

WardenExposure warden_exposure(const ChannelVector &h_rw, const TransmissionMatrix &phi,
                               const ChannelVector &h_ar, double p_a_g_a, double sigma_r2) {
    const double signal = std::norm(compose_cascade(h_rw, phi, h_ar));
    const double noise_gain = effective_noise_gain(h_rw, phi);
    return {p_a_g_a * signal + sigma_r2 * noise_gain};
}

double dep_given_threshold(double iota, double tau, const CovertParams &p) {
    if (tau <= 0.0)
        throw std::invalid_argument("dep_given_threshold: tau must be positive");

    const double lo_support = p.support_lo();
    const double hi_support = p.support_hi();
    double lo = std::clamp(std::max(tau - iota, lo_support), lo_support, hi_support);
    double hi = std::clamp(tau, lo_support, hi_support);
    if (lo >= hi)
        return 1.0;
    return 1.0 - (std::log(hi) - std::log(lo)) / (2.0 * std::log(p.rho));
}

double optimal_threshold(double iota, const CovertParams &p) {
    if (iota < 0.0)
        throw std::invalid_argument("optimal_threshold: iota must be >= 0");
    return std::min(iota + p.support_lo(), p.support_hi());
}

double minimal_dep(double iota, const CovertParams &p) {
    if (iota < 0.0)
        throw std::invalid_argument("minimal_dep: iota must be >= 0");
    const double full_span = p.support_hi() - p.support_lo();
    if (iota > full_span)
        return 0.0;
    const double dep =
        1.0 - std::log1p(p.rho * iota / p.sigma_w2_nominal) / (2.0 * std::log(p.rho));
    return std::clamp(dep, 0.0, 1.0);
}

double covert_budget(const CovertParams &p) {
    const double span = p.support_hi() - p.support_lo();
    const double from_dep = (std::pow(p.rho, 2.0 * p.epsilon) - 1.0) * p.sigma_w2_nominal / p.rho;
    return std::min(span, from_dep);
}

bool is_covert(double iota, const CovertParams &p) { return iota < covert_budget(p); }

} // namespace aastar
