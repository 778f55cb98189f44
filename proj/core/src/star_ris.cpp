#include "aastar/star_ris.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aastar {

namespace {

void require_same_size(const ChannelVector &h, const TransmissionMatrix &phi, const char *where) {
    if (h.size() != phi.betas.size() || phi.betas.size() != phi.phis.size())
        throw std::invalid_argument(std::string(where) + ": dimension mismatch");
}

} // namespace

std::complex<double> compose_cascade(const ChannelVector &h_out, const TransmissionMatrix &phi,
                                     const ChannelVector &h_in) {
    require_same_size(h_out, phi, "compose_cascade");
    if (h_in.size() != h_out.size())
        throw std::invalid_argument("compose_cascade: dimension mismatch");

    std::complex<double> acc = 0.0;
    for (int m = 0; m < h_in.size(); ++m)
        acc += std::conj(h_out[m]) * phi.coeff(m) * h_in[m];
    return acc;
}

double effective_noise_gain(const ChannelVector &h_out, const TransmissionMatrix &phi) {
    require_same_size(h_out, phi, "effective_noise_gain");
    double acc = 0.0;
    for (int m = 0; m < h_out.size(); ++m)
        acc += std::norm(h_out[m]) * phi.betas[m] * phi.betas[m];
    return acc;
}

double ris_output_power(const TransmissionMatrix &phi, const ChannelVector &h_ar, double p_in,
                        double sigma_r2) {
    require_same_size(h_ar, phi, "ris_output_power");
    if (p_in < 0.0)
        throw std::invalid_argument("ris_output_power: p_in must be >= 0");

    double forward = 0.0;   // ||Phi h_ar||^2
    double frobenius = 0.0; // ||Phi||_F^2 = sum beta_m^2
    for (int m = 0; m < h_ar.size(); ++m) {
        const double b2 = phi.betas[m] * phi.betas[m];
        forward += b2 * std::norm(h_ar[m]);
        frobenius += b2;
    }
    return p_in * forward + sigma_r2 * frobenius;
}

std::vector<RisViolation> validate(const TransmissionMatrix &phi, const RisPowerBudget &budget,
                                   const ChannelVector &h_ar, double p_in) {
    std::vector<RisViolation> violations;
    if ((phi.betas.array() <= 1.0).any())
        violations.push_back(RisViolation::amplification_gain);
    if ((phi.phis.array() < 0.0).any() || (phi.phis.array() > 2.0 * std::numbers::pi).any())
        violations.push_back(RisViolation::phase_range);
    if (ris_output_power(phi, h_ar, p_in, budget.sigma_r2) >= budget.p_max_active)
        violations.push_back(RisViolation::power_budget);
    return violations;
}

} // namespace aastar
