#pragma once

#include <complex>
#include <vector>

#include "aastar/channel.hpp"

namespace aastar {

// Per-element amplification gains and phase shifts of the active STAR-RIS
// (the diagonal of the transmission coefficient matrix).
struct TransmissionMatrix {
    Eigen::VectorXd betas; // each > 1 for an active surface
    Eigen::VectorXd phis;  // radians, in [0, 2pi]

    int size() const { return static_cast<int>(betas.size()); }
    std::complex<double> coeff(int m) const { return std::polar(betas[m], phis[m]); }
};

struct RisPowerBudget {
    double p_max_active = 0.0; // W
    double sigma_r2 = 0.0;     // amplifier noise power, W
};

// h_out^H diag(beta e^{j phi}) h_in
std::complex<double> compose_cascade(const ChannelVector &h_out, const TransmissionMatrix &phi,
                                     const ChannelVector &h_in);

// ||h_out^H Phi||^2 = sum_m |h_out,m|^2 beta_m^2 -- the amplified-noise gain.
double effective_noise_gain(const ChannelVector &h_out, const TransmissionMatrix &phi);

// p_in ||Phi h_ar||^2 + sigma_r2 ||Phi||_F^2, the surface's radiated power.
double ris_output_power(const TransmissionMatrix &phi, const ChannelVector &h_ar, double p_in,
                        double sigma_r2);

enum class RisViolation {
    amplification_gain, // some beta_m <= 1 (constraint is strict)
    phase_range,        // some phi_m outside [0, 2pi]
    power_budget,       // output power >= p_max_active (constraint is strict)
};

std::vector<RisViolation> validate(const TransmissionMatrix &phi, const RisPowerBudget &budget,
                                   const ChannelVector &h_ar, double p_in);

} // namespace aastar
