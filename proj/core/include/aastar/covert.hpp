#pragma once

#include "aastar/star_ris.hpp"

namespace aastar {

// Noise-uncertainty model of the Warden: its noise power is log-uniform on
// [sigma_w2_nominal / rho, rho * sigma_w2_nominal].
struct CovertParams {
    double rho = 1.0;              // linear noise-uncertainty factor, > 1
    double sigma_w2_nominal = 0.0; // W
    double epsilon = 0.0;          // covertness tolerance, in (0, 1)

    double support_lo() const { return sigma_w2_nominal / rho; }
    double support_hi() const { return rho * sigma_w2_nominal; }
};

// Covert-signal power received by the Warden under transmission.
struct WardenExposure {
    double iota = 0.0; // W
};

// iota = p_a g_a |h_rw^H Phi h_ar|^2 + sigma_r2 ||h_rw^H Phi||^2
WardenExposure warden_exposure(const ChannelVector &h_rw, const TransmissionMatrix &phi,
                               const ChannelVector &h_ar, double p_a_g_a, double sigma_r2);

// Detection error probability (false alarm + miss detection) of the infinite-sample
// radiometer at threshold tau:
//   xi = 1 - integral_{max(tau - iota, lo)}^{tau} dx / (2 ln(rho) x),
// with both limits clipped to the noise support and an empty integral giving 1.
double dep_given_threshold(double iota, double tau, const CovertParams &p);

// tau* = min(iota + sigma^2/rho, rho sigma^2), the DEP-minimizing threshold.
double optimal_threshold(double iota, const CovertParams &p);

// DEP at the optimal threshold:
//   1 - ln(1 + rho iota / sigma^2) / (2 ln rho)  while iota <= rho sigma^2 - sigma^2/rho,
//   0 beyond.
double minimal_dep(double iota, const CovertParams &p);

// Largest exposure keeping minimal_dep >= 1 - epsilon:
//   min(rho sigma^2 - sigma^2/rho, (rho^{2 epsilon} - 1) sigma^2 / rho)
double covert_budget(const CovertParams &p);

// iota strictly below the budget.
bool is_covert(double iota, const CovertParams &p);

} // namespace aastar
