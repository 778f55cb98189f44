#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "aastar/geometry.hpp"
#include "aastar/rng.hpp"

namespace aastar {

// Per-slot complex gain vector of one link, one entry per RIS element.
using ChannelVector = Eigen::VectorXcd;

// Large-scale and small-scale parameters of one Rician link.
struct LinkParams {
    double l0 = 1.0;    // linear power gain at the 1 m reference distance
    double alpha = 2.0; // path-loss exponent
    double kappa = 0.0; // Rician factor, linear
};

// Uniform planar array of the RIS.
struct ArrayGeometry {
    int mx = 1;
    int my = 1;
    double dx = 0.0;         // element spacing along x, m
    double dy = 0.0;         // element spacing along y, m
    double wavelength = 0.0; // m

    int elements() const { return mx * my; }
};

struct ChannelLinks {
    LinkParams ar; // satellite -> RIS
    LinkParams rk; // RIS -> user
    LinkParams rw; // RIS -> Warden
};

// One slot's draw of every link the system needs.
struct ChannelSet {
    ChannelVector h_ar;
    std::vector<ChannelVector> h_rk; // one per user
    ChannelVector h_rw;
};

// Spatial frequencies (u, v) of the line from `from` to `to`:
// u = (to.x - from.x) / |to - from|, v likewise on y. Throws on coincident points.
std::pair<double, double> direction_cosines(const Position3 &from, const Position3 &to);

// Planar-array response: x-axis phase ramp Kronecker y-axis phase ramp,
// entry (ix, iy) = exp(-j 2pi/lambda (dx ix u + dy iy v)). Unit modulus entries.
ChannelVector steering_vector(const ArrayGeometry &geom, double u, double v);

// i.i.d. circularly symmetric complex Gaussian entries, unit variance.
ChannelVector sample_nlos(int m, Rng &rng);

// sqrt(l0 d^-alpha) ( sqrt(kappa/(kappa+1)) los + sqrt(1/(kappa+1)) nlos )
ChannelVector rician_channel(const LinkParams &link, double d, const ChannelVector &los,
                             const ChannelVector &nlos);

// Composes the above for all links of one slot. LoS parts are deterministic in the
// geometry; one independent NLoS draw per link. Draw order: ar, rk[0..K), rw.
ChannelSet sample_channel_set(const NodeLayout &layout, const ArrayGeometry &geom,
                              const ChannelLinks &links, Rng &rng);

} // namespace aastar
