#include "aastar/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aastar {

std::pair<double, double> direction_cosines(const Position3 &from, const Position3 &to) {
    const double d = distance(from, to);
    if (d <= 0.0)
        throw std::invalid_argument("direction_cosines: coincident endpoints");
    return {(to.x - from.x) / d, (to.y - from.y) / d};
}

ChannelVector steering_vector(const ArrayGeometry &geom, double u, double v) {
    const double k = 2.0 * std::numbers::pi / geom.wavelength;
    ChannelVector h(geom.elements());
    int m = 0;
    for (int ix = 0; ix < geom.mx; ++ix) {
        const double phase_x = -k * geom.dx * ix * u;
        for (int iy = 0; iy < geom.my; ++iy) {
            const double phase_y = -k * geom.dy * iy * v;
            h[m++] = std::polar(1.0, phase_x + phase_y);
        }
    }
    return h;
}

ChannelVector sample_nlos(int m, Rng &rng) {
    if (m < 1)
        throw std::invalid_argument("sample_nlos: m must be >= 1");
    const double scale = std::numbers::sqrt2 / 2.0; // per-component variance 1/2
    ChannelVector h(m);
    for (int i = 0; i < m; ++i) {
        const double re = rng.gaussian();
        const double im = rng.gaussian();
        h[i] = std::complex<double>(re * scale, im * scale);
    }
    return h;
}

ChannelVector rician_channel(const LinkParams &link, double d, const ChannelVector &los,
                             const ChannelVector &nlos) {
    if (d <= 0.0)
        throw std::invalid_argument("rician_channel: distance must be positive");
    if (los.size() != nlos.size())
        throw std::invalid_argument("rician_channel: LoS/NLoS length mismatch");

    const double large_scale = std::sqrt(link.l0 * std::pow(d, -link.alpha));
    double w_los, w_nlos;
    if (std::isinf(link.kappa)) {
        w_los = 1.0;
        w_nlos = 0.0;
    } else {
        w_los = std::sqrt(link.kappa / (link.kappa + 1.0));
        w_nlos = std::sqrt(1.0 / (link.kappa + 1.0));
    }
    return large_scale * (w_los * los + w_nlos * nlos);
}

ChannelSet sample_channel_set(const NodeLayout &layout, const ArrayGeometry &geom,
                              const ChannelLinks &links, Rng &rng) {
    const int m = geom.elements();
    ChannelSet set;

    auto make_link = [&](const LinkParams &params, const Position3 &from, const Position3 &to) {
        const auto [u, v] = direction_cosines(from, to);
        return rician_channel(params, distance(from, to), steering_vector(geom, u, v),
                              sample_nlos(m, rng));
    };

    set.h_ar = make_link(links.ar, layout.satellite, layout.relay);
    set.h_rk.reserve(layout.users.size());
    for (const auto &user : layout.users)
        set.h_rk.push_back(make_link(links.rk, layout.relay, user));
    set.h_rw = make_link(links.rw, layout.relay, layout.warden);
    return set;
}

} // namespace aastar
