#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "aastar/channel.hpp"

using namespace aastar;

namespace {

const ArrayGeometry kGeom4x4{4, 4, 0.075, 0.075, 0.15};

} // namespace

TEST_CASE("direction_cosines") {
    // relay directly above a user: no horizontal offset
    auto [u0, v0] = direction_cosines({50, 60, 100}, {50, 60, 0});
    CHECK(u0 == doctest::Approx(0.0));
    CHECK(v0 == doctest::Approx(0.0));

    auto [u1, v1] = direction_cosines({0, 0, 0}, {3, 4, 0});
    CHECK(u1 == doctest::Approx(0.6));
    CHECK(v1 == doctest::Approx(0.8));

    // satellite at (0,0,h), relay at (d,0,H) with d << h
    const double h = 35786000.0, d = 1000.0, H = 100.0;
    auto [u2, v2] = direction_cosines({0, 0, h}, {d, 0, H});
    CHECK(u2 == doctest::Approx(d / std::sqrt(d * d + (h - H) * (h - H))));
    CHECK(v2 == doctest::Approx(0.0));

    CHECK_THROWS_AS(direction_cosines({1, 1, 1}, {1, 1, 1}), std::invalid_argument);
}

TEST_CASE("direction_cosines flip sign when endpoints swap") {
    Rng rng(split_seed(11, "chan-recip"));
    for (int i = 0; i < 100; ++i) {
        const Position3 a{rng.uniform(-500, 500), rng.uniform(-500, 500), rng.uniform(0, 200)};
        const Position3 b{rng.uniform(-500, 500), rng.uniform(-500, 500), rng.uniform(0, 200)};
        if (distance(a, b) < 1e-9)
            continue;
        auto [u, v] = direction_cosines(a, b);
        auto [ur, vr] = direction_cosines(b, a);
        CHECK(u == doctest::Approx(-ur));
        CHECK(v == doctest::Approx(-vr));
        CHECK(u * u + v * v <= 1.0 + 1e-12);
    }
}

TEST_CASE("steering_vector basics") {
    const ArrayGeometry single{1, 1, 0.075, 0.075, 0.15};
    const ChannelVector one = steering_vector(single, 0.3, 0.2);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == std::complex<double>(1.0, 0.0));

    const ChannelVector broadside = steering_vector(kGeom4x4, 0.0, 0.0);
    for (int i = 0; i < broadside.size(); ++i)
        CHECK(broadside[i] == std::complex<double>(1.0, 0.0));

    // half-wavelength two-element ramp at u = 1: second entry is e^{-j pi} = -1
    const ArrayGeometry two{2, 1, 0.075, 0.075, 0.15};
    const ChannelVector ramp = steering_vector(two, 1.0, 0.0);
    REQUIRE(ramp.size() == 2);
    CHECK(ramp[0].real() == doctest::Approx(1.0));
    CHECK(ramp[1].real() == doctest::Approx(-1.0));
    CHECK(ramp[1].imag() == doctest::Approx(0.0));
}

TEST_CASE("steering vectors are unit-modulus with squared norm M") {
    Rng rng(split_seed(11, "chan-steer"));
    for (int i = 0; i < 50; ++i) {
        double u = rng.uniform(-1, 1), v = rng.uniform(-1, 1);
        const double n = std::sqrt(u * u + v * v);
        if (n > 1.0) {
            u /= n;
            v /= n;
        }
        const ChannelVector h = steering_vector(kGeom4x4, u, v);
        REQUIRE(h.size() == 16);
        for (int m = 0; m < h.size(); ++m)
            CHECK(std::abs(h[m]) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(h.squaredNorm() == doctest::Approx(16.0).epsilon(1e-12));
    }
}

TEST_CASE("steering vector entry ordering is the x-ramp Kronecker y-ramp") {
    const ArrayGeometry geom{3, 2, 0.05, 0.075, 0.15};
    const double u = 0.4, v = -0.3;
    const ChannelVector h = steering_vector(geom, u, v);
    const double k = 2.0 * std::numbers::pi / geom.wavelength;
    int m = 0;
    for (int ix = 0; ix < geom.mx; ++ix)
        for (int iy = 0; iy < geom.my; ++iy) {
            const std::complex<double> expected =
                std::polar(1.0, -k * (geom.dx * ix * u + geom.dy * iy * v));
            CHECK(std::abs(h[m] - expected) < 1e-12);
            ++m;
        }
}

TEST_CASE("sample_nlos moments and determinism") {
    Rng rng(split_seed(11, "chan-nlos"));
    const int draws = 62500; // 62500 x 16 = 1e6 entries
    double power = 0.0;
    std::complex<double> mean = 0.0;
    for (int i = 0; i < draws; ++i) {
        const ChannelVector h = sample_nlos(16, rng);
        power += h.squaredNorm();
        mean += h.sum();
    }
    const double n = 16.0 * draws;
    CHECK(power / n == doctest::Approx(1.0).epsilon(0.01));
    CHECK(std::abs(mean.real() / n) < 0.005);
    CHECK(std::abs(mean.imag() / n) < 0.005);

    Rng a(42), b(42);
    const ChannelVector ha = sample_nlos(8, a);
    const ChannelVector hb = sample_nlos(8, b);
    CHECK((ha - hb).norm() == 0.0);

    CHECK_THROWS_AS(sample_nlos(0, rng), std::invalid_argument);
}

TEST_CASE("rician_channel limits") {
    Rng rng(split_seed(11, "chan-rician"));
    const ChannelVector los = steering_vector(kGeom4x4, 0.2, 0.1);
    const ChannelVector nlos = sample_nlos(16, rng);
    LinkParams link{1e-3, 2.0, 0.0};

    SUBCASE("kappa = 0 is pure NLoS") {
        const ChannelVector h = rician_channel(link, 10.0, los, nlos);
        const double scale = std::sqrt(link.l0 * std::pow(10.0, -link.alpha));
        CHECK((h - scale * nlos).norm() < 1e-15);
    }
    SUBCASE("kappa -> infinity is pure LoS") {
        link.kappa = std::numeric_limits<double>::infinity();
        const ChannelVector h = rician_channel(link, 10.0, los, nlos);
        const double scale = std::sqrt(link.l0 * std::pow(10.0, -link.alpha));
        CHECK((h - scale * los).norm() < 1e-12 * scale);
    }
    SUBCASE("nonpositive distance is rejected") {
        CHECK_THROWS_AS(rician_channel(link, 0.0, los, nlos), std::invalid_argument);
        CHECK_THROWS_AS(rician_channel(link, -1.0, los, nlos), std::invalid_argument);
    }
}

TEST_CASE("rician second moment matches the closed form") {
    // L0 = 10^-3.8, alpha = 2.5, kappa = 3, d = 100, M = 16
    const LinkParams link{std::pow(10.0, -3.8), 2.5, 3.0};
    const double d = 100.0;
    const ChannelVector los = steering_vector(kGeom4x4, 0.35, -0.2);
    Rng rng(split_seed(11, "chan-moment"));

    const int draws = 100000;
    double acc = 0.0;
    for (int i = 0; i < draws; ++i)
        acc += rician_channel(link, d, los, sample_nlos(16, rng)).squaredNorm();
    const double expected = 16.0 * link.l0 * std::pow(d, -link.alpha);
    CHECK(acc / draws == doctest::Approx(expected).epsilon(0.02));
}

TEST_CASE("rician mixing weights are a partition of unity") {
    for (double kappa : {0.0, 0.5, 1.0, 3.0, 5.0, 100.0}) {
        const double w_los = kappa / (kappa + 1.0);
        const double w_nlos = 1.0 / (kappa + 1.0);
        CHECK(w_los + w_nlos == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("sample_channel_set") {
    NodeLayout layout;
    layout.satellite = {100, 100, 35786000.0};
    layout.users = {{30, 40, 0}, {150, 60, 0}, {90, 170, 0}, {10, 10, 0}, {190, 190, 0}};
    layout.warden = {120, 80, 0};
    layout.relay = {100, 100, 100};
    ChannelLinks links;
    links.ar = {std::pow(10.0, -3.8), 2.1, 5.0};
    links.rk = {std::pow(10.0, -3.8), 2.5, 3.0};
    links.rw = {std::pow(10.0, -3.8), 2.7, 3.0};

    SUBCASE("same seed gives the identical set; five users give five vectors") {
        Rng a(9), b(9);
        const ChannelSet sa = sample_channel_set(layout, kGeom4x4, links, a);
        const ChannelSet sb = sample_channel_set(layout, kGeom4x4, links, b);
        REQUIRE(sa.h_rk.size() == 5);
        CHECK((sa.h_ar - sb.h_ar).norm() == 0.0);
        CHECK((sa.h_rw - sb.h_rw).norm() == 0.0);
        for (int k = 0; k < 5; ++k)
            CHECK((sa.h_rk[k] - sb.h_rk[k]).norm() == 0.0);
    }

    SUBCASE("a 20 m relay move shifts LoS direction cosines as the geometry says") {
        auto [u_before, v_before] = direction_cosines(layout.satellite, layout.relay);
        NodeLayout moved = layout;
        moved.relay.x += 20.0;
        auto [u_after, v_after] = direction_cosines(moved.satellite, moved.relay);

        // 20 m against a GEO slant range barely moves the cosine; the large-scale
        // gain is unchanged to first order.
        CHECK(std::abs(u_after - u_before) > 0.0);
        CHECK(std::abs(u_after - u_before) < 1e-6);
        const double d_before = distance(layout.satellite, layout.relay);
        const double d_after = distance(moved.satellite, moved.relay);
        CHECK(std::abs(d_after / d_before - 1.0) < 1e-9);
        CHECK(v_after == doctest::Approx(v_before).epsilon(1e-9));
    }
}
