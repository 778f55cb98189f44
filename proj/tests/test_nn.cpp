#include <doctest.h>

#include <cmath>

#include "aastar/nn.hpp"
#include "oracles.hpp"

using namespace aastar;

TEST_CASE("mish") {
    CHECK(mish(0.0) == 0.0);
    CHECK(mish(25.0) == doctest::Approx(25.0).epsilon(1e-9)); // asymptotically identity
    CHECK(mish(-40.0) == doctest::Approx(0.0).epsilon(1e-12));

    SUBCASE("analytic derivative matches central differences") {
        Rng rng(split_seed(29, "nn-mish"));
        for (int i = 0; i < 20; ++i) {
            const double x = rng.uniform(-6.0, 6.0);
            const double h = 1e-6;
            const double fd = (mish(x + h) - mish(x - h)) / (2.0 * h);
            CHECK(mish_grad(x) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("sinusoidal_embed") {
    const Eigen::VectorXd zero = sinusoidal_embed(0, 8);
    for (int i = 0; i < 4; ++i) {
        CHECK(zero[2 * i] == 0.0);     // sin parts
        CHECK(zero[2 * i + 1] == 1.0); // cos parts
    }

    SUBCASE("entries stay in [-1, 1] and steps 1..10 are pairwise distinct") {
        std::vector<Eigen::VectorXd> embeds;
        for (int t = 1; t <= 10; ++t) {
            const Eigen::VectorXd e = sinusoidal_embed(t, 16);
            CHECK(e.maxCoeff() <= 1.0);
            CHECK(e.minCoeff() >= -1.0);
            embeds.push_back(e);
        }
        for (std::size_t i = 0; i < embeds.size(); ++i)
            for (std::size_t j = i + 1; j < embeds.size(); ++j)
                CHECK((embeds[i] - embeds[j]).norm() > 1e-6);
    }

    CHECK_THROWS_AS(sinusoidal_embed(1, 3), std::invalid_argument);
}

TEST_CASE("forward basics") {
    SUBCASE("identity-initialized linear layer returns its input") {
        MlpSpec spec{{3, 3}, Activation::mish, Activation::identity};
        Mlp net = Mlp::zeros(spec);
        net.w[0] = Eigen::MatrixXd::Identity(3, 3);
        Eigen::MatrixXd x(3, 2);
        x << 1, 4, 2, 5, 3, 6;
        CHECK((forward(net, x) - x).norm() == 0.0);
    }
    SUBCASE("zero weights leave only the activated bias") {
        MlpSpec spec{{4, 2}, Activation::mish, Activation::tanh};
        Mlp net = Mlp::zeros(spec);
        net.b[0] << 0.5, -1.0;
        const Eigen::MatrixXd y = forward(net, Eigen::MatrixXd::Random(4, 3));
        for (int c = 0; c < 3; ++c) {
            CHECK(y(0, c) == doctest::Approx(std::tanh(0.5)));
            CHECK(y(1, c) == doctest::Approx(std::tanh(-1.0)));
        }
    }
    SUBCASE("forward is pure") {
        Rng rng(split_seed(29, "nn-pure"));
        MlpSpec spec{{5, 16, 4}, Activation::mish, Activation::identity};
        const Mlp net = Mlp::init(spec, rng);
        const Eigen::MatrixXd x = Eigen::MatrixXd::Random(5, 7);
        CHECK((forward(net, x) - forward(net, x)).norm() == 0.0);
    }
    SUBCASE("dimension mismatch throws") {
        MlpSpec spec{{5, 4}, Activation::mish, Activation::identity};
        const Mlp net = Mlp::zeros(spec);
        CHECK_THROWS_AS(forward(net, Eigen::MatrixXd::Random(6, 1)), std::invalid_argument);
    }
}

TEST_CASE("backward gradients match finite differences") {
    Rng rng(split_seed(29, "nn-fd"));
    MlpSpec spec{{6, 24, 24, 3}, Activation::mish, Activation::identity};
    Mlp net = Mlp::init(spec, rng);
    const Eigen::MatrixXd x = Eigen::MatrixXd::Random(6, 5);
    const Eigen::MatrixXd target = Eigen::MatrixXd::Random(3, 5);

    // loss = || y - target ||^2 (sum over everything)
    auto loss = [&] { return (forward(net, x) - target).squaredNorm(); };

    MlpCache cache;
    const Eigen::MatrixXd y = forward(net, x, &cache);
    MlpGrads grads = MlpGrads::zeros(spec);
    backward(net, cache, 2.0 * (y - target), grads);

    const double worst = oracles::max_param_grad_mismatch(net, grads, loss, 40, rng);
    CHECK(worst < 1e-5);
}

TEST_CASE("backward input gradient matches finite differences") {
    Rng rng(split_seed(29, "nn-fd-input"));
    MlpSpec spec{{7, 32, 1}, Activation::mish, Activation::identity};
    Mlp net = Mlp::init(spec, rng);
    Eigen::VectorXd x = Eigen::VectorXd::Random(7);

    auto loss = [&] { return forward(net, x)(0, 0); };

    MlpCache cache;
    forward(net, x, &cache);
    MlpGrads grads = MlpGrads::zeros(spec);
    const Eigen::MatrixXd dx = backward(net, cache, Eigen::MatrixXd::Ones(1, 1), grads);

    const double worst =
        oracles::max_input_grad_mismatch(x, dx.col(0), loss, 7, rng);
    CHECK(worst < 1e-5);
}

TEST_CASE("tanh output backward also passes the finite-difference check") {
    Rng rng(split_seed(29, "nn-fd-tanh"));
    MlpSpec spec{{4, 16, 3}, Activation::mish, Activation::tanh};
    Mlp net = Mlp::init(spec, rng);
    const Eigen::MatrixXd x = Eigen::MatrixXd::Random(4, 3);

    auto loss = [&] { return forward(net, x).sum(); };

    MlpCache cache;
    forward(net, x, &cache);
    MlpGrads grads = MlpGrads::zeros(spec);
    backward(net, cache, Eigen::MatrixXd::Ones(3, 3), grads);
    CHECK(oracles::max_param_grad_mismatch(net, grads, loss, 30, rng) < 1e-5);
}

TEST_CASE("adam") {
    MlpSpec spec{{2, 2}, Activation::mish, Activation::identity};
    Rng rng(split_seed(29, "nn-adam"));
    Mlp net = Mlp::init(spec, rng);
    AdamState opt = AdamState::make(spec, 1e-3);

    SUBCASE("zero gradient leaves parameters unchanged") {
        const Mlp before = net;
        adam_step(opt, net, MlpGrads::zeros(spec));
        for (std::size_t l = 0; l < net.w.size(); ++l) {
            CHECK((net.w[l] - before.w[l]).norm() == 0.0);
            CHECK((net.b[l] - before.b[l]).norm() == 0.0);
        }
    }
    SUBCASE("first step from zero moments moves by about the learning rate") {
        MlpGrads grads = MlpGrads::zeros(spec);
        grads.w[0].setConstant(0.37); // any constant gradient
        const Mlp before = net;
        adam_step(opt, net, grads);
        // bias-corrected first step: lr * g / (|g| + eps) ~ lr
        const Eigen::MatrixXd delta = before.w[0] - net.w[0];
        for (Eigen::Index i = 0; i < delta.size(); ++i)
            CHECK(delta.data()[i] == doctest::Approx(1e-3).epsilon(1e-6));
    }
    SUBCASE("updates are deterministic given state and gradients") {
        MlpGrads grads = MlpGrads::zeros(spec);
        grads.w[0].setConstant(0.1);
        grads.b[0].setConstant(-0.2);
        Mlp n1 = net, n2 = net;
        AdamState o1 = opt, o2 = opt;
        for (int i = 0; i < 5; ++i) {
            adam_step(o1, n1, grads);
            adam_step(o2, n2, grads);
        }
        CHECK((n1.w[0] - n2.w[0]).norm() == 0.0);
        CHECK((n1.b[0] - n2.b[0]).norm() == 0.0);
    }
}

TEST_CASE("soft_update") {
    MlpSpec spec{{1, 1}, Activation::identity, Activation::identity};
    Mlp target = Mlp::zeros(spec);
    Mlp online = Mlp::zeros(spec);
    online.w[0](0, 0) = 1.0;

    SUBCASE("tau = 1 copies, tau = 0 freezes") {
        Mlp t1 = target;
        soft_update(t1, online, 1.0);
        CHECK(t1.w[0](0, 0) == 1.0);
        Mlp t0 = target;
        soft_update(t0, online, 0.0);
        CHECK(t0.w[0](0, 0) == 0.0);
    }
    SUBCASE("tau = 0.005 blends the scalar case to 0.005") {
        Mlp t = target;
        soft_update(t, online, 0.005);
        CHECK(t.w[0](0, 0) == doctest::Approx(0.005));
    }
    SUBCASE("repeated updates contract toward the online parameters") {
        Mlp t = target;
        double prev_gap = 1.0;
        for (int k = 1; k <= 10; ++k) {
            soft_update(t, online, 0.25);
            const double gap = std::abs(t.w[0](0, 0) - 1.0);
            CHECK(gap == doctest::Approx(std::pow(0.75, k)));
            CHECK(gap < prev_gap);
            prev_gap = gap;
        }
    }
}
