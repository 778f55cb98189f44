#include "aastar/nn.hpp"

#include <cmath>
#include <stdexcept>

namespace aastar {

namespace {

double softplus(double x) {
    if (x > 30.0)
        return x;
    if (x < -30.0)
        return std::exp(x);
    return std::log1p(std::exp(x));
}

double sigmoid(double x) {
    if (x >= 0.0)
        return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

// Exact one-exp evaluation: with u = 1 + e^x, tanh(softplus(x)) = (u^2-1)/(u^2+1)
// and sigmoid(x) = e^x/u; the vectorized exp makes this the training hot path.
Eigen::ArrayXXd mish_tanh_term(const Eigen::ArrayXXd &x) {
    const Eigen::ArrayXXd e = x.min(30.0).exp();
    const Eigen::ArrayXXd u2 = (1.0 + e).square();
    return (x > 30.0).select(1.0, (u2 - 1.0) / (u2 + 1.0));
}

Eigen::MatrixXd apply_activation(Activation act, const Eigen::MatrixXd &z) {
    switch (act) {
    case Activation::identity:
        return z;
    case Activation::mish:
        return (z.array() * mish_tanh_term(z.array())).matrix();
    case Activation::tanh:
        return z.array().tanh().matrix();
    }
    throw std::logic_error("apply_activation: unknown activation");
}

Eigen::MatrixXd activation_grad(Activation act, const Eigen::MatrixXd &z) {
    switch (act) {
    case Activation::identity:
        return Eigen::MatrixXd::Ones(z.rows(), z.cols());
    case Activation::mish: {
        const Eigen::ArrayXXd x = z.array();
        const Eigen::ArrayXXd e = x.min(30.0).exp();
        const Eigen::ArrayXXd u = 1.0 + e;
        const Eigen::ArrayXXd u2 = u.square();
        const Eigen::ArrayXXd t = (u2 - 1.0) / (u2 + 1.0);
        const Eigen::ArrayXXd sig = e / u;
        const Eigen::ArrayXXd grad = t + x * (1.0 - t.square()) * sig;
        return (x > 30.0).select(1.0, grad).matrix();
    }
    case Activation::tanh: {
        Eigen::ArrayXXd t = z.array().tanh();
        return (1.0 - t * t).matrix();
    }
    }
    throw std::logic_error("activation_grad: unknown activation");
}

} // namespace

std::string to_string(Activation a) {
    switch (a) {
    case Activation::identity:
        return "identity";
    case Activation::mish:
        return "mish";
    case Activation::tanh:
        return "tanh";
    }
    return "identity";
}

Activation activation_from_string(const std::string &s) {
    if (s == "identity")
        return Activation::identity;
    if (s == "mish")
        return Activation::mish;
    if (s == "tanh")
        return Activation::tanh;
    throw std::invalid_argument("unknown activation: " + s);
}

double mish(double x) { return x * std::tanh(softplus(x)); }

double mish_grad(double x) {
    const double t = std::tanh(softplus(x));
    return t + x * (1.0 - t * t) * sigmoid(x);
}

Eigen::VectorXd sinusoidal_embed(int t, int dim) {
    if (dim < 2 || dim % 2 != 0)
        throw std::invalid_argument("sinusoidal_embed: dim must be even and >= 2");
    Eigen::VectorXd e(dim);
    const int half = dim / 2;
    for (int i = 0; i < half; ++i) {
        const double freq = std::pow(10000.0, -2.0 * i / dim);
        const double angle = t * freq;
        e[2 * i] = std::sin(angle);
        e[2 * i + 1] = std::cos(angle);
    }
    return e;
}

Mlp Mlp::zeros(const MlpSpec &spec) {
    if (spec.widths.size() < 2)
        throw std::invalid_argument("MlpSpec: need at least input and output widths");
    for (int w : spec.widths)
        if (w < 1)
            throw std::invalid_argument("MlpSpec: widths must be >= 1");
    Mlp net;
    net.spec = spec;
    for (int l = 0; l < spec.layers(); ++l) {
        net.w.emplace_back(Eigen::MatrixXd::Zero(spec.widths[l + 1], spec.widths[l]));
        net.b.emplace_back(Eigen::VectorXd::Zero(spec.widths[l + 1]));
    }
    return net;
}

Mlp Mlp::init(const MlpSpec &spec, Rng &rng, double final_layer_scale) {
    Mlp net = zeros(spec);
    for (int l = 0; l < spec.layers(); ++l) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(spec.widths[l]));
        const double scale = (l == spec.layers() - 1) ? final_layer_scale : 1.0;
        for (Eigen::Index j = 0; j < net.w[l].size(); ++j)
            net.w[l].data()[j] = scale * rng.uniform(-bound, bound);
        for (Eigen::Index j = 0; j < net.b[l].size(); ++j)
            net.b[l][j] = scale * rng.uniform(-bound, bound);
    }
    return net;
}

std::size_t Mlp::parameter_count() const {
    std::size_t n = 0;
    for (std::size_t l = 0; l < w.size(); ++l)
        n += static_cast<std::size_t>(w[l].size()) + static_cast<std::size_t>(b[l].size());
    return n;
}

MlpGrads MlpGrads::zeros(const MlpSpec &spec) {
    MlpGrads g;
    for (int l = 0; l < spec.layers(); ++l) {
        g.w.emplace_back(Eigen::MatrixXd::Zero(spec.widths[l + 1], spec.widths[l]));
        g.b.emplace_back(Eigen::VectorXd::Zero(spec.widths[l + 1]));
    }
    return g;
}

void MlpGrads::scale(double s) {
    for (auto &m : w)
        m *= s;
    for (auto &v : b)
        v *= s;
}

Eigen::MatrixXd forward(const Mlp &net, const Eigen::MatrixXd &x, MlpCache *cache) {
    if (x.rows() != net.spec.input_dim())
        throw std::invalid_argument("forward: input dimension mismatch");
    if (cache) {
        cache->input = x;
        cache->z.clear();
        cache->a.clear();
    }

    Eigen::MatrixXd a = x;
    const int layers = net.spec.layers();
    for (int l = 0; l < layers; ++l) {
        Eigen::MatrixXd z = (net.w[l] * a).colwise() + net.b[l];
        const Activation act = (l == layers - 1) ? net.spec.output : net.spec.hidden;
        a = apply_activation(act, z);
        if (cache) {
            cache->z.push_back(std::move(z));
            cache->a.push_back(a);
        }
    }
    return a;
}

Eigen::MatrixXd backward(const Mlp &net, const MlpCache &cache, const Eigen::MatrixXd &dl_dy,
                         MlpGrads &grads) {
    const int layers = net.spec.layers();
    if (static_cast<int>(cache.z.size()) != layers)
        throw std::invalid_argument("backward: cache does not match network");
    if (dl_dy.rows() != net.spec.output_dim() || dl_dy.cols() != cache.input.cols())
        throw std::invalid_argument("backward: upstream gradient shape mismatch");

    Eigen::MatrixXd delta = dl_dy;
    for (int l = layers - 1; l >= 0; --l) {
        const Activation act = (l == layers - 1) ? net.spec.output : net.spec.hidden;
        delta = delta.cwiseProduct(activation_grad(act, cache.z[l]));
        const Eigen::MatrixXd &below = (l == 0) ? cache.input : cache.a[l - 1];
        grads.w[l].noalias() += delta * below.transpose();
        grads.b[l] += delta.rowwise().sum();
        delta = (net.w[l].transpose() * delta).eval();
    }
    return delta; // dL/dinput
}

AdamState AdamState::make(const MlpSpec &spec, double lr) {
    AdamState s;
    s.lr = lr;
    for (int l = 0; l < spec.layers(); ++l) {
        s.mw.emplace_back(Eigen::MatrixXd::Zero(spec.widths[l + 1], spec.widths[l]));
        s.vw.emplace_back(Eigen::MatrixXd::Zero(spec.widths[l + 1], spec.widths[l]));
        s.mb.emplace_back(Eigen::VectorXd::Zero(spec.widths[l + 1]));
        s.vb.emplace_back(Eigen::VectorXd::Zero(spec.widths[l + 1]));
    }
    return s;
}

namespace {

template <typename T>
void adam_update(T &param, T &m, T &v, const T &g, double lr, double b1, double b2, double eps,
                 long step) {
    m = b1 * m + (1.0 - b1) * g;
    v = (b2 * v.array() + (1.0 - b2) * g.array().square()).matrix();
    const double c1 = 1.0 - std::pow(b1, static_cast<double>(step));
    const double c2 = 1.0 - std::pow(b2, static_cast<double>(step));
    param.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + eps);
}

} // namespace

void adam_step(AdamState &state, Mlp &net, const MlpGrads &grads) {
    if (state.mw.size() != net.w.size())
        throw std::invalid_argument("adam_step: state does not match network");
    ++state.step;
    for (std::size_t l = 0; l < net.w.size(); ++l) {
        adam_update(net.w[l], state.mw[l], state.vw[l], grads.w[l], state.lr, state.beta1,
                    state.beta2, state.eps, state.step);
        adam_update(net.b[l], state.mb[l], state.vb[l], grads.b[l], state.lr, state.beta1,
                    state.beta2, state.eps, state.step);
    }
}

void soft_update(Mlp &target, const Mlp &online, double tau) {
    if (target.w.size() != online.w.size())
        throw std::invalid_argument("soft_update: mismatched networks");
    for (std::size_t l = 0; l < target.w.size(); ++l) {
        target.w[l] = tau * online.w[l] + (1.0 - tau) * target.w[l];
        target.b[l] = tau * online.b[l] + (1.0 - tau) * target.b[l];
    }
}

} // namespace aastar
