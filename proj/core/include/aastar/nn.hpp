#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "aastar/rng.hpp"

namespace aastar {

enum class Activation { identity, mish, tanh };

std::string to_string(Activation a);
Activation activation_from_string(const std::string &s);

// x * tanh(softplus(x))
double mish(double x);
double mish_grad(double x);

// Interleaved sin/cos of t over geometrically spaced frequencies (base 1e4).
Eigen::VectorXd sinusoidal_embed(int t, int dim);

// Fully connected net: widths = [input, hidden..., output].
struct MlpSpec {
    std::vector<int> widths;
    Activation hidden = Activation::mish;
    Activation output = Activation::identity;

    int layers() const { return static_cast<int>(widths.size()) - 1; }
    int input_dim() const { return widths.front(); }
    int output_dim() const { return widths.back(); }
};

struct Mlp {
    MlpSpec spec;
    std::vector<Eigen::MatrixXd> w; // w[l]: widths[l+1] x widths[l]
    std::vector<Eigen::VectorXd> b;

    static Mlp zeros(const MlpSpec &spec);
    // Uniform fan-in init; the final layer is scaled by final_layer_scale.
    static Mlp init(const MlpSpec &spec, Rng &rng, double final_layer_scale = 1.0);

    std::size_t parameter_count() const;
};

// Pre/post-activation values of one forward pass, consumed by backward().
struct MlpCache {
    Eigen::MatrixXd input;          // input_dim x batch
    std::vector<Eigen::MatrixXd> z; // pre-activation per layer
    std::vector<Eigen::MatrixXd> a; // post-activation per layer
};

struct MlpGrads {
    std::vector<Eigen::MatrixXd> w;
    std::vector<Eigen::VectorXd> b;

    static MlpGrads zeros(const MlpSpec &spec);
    void scale(double s);
};

// Columns are batch samples. Pass a cache to enable backward().
Eigen::MatrixXd forward(const Mlp &net, const Eigen::MatrixXd &x, MlpCache *cache = nullptr);

// Reverse-mode pass; returns dL/dinput (needed for action gradients).
Eigen::MatrixXd backward(const Mlp &net, const MlpCache &cache, const Eigen::MatrixXd &dl_dy,
                         MlpGrads &grads);

struct AdamState {
    double lr = 3e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    long step = 0;
    std::vector<Eigen::MatrixXd> mw, vw;
    std::vector<Eigen::VectorXd> mb, vb;

    static AdamState make(const MlpSpec &spec, double lr);
};

void adam_step(AdamState &state, Mlp &net, const MlpGrads &grads);

// target <- tau * online + (1 - tau) * target
void soft_update(Mlp &target, const Mlp &online, double tau);

} // namespace aastar
