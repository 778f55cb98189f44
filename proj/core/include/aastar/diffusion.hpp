#pragma once

#include <string>
#include <vector>

#include "aastar/nn.hpp"

namespace aastar {

enum class ScheduleKind { cosine, linear, constant };

std::string to_string(ScheduleKind k);
ScheduleKind schedule_kind_from_string(const std::string &s);

// Per-step diffusion weights nu_t and their cumulative products
// alpha_bar_t = prod_{i<=t}(1 - nu_i). Index 0 holds step t = 1.
struct DiffusionSchedule {
    std::vector<double> nus;
    std::vector<double> alpha_bars;

    int steps() const { return static_cast<int>(nus.size()); }
    double nu(int t) const { return nus.at(t - 1); }
    double alpha_bar(int t) const { return alpha_bars.at(t - 1); }
};

// constant_nu is used only by ScheduleKind::constant.
DiffusionSchedule make_schedule(int t_total, ScheduleKind kind, double constant_nu = 0.3);

// x_t = sqrt(alpha_bar_t) x0 + sqrt(1 - alpha_bar_t) eps; returns (x_t, eps).
std::pair<Eigen::VectorXd, Eigen::VectorXd> forward_diffuse(const Eigen::VectorXd &x0, int t,
                                                            const DiffusionSchedule &sched,
                                                            Rng &rng);

// Noise-prediction network plus its schedule; the policy head.
// Network input layout: [x_t ; condition ; sinusoidal_embed(t)].
struct DiffusionPolicy {
    Mlp net;
    DiffusionSchedule schedule;
    int action_dim = 0;
    int condition_dim = 0;
    int embed_dim = 16;

    static MlpSpec make_spec(int action_dim, int condition_dim, int embed_dim, int hidden_width,
                             int hidden_layers);
};

// Reverse denoising chain conditioned on the state; the result is clamped to [-1, 1].
Eigen::VectorXd sample_action(const Eigen::VectorXd &condition, const DiffusionPolicy &policy,
                              Rng &rng);

// Batched variant; conditions has one column per sample.
Eigen::MatrixXd sample_actions(const Eigen::MatrixXd &conditions, const DiffusionPolicy &policy,
                               Rng &rng);

// Denoising matching loss E || eps - eps_theta(sqrt(ab) x0 + sqrt(1-ab) eps, g, t) ||^2
// with t uniform on [1, T]. Per-sample loss is the full squared norm; the batch mean
// is returned and its gradients are accumulated into `grads` when non-null.
double elbo_loss(const DiffusionPolicy &policy, const Eigen::MatrixXd &conditions,
                 const Eigen::MatrixXd &actions, Rng &rng, MlpGrads *grads);

// Deterministic core with explicit step indices and noise draws (one column per
// sample); the random-path overload and the tests both go through this.
double elbo_loss_explicit(const DiffusionPolicy &policy, const Eigen::MatrixXd &conditions,
                          const Eigen::MatrixXd &actions, const std::vector<int> &ts,
                          const Eigen::MatrixXd &eps, MlpGrads *grads);

} // namespace aastar
