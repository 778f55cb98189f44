#include "aastar/diffusion.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aastar {

std::string to_string(ScheduleKind k) {
    switch (k) {
    case ScheduleKind::cosine:
        return "cosine";
    case ScheduleKind::linear:
        return "linear";
    case ScheduleKind::constant:
        return "constant";
    }
    return "cosine";
}

ScheduleKind schedule_kind_from_string(const std::string &s) {
    if (s == "cosine")
        return ScheduleKind::cosine;
    if (s == "linear")
        return ScheduleKind::linear;
    if (s == "constant")
        return ScheduleKind::constant;
    throw std::invalid_argument("unknown schedule kind: " + s);
}

DiffusionSchedule make_schedule(int t_total, ScheduleKind kind, double constant_nu) {
    if (t_total < 1)
        throw std::invalid_argument("make_schedule: need at least one step");

    std::vector<double> nus(t_total);
    switch (kind) {
    case ScheduleKind::cosine: {
        // Variance-preserving cosine alpha_bar, converted to per-step weights.
        const double s = 0.008;
        auto f = [&](double t) {
            const double arg = (t / t_total + s) / (1.0 + s) * std::numbers::pi / 2.0;
            const double c = std::cos(arg);
            return c * c;
        };
        double prev = 1.0;
        for (int t = 1; t <= t_total; ++t) {
            const double ab = f(static_cast<double>(t)) / f(0.0);
            double nu = 1.0 - ab / prev;
            nu = std::min(std::max(nu, 1e-6), 0.999);
            nus[t - 1] = nu;
            prev *= 1.0 - nu;
        }
        break;
    }
    case ScheduleKind::linear: {
        const double lo = 0.1, hi = 0.7;
        for (int t = 1; t <= t_total; ++t) {
            const double frac = (t_total == 1) ? 0.0 : (t - 1) / static_cast<double>(t_total - 1);
            nus[t - 1] = lo + frac * (hi - lo);
        }
        break;
    }
    case ScheduleKind::constant: {
        if (constant_nu <= 0.0 || constant_nu >= 1.0)
            throw std::invalid_argument("make_schedule: constant nu must be in (0, 1)");
        for (double &nu : nus)
            nu = constant_nu;
        break;
    }
    }

    DiffusionSchedule sched;
    sched.nus = std::move(nus);
    sched.alpha_bars.resize(t_total);
    double prod = 1.0;
    for (int t = 0; t < t_total; ++t) {
        prod *= 1.0 - sched.nus[t];
        sched.alpha_bars[t] = prod;
    }
    return sched;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> forward_diffuse(const Eigen::VectorXd &x0, int t,
                                                            const DiffusionSchedule &sched,
                                                            Rng &rng) {
    if (t < 1 || t > sched.steps())
        throw std::invalid_argument("forward_diffuse: step out of range");
    Eigen::VectorXd eps(x0.size());
    for (Eigen::Index i = 0; i < eps.size(); ++i)
        eps[i] = rng.gaussian();
    const double ab = sched.alpha_bar(t);
    Eigen::VectorXd xt = std::sqrt(ab) * x0 + std::sqrt(1.0 - ab) * eps;
    return {std::move(xt), std::move(eps)};
}

MlpSpec DiffusionPolicy::make_spec(int action_dim, int condition_dim, int embed_dim,
                                   int hidden_width, int hidden_layers) {
    MlpSpec spec;
    spec.widths.push_back(action_dim + condition_dim + embed_dim);
    for (int i = 0; i < hidden_layers; ++i)
        spec.widths.push_back(hidden_width);
    spec.widths.push_back(action_dim);
    spec.hidden = Activation::mish;
    spec.output = Activation::identity;
    return spec;
}

Eigen::VectorXd sample_action(const Eigen::VectorXd &condition, const DiffusionPolicy &policy,
                              Rng &rng) {
    return sample_actions(condition, policy, rng).col(0);
}

Eigen::MatrixXd sample_actions(const Eigen::MatrixXd &conditions, const DiffusionPolicy &policy,
                               Rng &rng) {
    if (conditions.rows() != policy.condition_dim)
        throw std::invalid_argument("sample_actions: condition dimension mismatch");
    const int batch = static_cast<int>(conditions.cols());
    const int adim = policy.action_dim;
    const int tt = policy.schedule.steps();

    Eigen::MatrixXd x(adim, batch);
    for (Eigen::Index i = 0; i < x.size(); ++i)
        x.data()[i] = rng.gaussian();

    Eigen::MatrixXd input(adim + policy.condition_dim + policy.embed_dim, batch);
    input.middleRows(adim, policy.condition_dim) = conditions;

    for (int t = tt; t >= 1; --t) {
        input.topRows(adim) = x;
        input.bottomRows(policy.embed_dim).colwise() = sinusoidal_embed(t, policy.embed_dim);
        const Eigen::MatrixXd eps_hat = forward(policy.net, input);

        const double nu = policy.schedule.nu(t);
        const double ab = policy.schedule.alpha_bar(t);
        x = (x - (nu / std::sqrt(1.0 - ab)) * eps_hat) / std::sqrt(1.0 - nu);
        if (t > 1) {
            const double sd = std::sqrt(nu);
            for (Eigen::Index i = 0; i < x.size(); ++i)
                x.data()[i] += sd * rng.gaussian();
        }
    }
    return x.cwiseMax(-1.0).cwiseMin(1.0);
}

double elbo_loss(const DiffusionPolicy &policy, const Eigen::MatrixXd &conditions,
                 const Eigen::MatrixXd &actions, Rng &rng, MlpGrads *grads) {
    const int batch = static_cast<int>(actions.cols());
    if (batch == 0)
        throw std::invalid_argument("elbo_loss: empty batch");
    std::vector<int> ts(batch);
    Eigen::MatrixXd eps(actions.rows(), batch);
    for (int i = 0; i < batch; ++i)
        ts[i] = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(policy.schedule.steps())));
    for (Eigen::Index i = 0; i < eps.size(); ++i)
        eps.data()[i] = rng.gaussian();
    return elbo_loss_explicit(policy, conditions, actions, ts, eps, grads);
}

double elbo_loss_explicit(const DiffusionPolicy &policy, const Eigen::MatrixXd &conditions,
                          const Eigen::MatrixXd &actions, const std::vector<int> &ts,
                          const Eigen::MatrixXd &eps, MlpGrads *grads) {
    const int batch = static_cast<int>(actions.cols());
    const int adim = policy.action_dim;
    if (conditions.cols() != batch || static_cast<int>(ts.size()) != batch ||
        eps.cols() != batch || actions.rows() != adim)
        throw std::invalid_argument("elbo_loss: batch shape mismatch");

    Eigen::MatrixXd input(adim + policy.condition_dim + policy.embed_dim, batch);
    for (int i = 0; i < batch; ++i) {
        const double ab = policy.schedule.alpha_bar(ts[i]);
        input.col(i).head(adim) =
            std::sqrt(ab) * actions.col(i) + std::sqrt(1.0 - ab) * eps.col(i);
        input.col(i).segment(adim, policy.condition_dim) = conditions.col(i);
        input.col(i).tail(policy.embed_dim) = sinusoidal_embed(ts[i], policy.embed_dim);
    }

    MlpCache cache;
    const Eigen::MatrixXd eps_hat = forward(policy.net, input, grads ? &cache : nullptr);
    const Eigen::MatrixXd diff = eps_hat - eps;
    const double loss = diff.squaredNorm() / batch;

    if (grads) {
        const Eigen::MatrixXd dl_dy = (2.0 / batch) * diff;
        backward(policy.net, cache, dl_dy, *grads);
    }
    return loss;
}

} // namespace aastar
