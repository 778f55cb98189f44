#include "aastar/trainer.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace aastar {

std::string to_string(Algorithm a) {
    switch (a) {
    case Algorithm::gdpg:
        return "gdpg";
    case Algorithm::ddpg:
        return "ddpg";
    case Algorithm::td3:
        return "td3";
    }
    return "gdpg";
}

Algorithm algorithm_from_string(const std::string &s) {
    if (s == "gdpg")
        return Algorithm::gdpg;
    if (s == "ddpg")
        return Algorithm::ddpg;
    if (s == "td3")
        return Algorithm::td3;
    throw std::invalid_argument("unknown algorithm: " + s);
}

namespace {

MlpSpec critic_spec(int state_dim, int action_dim, const TrainerConfig &cfg) {
    MlpSpec spec;
    spec.widths.push_back(state_dim + action_dim);
    for (int i = 0; i < cfg.critic_hidden_layers; ++i)
        spec.widths.push_back(cfg.hidden_width);
    spec.widths.push_back(1);
    spec.hidden = Activation::mish;
    spec.output = Activation::identity;
    return spec;
}

MlpSpec actor_spec(int state_dim, int action_dim, const TrainerConfig &cfg) {
    MlpSpec spec;
    spec.widths.push_back(state_dim);
    for (int i = 0; i < cfg.critic_hidden_layers; ++i)
        spec.widths.push_back(cfg.hidden_width);
    spec.widths.push_back(action_dim);
    spec.hidden = Activation::mish;
    spec.output = Activation::tanh;
    return spec;
}

constexpr double kFinalLayerScale = 0.01;

Eigen::MatrixXd stack(const Eigen::MatrixXd &states, const Eigen::MatrixXd &actions) {
    Eigen::MatrixXd x(states.rows() + actions.rows(), states.cols());
    x.topRows(states.rows()) = states;
    x.bottomRows(actions.rows()) = actions;
    return x;
}

} // namespace

AgentBundle AgentBundle::make(int state_dim, int action_dim, const TrainerConfig &cfg) {
    AgentBundle b;
    b.algorithm = cfg.algorithm;
    b.state_dim = state_dim;
    b.action_dim = action_dim;
    b.cfg = cfg;

    const MlpSpec cspec = critic_spec(state_dim, action_dim, cfg);
    Rng rng_c1(split_seed(cfg.seed, "init-critic1"));
    Rng rng_c2(split_seed(cfg.seed, "init-critic2"));
    b.critic1 = Mlp::init(cspec, rng_c1, kFinalLayerScale);
    b.critic2 = Mlp::init(cspec, rng_c2, kFinalLayerScale);
    b.target_critic1 = b.critic1;
    b.target_critic2 = b.critic2;
    b.critic1_opt = AdamState::make(cspec, cfg.lr);
    b.critic2_opt = AdamState::make(cspec, cfg.lr);

    if (cfg.algorithm == Algorithm::gdpg) {
        b.policy.action_dim = action_dim;
        b.policy.condition_dim = state_dim;
        b.policy.embed_dim = cfg.embed_dim;
        b.policy.schedule = make_schedule(cfg.diffusion_steps, cfg.schedule_kind);
        const MlpSpec pspec = DiffusionPolicy::make_spec(
            action_dim, state_dim, cfg.embed_dim, cfg.hidden_width, cfg.predictor_hidden_layers);
        Rng rng_p(split_seed(cfg.seed, "init-policy"));
        b.policy.net = Mlp::init(pspec, rng_p, kFinalLayerScale);
        b.target_policy = b.policy;
        b.policy_opt = AdamState::make(pspec, cfg.lr);
    } else {
        const MlpSpec aspec = actor_spec(state_dim, action_dim, cfg);
        Rng rng_a(split_seed(cfg.seed, "init-actor"));
        b.actor = Mlp::init(aspec, rng_a, kFinalLayerScale);
        b.target_actor = b.actor;
        b.actor_opt = AdamState::make(aspec, cfg.lr);
    }
    return b;
}

Eigen::VectorXd critic_targets(const AgentBundle &bundle, const TransitionBatch &batch, Rng &rng) {
    const int n = batch.size();
    if (n == 0)
        throw std::invalid_argument("critic_targets: empty batch");

    Eigen::VectorXd q_next = Eigen::VectorXd::Zero(n);
    if (bundle.algorithm == Algorithm::gdpg) {
        const int samples = std::max(1, bundle.cfg.target_policy_samples);
        for (int s = 0; s < samples; ++s) {
            const Eigen::MatrixXd a2 = sample_actions(batch.next_states, bundle.target_policy, rng);
            const Eigen::MatrixXd x = stack(batch.next_states, a2);
            const Eigen::MatrixXd q1 = forward(bundle.target_critic1, x);
            const Eigen::MatrixXd q2 = forward(bundle.target_critic2, x);
            q_next += q1.row(0).cwiseMin(q2.row(0)).transpose();
        }
        q_next /= samples;
    } else if (bundle.algorithm == Algorithm::td3) {
        Eigen::MatrixXd a2 = forward(bundle.target_actor, batch.next_states);
        a2 = smooth_target_actions(a2, bundle.cfg.td3_noise_std, bundle.cfg.td3_noise_clip, rng);
        const Eigen::MatrixXd x = stack(batch.next_states, a2);
        const Eigen::MatrixXd q1 = forward(bundle.target_critic1, x);
        const Eigen::MatrixXd q2 = forward(bundle.target_critic2, x);
        q_next = q1.row(0).cwiseMin(q2.row(0)).transpose();
    } else { // ddpg: single critic, no smoothing
        const Eigen::MatrixXd a2 = forward(bundle.target_actor, batch.next_states);
        const Eigen::MatrixXd x = stack(batch.next_states, a2);
        q_next = forward(bundle.target_critic1, x).row(0).transpose();
    }

    return batch.rewards.array() +
           bundle.cfg.gamma * (1.0 - batch.dones.array()) * q_next.array();
}

namespace {

double descend_critic(Mlp &critic, AdamState &opt, const Eigen::MatrixXd &x,
                      const Eigen::VectorXd &targets) {
    MlpCache cache;
    const Eigen::MatrixXd q = forward(critic, x, &cache);
    const Eigen::RowVectorXd err = q.row(0) - targets.transpose();
    const double loss = err.squaredNorm() / x.cols();
    MlpGrads grads = MlpGrads::zeros(critic.spec);
    const Eigen::MatrixXd dl_dy = (2.0 / x.cols()) * err;
    backward(critic, cache, dl_dy, grads);
    adam_step(opt, critic, grads);
    return loss;
}

} // namespace

std::pair<double, double> update_critics(AgentBundle &bundle, const TransitionBatch &batch,
                                         const Eigen::VectorXd &targets) {
    const Eigen::MatrixXd x = stack(batch.states, batch.actions);
    const double l1 = descend_critic(bundle.critic1, bundle.critic1_opt, x, targets);
    double l2 = 0.0;
    if (bundle.algorithm != Algorithm::ddpg)
        l2 = descend_critic(bundle.critic2, bundle.critic2_opt, x, targets);
    return {l1, l2};
}

CriticEval min_critic_action_gradient(const AgentBundle &bundle, const Eigen::MatrixXd &states,
                                      const Eigen::MatrixXd &actions) {
    const Eigen::MatrixXd x = stack(states, actions);
    const int n = static_cast<int>(x.cols());

    MlpCache c1, c2;
    const Eigen::MatrixXd q1 = forward(bundle.critic1, x, &c1);
    const Eigen::MatrixXd q2 = forward(bundle.critic2, x, &c2);

    // Per-sample argmin mask; ties go to critic 1.
    Eigen::RowVectorXd mask1(n), mask2(n);
    for (int i = 0; i < n; ++i) {
        const bool first = q1(0, i) <= q2(0, i);
        mask1[i] = first ? 1.0 : 0.0;
        mask2[i] = first ? 0.0 : 1.0;
    }

    MlpGrads g1 = MlpGrads::zeros(bundle.critic1.spec);
    MlpGrads g2 = MlpGrads::zeros(bundle.critic2.spec);
    const Eigen::MatrixXd dx1 = backward(bundle.critic1, c1, mask1, g1);
    const Eigen::MatrixXd dx2 = backward(bundle.critic2, c2, mask2, g2);

    CriticEval eval;
    eval.q = q1.row(0).cwiseMin(q2.row(0)).transpose();
    eval.dq_da = (dx1 + dx2).bottomRows(actions.rows());
    return eval;
}

Eigen::MatrixXd ascend_actions(const Eigen::MatrixXd &actions, const Eigen::MatrixXd &dq_da,
                               double eta) {
    return (actions + eta * dq_da).cwiseMax(-1.0).cwiseMin(1.0);
}

Eigen::MatrixXd improve_actions(const AgentBundle &bundle, const Eigen::MatrixXd &states,
                                const Eigen::MatrixXd &actions) {
    if (bundle.cfg.eta_a == 0.0)
        return actions;
    Eigen::MatrixXd improved = actions;
    for (int k = 0; k < std::max(1, bundle.cfg.action_gradient_steps); ++k) {
        const CriticEval eval = min_critic_action_gradient(bundle, states, improved);
        improved = ascend_actions(improved, eval.dq_da, bundle.cfg.eta_a);
    }
    return improved;
}

double update_policy(AgentBundle &bundle, const Eigen::MatrixXd &states,
                     const Eigen::MatrixXd &improved_actions, Rng &rng) {
    MlpGrads grads = MlpGrads::zeros(bundle.policy.net.spec);
    const double loss = elbo_loss(bundle.policy, states, improved_actions, rng, &grads);
    adam_step(bundle.policy_opt, bundle.policy.net, grads);
    return loss;
}

void soft_update_targets(AgentBundle &bundle) {
    const double tau = bundle.cfg.tau;
    soft_update(bundle.target_critic1, bundle.critic1, tau);
    if (bundle.algorithm != Algorithm::ddpg)
        soft_update(bundle.target_critic2, bundle.critic2, tau);
    if (bundle.algorithm == Algorithm::gdpg)
        soft_update(bundle.target_policy.net, bundle.policy.net, tau);
    else
        soft_update(bundle.target_actor, bundle.actor, tau);
}

Eigen::MatrixXd smooth_target_actions(const Eigen::MatrixXd &actions, double noise_std,
                                      double noise_clip, Rng &rng) {
    Eigen::MatrixXd out = actions;
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        const double noise =
            std::clamp(noise_std * rng.gaussian(), -noise_clip, noise_clip);
        out.data()[i] = std::clamp(out.data()[i] + noise, -1.0, 1.0);
    }
    return out;
}

namespace {

// Ascent on Q(s, actor(s)); shared by DDPG and TD3. Returns -mean Q (the loss).
double update_actor(AgentBundle &bundle, const Eigen::MatrixXd &states) {
    const int n = static_cast<int>(states.cols());
    MlpCache actor_cache;
    const Eigen::MatrixXd a = forward(bundle.actor, states, &actor_cache);
    const Eigen::MatrixXd x = stack(states, a);

    MlpCache critic_cache;
    const Eigen::MatrixXd q = forward(bundle.critic1, x, &critic_cache);

    // dL/dq = -1/n (maximize mean Q); critic gradients are discarded.
    MlpGrads critic_scratch = MlpGrads::zeros(bundle.critic1.spec);
    const Eigen::MatrixXd dl_dx = backward(
        bundle.critic1, critic_cache, Eigen::MatrixXd::Constant(1, n, -1.0 / n), critic_scratch);

    MlpGrads actor_grads = MlpGrads::zeros(bundle.actor.spec);
    backward(bundle.actor, actor_cache, dl_dx.bottomRows(a.rows()), actor_grads);
    adam_step(bundle.actor_opt, bundle.actor, actor_grads);
    return -q.row(0).mean();
}

} // namespace

BaselineLosses ddpg_step(AgentBundle &bundle, const TransitionBatch &batch) {
    if (bundle.algorithm != Algorithm::ddpg)
        throw std::logic_error("ddpg_step: wrong algorithm");
    Rng dummy(0); // ddpg's target needs no randomness
    const Eigen::VectorXd y = critic_targets(bundle, batch, dummy);
    BaselineLosses losses;
    std::tie(losses.critic1, losses.critic2) = update_critics(bundle, batch, y);
    losses.actor = update_actor(bundle, batch.states);
    losses.actor_updated = true;
    soft_update_targets(bundle);
    return losses;
}

BaselineLosses td3_step(AgentBundle &bundle, const TransitionBatch &batch, Rng &rng,
                        long learn_step) {
    if (bundle.algorithm != Algorithm::td3)
        throw std::logic_error("td3_step: wrong algorithm");
    const Eigen::VectorXd y = critic_targets(bundle, batch, rng);
    BaselineLosses losses;
    std::tie(losses.critic1, losses.critic2) = update_critics(bundle, batch, y);
    if (learn_step % bundle.cfg.td3_policy_delay == 0) {
        losses.actor = update_actor(bundle, batch.states);
        losses.actor_updated = true;
        soft_update_targets(bundle);
    }
    return losses;
}

Eigen::VectorXd agent_act(const AgentBundle &bundle, const Eigen::VectorXd &state, Rng &rng,
                          bool explore) {
    if (bundle.algorithm == Algorithm::gdpg)
        return sample_action(state, bundle.policy, rng);

    Eigen::VectorXd a = forward(bundle.actor, state);
    if (explore) {
        const double std = bundle.algorithm == Algorithm::ddpg ? bundle.cfg.ddpg_noise_std
                                                               : bundle.cfg.td3_explore_noise_std;
        for (Eigen::Index i = 0; i < a.size(); ++i)
            a[i] = std::clamp(a[i] + std * rng.gaussian(), -1.0, 1.0);
    }
    return a;
}

std::string to_json_line(const EpisodeRecord &rec) {
    nlohmann::json j;
    j["episode"] = rec.episode;
    j["steps"] = rec.steps;
    j["total_env_steps"] = rec.total_env_steps;
    j["reward"] = rec.reward;
    j["mean_sum_capacity"] = rec.mean_sum_capacity;
    j["mean_jain"] = rec.mean_jain;
    j["covert_violations"] = rec.covert_violations;
    j["power_violations"] = rec.power_violations;
    j["boundary_violations"] = rec.boundary_violations;
    return j.dump();
}

TrainResult train(Env &env, AgentBundle &bundle, const TrainHooks &hooks) {
    const TrainerConfig &cfg = bundle.cfg;
    ReplayBuffer buffer(cfg.buffer_capacity);
    Rng act_rng(split_seed(cfg.seed, "act"));
    Rng learn_rng(split_seed(cfg.seed, "learn"));

    TrainResult result;
    result.episodes.reserve(cfg.episodes);
    const long start_learning = cfg.start_learning_steps();

    for (int episode = 0; episode < cfg.episodes; ++episode) {
        const auto episode_start = std::chrono::steady_clock::now();
        Eigen::VectorXd state = env.reset(static_cast<std::uint64_t>(episode));

        EpisodeRecord rec;
        rec.episode = episode;
        double sum_capacity_acc = 0.0, jain_acc = 0.0;

        while (!env.done()) {
            const Eigen::VectorXd action = agent_act(bundle, state, act_rng, true);
            StepResult sr = env.step(action);
            buffer.push({state, action, sr.reward, sr.next_state, sr.done});
            state = sr.next_state;
            if (hooks.on_step)
                hooks.on_step(sr.info);

            ++rec.steps;
            ++result.total_env_steps;
            rec.reward += sr.reward;
            sum_capacity_acc +=
                std::accumulate(sr.info.capacities.begin(), sr.info.capacities.end(), 0.0);
            jain_acc += sr.info.jain;
            rec.covert_violations += sr.info.covert_violation ? 1 : 0;
            rec.power_violations += sr.info.power_violation ? 1 : 0;
            rec.boundary_violations += sr.info.boundary_violation ? 1 : 0;

            if (result.total_env_steps >= start_learning &&
                result.total_env_steps % cfg.update_every == 0 &&
                buffer.size() >= static_cast<std::size_t>(cfg.batch_size)) {
                const TransitionBatch batch = buffer.sample(cfg.batch_size, learn_rng);
                switch (bundle.algorithm) {
                case Algorithm::gdpg: {
                    const Eigen::VectorXd y = critic_targets(bundle, batch, learn_rng);
                    update_critics(bundle, batch, y);
                    const Eigen::MatrixXd improved =
                        improve_actions(bundle, batch.states, batch.actions);
                    update_policy(bundle, batch.states, improved, learn_rng);
                    soft_update_targets(bundle);
                    break;
                }
                case Algorithm::ddpg:
                    ddpg_step(bundle, batch);
                    break;
                case Algorithm::td3:
                    td3_step(bundle, batch, learn_rng, result.total_learn_steps);
                    break;
                }
                ++result.total_learn_steps;
            }
        }

        rec.total_env_steps = result.total_env_steps;
        rec.mean_sum_capacity = rec.steps > 0 ? sum_capacity_acc / rec.steps : 0.0;
        rec.mean_jain = rec.steps > 0 ? jain_acc / rec.steps : 0.0;
        result.episodes.push_back(rec);

        if (hooks.on_episode)
            hooks.on_episode(rec);
        if (hooks.on_episode_timing) {
            const std::chrono::duration<double> dt =
                std::chrono::steady_clock::now() - episode_start;
            hooks.on_episode_timing(episode, dt.count());
        }
        if (hooks.on_checkpoint && cfg.checkpoint_interval > 0 &&
            (episode + 1) % cfg.checkpoint_interval == 0)
            hooks.on_checkpoint(episode, bundle);
    }
    return result;
}

DecileStats decile_stats(const std::vector<EpisodeRecord> &episodes) {
    if (episodes.empty())
        throw std::invalid_argument("decile_stats: empty episode log");
    const std::size_t n = episodes.size();
    const std::size_t decile = std::max<std::size_t>(1, n / 10);

    DecileStats stats;
    for (std::size_t i = 0; i < decile; ++i) {
        stats.first_mean_reward += episodes[i].reward;
        stats.first_mean_covert_violations += episodes[i].covert_violations;
        stats.last_mean_reward += episodes[n - 1 - i].reward;
        stats.last_mean_covert_violations += episodes[n - 1 - i].covert_violations;
    }
    stats.first_mean_reward /= decile;
    stats.first_mean_covert_violations /= decile;
    stats.last_mean_reward /= decile;
    stats.last_mean_covert_violations /= decile;
    return stats;
}

std::string to_string(ActionWrapper w) {
    switch (w) {
    case ActionWrapper::none:
        return "active";
    case ActionWrapper::random:
        return "random";
    case ActionWrapper::na:
        return "na";
    case ActionWrapper::oto:
        return "oto";
    case ActionWrapper::oabo:
        return "oabo";
    }
    return "active";
}

ActionWrapper action_wrapper_from_string(const std::string &s) {
    if (s == "active" || s == "none" || s == "gdpg")
        return ActionWrapper::none;
    if (s == "random")
        return ActionWrapper::random;
    if (s == "na")
        return ActionWrapper::na;
    if (s == "oto")
        return ActionWrapper::oto;
    if (s == "oabo")
        return ActionWrapper::oabo;
    throw std::invalid_argument("unknown evaluation mode: " + s);
}

Eigen::VectorXd apply_wrapper(ActionWrapper wrapper, Eigen::VectorXd raw, int m_elements,
                              Rng &rng) {
    switch (wrapper) {
    case ActionWrapper::none:
        break;
    case ActionWrapper::random:
        for (Eigen::Index i = 0; i < raw.size(); ++i)
            raw[i] = rng.uniform(-1.0, 1.0);
        break;
    case ActionWrapper::na:
        raw.segment(2, m_elements).setConstant(-1.0); // beta floor: no amplification
        break;
    case ActionWrapper::oto:
        raw.segment(2, 2 * m_elements).setZero(); // beamforming at defaults
        break;
    case ActionWrapper::oabo:
        raw.head(2).setZero(); // relay stays put
        break;
    }
    return raw;
}

std::string to_json(const EvalSummary &s, int indent) {
    nlohmann::json j;
    j["episodes"] = s.episodes;
    j["mean_episode_reward"] = s.mean_episode_reward;
    j["mean_sum_capacity_per_step"] = s.mean_sum_capacity_per_step;
    j["mean_jain_per_step"] = s.mean_jain_per_step;
    j["mean_covert_violations_per_episode"] = s.mean_covert_violations_per_episode;
    j["mean_power_violations_per_episode"] = s.mean_power_violations_per_episode;
    j["mean_boundary_violations_per_episode"] = s.mean_boundary_violations_per_episode;
    return j.dump(indent);
}

EvalSummary evaluate(Env &env, const AgentBundle *bundle, ActionWrapper wrapper, int episodes,
                     std::uint64_t eval_seed) {
    if (episodes < 1)
        throw std::invalid_argument("evaluate: need at least one episode");
    if (!bundle && wrapper != ActionWrapper::random)
        throw std::invalid_argument("evaluate: a policy is required for this mode");

    Rng rng(split_seed(eval_seed, "eval"));
    const int m = env.config().geom.elements();

    EvalSummary summary;
    summary.episodes = episodes;
    long total_steps = 0;
    double capacity_acc = 0.0, jain_acc = 0.0;

    for (int e = 0; e < episodes; ++e) {
        Eigen::VectorXd state = env.reset(split_seed(eval_seed, "eval-episode", e));
        while (!env.done()) {
            Eigen::VectorXd raw;
            if (wrapper == ActionWrapper::random)
                raw = Eigen::VectorXd::Zero(env.action_dim());
            else
                raw = agent_act(*bundle, state, rng, false);
            raw = apply_wrapper(wrapper, std::move(raw), m, rng);

            StepResult sr = env.step(raw);
            state = sr.next_state;
            ++total_steps;
            summary.mean_episode_reward += sr.reward;
            capacity_acc +=
                std::accumulate(sr.info.capacities.begin(), sr.info.capacities.end(), 0.0);
            jain_acc += sr.info.jain;
            summary.mean_covert_violations_per_episode += sr.info.covert_violation ? 1.0 : 0.0;
            summary.mean_power_violations_per_episode += sr.info.power_violation ? 1.0 : 0.0;
            summary.mean_boundary_violations_per_episode += sr.info.boundary_violation ? 1.0 : 0.0;
        }
    }

    summary.mean_episode_reward /= episodes;
    summary.mean_sum_capacity_per_step = capacity_acc / total_steps;
    summary.mean_jain_per_step = jain_acc / total_steps;
    summary.mean_covert_violations_per_episode /= episodes;
    summary.mean_power_violations_per_episode /= episodes;
    summary.mean_boundary_violations_per_episode /= episodes;
    return summary;
}

} // namespace aastar
