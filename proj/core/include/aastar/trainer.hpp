#pragma once

#include <functional>
#include <optional>
#include <string>

#include "aastar/diffusion.hpp"
#include "aastar/env.hpp"
#include "aastar/replay.hpp"

namespace aastar {

enum class Algorithm { gdpg, ddpg, td3 };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string &s);

struct TrainerConfig {
    Algorithm algorithm = Algorithm::gdpg;
    int episodes = 20000;
    int batch_size = 256;
    std::size_t buffer_capacity = 100000;
    double gamma = 0.95;
    double tau = 0.005;
    double lr = 3e-4;    // policy and critics
    double eta_a = 3e-2; // action-gradient step size

    int hidden_width = 256;
    int critic_hidden_layers = 2;
    int predictor_hidden_layers = 3;
    int diffusion_steps = 10;
    ScheduleKind schedule_kind = ScheduleKind::cosine;
    int embed_dim = 16;

    int start_learning_multiple = 5; // warmup env steps = multiple * batch_size
    int update_every = 1;            // env steps per gradient update
    int target_policy_samples = 1;   // diffusion samples behind the critic target
    int action_gradient_steps = 1;   // ascent steps per policy improvement

    double ddpg_noise_std = 0.1;        // exploration noise, DDPG
    double td3_explore_noise_std = 0.1; // exploration noise, TD3
    double td3_noise_std = 0.2;         // target policy smoothing
    double td3_noise_clip = 0.5;
    int td3_policy_delay = 2;

    int checkpoint_interval = 0; // episodes between checkpoints; 0 = final only
    std::uint64_t seed = 1;

    long start_learning_steps() const {
        return static_cast<long>(start_learning_multiple) * batch_size;
    }
};

// Online and target networks plus optimizer state for one agent.
struct AgentBundle {
    Algorithm algorithm = Algorithm::gdpg;
    int state_dim = 0;
    int action_dim = 0;
    TrainerConfig cfg;

    DiffusionPolicy policy;        // gdpg
    DiffusionPolicy target_policy; // gdpg
    Mlp actor, target_actor;       // ddpg / td3
    Mlp critic1, critic2, target_critic1, target_critic2;

    AdamState policy_opt, actor_opt, critic1_opt, critic2_opt;

    static AgentBundle make(int state_dim, int action_dim, const TrainerConfig &cfg);
};

// --- learning steps -------------------------------------------------------

// y = r + gamma (1 - done) min_j Q_target_j(s', a'), a' drawn from the target policy.
Eigen::VectorXd critic_targets(const AgentBundle &bundle, const TransitionBatch &batch, Rng &rng);

// Mean-squared Bellman error descent on both critics against shared targets.
std::pair<double, double> update_critics(AgentBundle &bundle, const TransitionBatch &batch,
                                         const Eigen::VectorXd &targets);

// Q and dQ/da of the pointwise minimum of the online twin critics.
struct CriticEval {
    Eigen::VectorXd q;       // B
    Eigen::MatrixXd dq_da;   // action_dim x B
};
CriticEval min_critic_action_gradient(const AgentBundle &bundle, const Eigen::MatrixXd &states,
                                      const Eigen::MatrixXd &actions);

// One gradient-ascent step a <- clamp(a + eta dq/da); the generic form backing
// improve_actions and its analytic tests.
Eigen::MatrixXd ascend_actions(const Eigen::MatrixXd &actions, const Eigen::MatrixXd &dq_da,
                               double eta);

// a <- clamp(a + eta_a dQ_min/da, [-1, 1])
Eigen::MatrixXd improve_actions(const AgentBundle &bundle, const Eigen::MatrixXd &states,
                                const Eigen::MatrixXd &actions);

// Fit the noise predictor to the improved actions; returns the denoising loss.
double update_policy(AgentBundle &bundle, const Eigen::MatrixXd &states,
                     const Eigen::MatrixXd &improved_actions, Rng &rng);

void soft_update_targets(AgentBundle &bundle);

struct BaselineLosses {
    double critic1 = 0.0;
    double critic2 = 0.0;
    double actor = 0.0;
    bool actor_updated = false;
};

BaselineLosses ddpg_step(AgentBundle &bundle, const TransitionBatch &batch);
BaselineLosses td3_step(AgentBundle &bundle, const TransitionBatch &batch, Rng &rng,
                        long learn_step);

// Target-policy smoothing helper (TD3): a + clipped Gaussian noise, clamped to the box.
Eigen::MatrixXd smooth_target_actions(const Eigen::MatrixXd &actions, double noise_std,
                                      double noise_clip, Rng &rng);

// Policy output for one state; exploration noise only applies to the baselines,
// the diffusion policy is stochastic by construction.
Eigen::VectorXd agent_act(const AgentBundle &bundle, const Eigen::VectorXd &state, Rng &rng,
                          bool explore);

// --- training loop --------------------------------------------------------

struct EpisodeRecord {
    int episode = 0;
    int steps = 0;
    long total_env_steps = 0;
    double reward = 0.0;            // cumulative over the episode
    double mean_sum_capacity = 0.0; // per step
    double mean_jain = 0.0;         // per step
    int covert_violations = 0;
    int power_violations = 0;
    int boundary_violations = 0;
};

std::string to_json_line(const EpisodeRecord &rec);

struct TrainHooks {
    std::function<void(const EpisodeRecord &)> on_episode;
    std::function<void(const SlotInfo &)> on_step; // per-step diagnostics stream
    std::function<void(int, const AgentBundle &)> on_checkpoint;
    // wall-clock per episode, seconds; kept out of the training log so identically
    // seeded runs produce identical logs
    std::function<void(int, double)> on_episode_timing;
};

struct TrainResult {
    std::vector<EpisodeRecord> episodes;
    long total_env_steps = 0;
    long total_learn_steps = 0;
};

TrainResult train(Env &env, AgentBundle &bundle, const TrainHooks &hooks = {});

// First/last tenth of the episode log, the unit training trends are judged on.
struct DecileStats {
    double first_mean_reward = 0.0;
    double last_mean_reward = 0.0;
    double first_mean_covert_violations = 0.0;
    double last_mean_covert_violations = 0.0;
};

DecileStats decile_stats(const std::vector<EpisodeRecord> &episodes);

// --- evaluation -----------------------------------------------------------

// Slice freezes applied on top of a policy's raw action.
enum class ActionWrapper {
    none,   // the policy's action as-is
    random, // uniform in the box; ignores the policy
    na,     // amplification pinned to its floor (passive surface)
    oto,    // beamforming frozen at defaults; only the trajectory acts
    oabo,   // velocity frozen at zero; only the beamforming acts
};

std::string to_string(ActionWrapper w);
ActionWrapper action_wrapper_from_string(const std::string &s);

Eigen::VectorXd apply_wrapper(ActionWrapper wrapper, Eigen::VectorXd raw, int m_elements,
                              Rng &rng);

struct EvalSummary {
    int episodes = 0;
    double mean_episode_reward = 0.0;
    double mean_sum_capacity_per_step = 0.0;
    double mean_jain_per_step = 0.0;
    double mean_covert_violations_per_episode = 0.0;
    double mean_power_violations_per_episode = 0.0;
    double mean_boundary_violations_per_episode = 0.0;
};

std::string to_json(const EvalSummary &s, int indent = 2);

// Deterministic-seed rollouts without learning. `bundle` may be null when the
// wrapper alone defines the policy (random).
EvalSummary evaluate(Env &env, const AgentBundle *bundle, ActionWrapper wrapper, int episodes,
                     std::uint64_t eval_seed);

} // namespace aastar
