#pragma once

#include <string>
#include <vector>

#include "aastar/channel.hpp"
#include "aastar/covert.hpp"
#include "aastar/geometry.hpp"
#include "aastar/metrics.hpp"
#include "aastar/star_ris.hpp"

namespace aastar {

struct EnvConfig {
    int n_slots = 50;
    double dt = 1.0;
    AreaBounds area{0.0, 200.0, 0.0, 200.0, 100.0};
    int k_users = 5;
    double geo_altitude = 35786000.0;

    ArrayGeometry geom{4, 4, 0.075, 0.075, 0.15};
    RisPowerBudget ris_budget{1.0, 0.0}; // sigma_r2 filled from the link budget at load
    ChannelLinks links;
    LinkBudget budget;
    CovertParams covert;

    double r_pc = 10.0; // covert-constraint penalty
    double r_pr = 10.0; // RIS power-budget penalty
    double r_pp = 10.0; // boundary penalty

    double v_max = 20.0;
    double beta_max = 30.0;
    std::uint64_t seed = 1;

    int state_dim() const {
        const int m = geom.elements();
        return 2 * m * (k_users + 1) + 3 * k_users + 9;
    }
    int action_dim() const { return 2 + 2 * geom.elements(); }
};

// Everything the reward of one slot was computed from.
struct SlotInfo {
    int slot = 0;
    std::vector<double> capacities;
    double jain = 0.0;
    double objective = 0.0;
    double iota = 0.0;
    double ris_power = 0.0;
    bool covert_violation = false;
    bool power_violation = false;
    bool boundary_violation = false;
    double reward = 0.0;
    Position3 relay; // position after the move
};

std::string to_json_line(const SlotInfo &info);

struct StepResult {
    Eigen::VectorXd next_state;
    double reward = 0.0;
    bool done = false;
    SlotInfo info;
};

// Episodic MDP around the physics stack. One instance is single-threaded; run
// several instances with distinct seeds for parallel rollouts.
class Env {
  public:
    explicit Env(const EnvConfig &config);

    // Relay returns to the area center, history slots are zeroed and a fresh
    // channel set is drawn. Fully determined by (config seed, episode seed).
    Eigen::VectorXd reset(std::uint64_t episode_seed);

    // Applies the action to the current slot's channels, moves the relay, and
    // draws the next slot's channels. Throws if the episode is already done.
    StepResult step(const Eigen::VectorXd &raw_action);

    int state_dim() const { return config_.state_dim(); }
    int action_dim() const { return config_.action_dim(); }
    const EnvConfig &config() const { return config_; }
    const NodeLayout &layout() const { return layout_; }
    const ChannelSet &channels() const { return channels_; }
    double covert_budget_watts() const { return covert_budget_; }
    bool done() const { return done_; }

    // Raw entries are clamped to [-1, 1]; velocity is renormalized to |v| <= v_max;
    // beta in (1, beta_max] and phi in [0, 2pi] by affine maps.
    static std::pair<Eigen::Vector2d, TransmissionMatrix>
    decode_action(const Eigen::VectorXd &raw, const EnvConfig &config);

  private:
    Eigen::VectorXd build_state() const;
    void draw_channels();

    EnvConfig config_;
    NodeLayout layout_;
    Rng rng_;
    ChannelSet channels_;
    double covert_budget_ = 0.0;

    int slot_ = 0;
    bool done_ = true;

    // state normalization constants, recomputed each reset
    double csi_scale_ar_ = 1.0;
    std::vector<double> csi_scale_rk_;

    Eigen::Vector4d prev_action_summary_ = Eigen::Vector4d::Zero();
    std::vector<double> prev_capacities_;
    double prev_reward_ = 0.0;
};

} // namespace aastar
