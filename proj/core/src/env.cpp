#include "aastar/env.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace aastar {

namespace {

constexpr double kBetaFloorMargin = 1e-6;  // decoded beta stays strictly above 1
constexpr double kCapacityScale = 20.0;    // bits, for state normalization

void validate_config(const EnvConfig &c) {
    if (c.n_slots < 1)
        throw std::invalid_argument("EnvConfig: n_slots must be >= 1");
    if (c.dt <= 0.0)
        throw std::invalid_argument("EnvConfig: dt must be positive");
    if (c.k_users < 1)
        throw std::invalid_argument("EnvConfig: need at least one user");
    if (c.area.x_min >= c.area.x_max || c.area.y_min >= c.area.y_max)
        throw std::invalid_argument("EnvConfig: degenerate area bounds");
    if (c.area.altitude <= 0.0)
        throw std::invalid_argument("EnvConfig: relay altitude must be positive");
    if (c.r_pc < 0.0 || c.r_pr < 0.0 || c.r_pp < 0.0)
        throw std::invalid_argument("EnvConfig: penalties must be >= 0");
    if (c.v_max <= 0.0)
        throw std::invalid_argument("EnvConfig: v_max must be positive");
    if (c.beta_max <= 1.0)
        throw std::invalid_argument("EnvConfig: beta_max must exceed 1");
    if (c.geom.elements() < 1 || c.geom.wavelength <= 0.0)
        throw std::invalid_argument("EnvConfig: invalid array geometry");
}

Position3 area_center(const AreaBounds &a, double z) {
    return {(a.x_min + a.x_max) / 2.0, (a.y_min + a.y_max) / 2.0, z};
}

} // namespace

std::string to_json_line(const SlotInfo &info) {
    nlohmann::json j;
    j["slot"] = info.slot;
    j["capacities"] = info.capacities;
    j["jain"] = info.jain;
    j["objective"] = info.objective;
    j["iota"] = info.iota;
    j["ris_power"] = info.ris_power;
    j["covert_violation"] = info.covert_violation;
    j["power_violation"] = info.power_violation;
    j["boundary_violation"] = info.boundary_violation;
    j["reward"] = info.reward;
    j["relay"] = {info.relay.x, info.relay.y, info.relay.z};
    return j.dump();
}

Env::Env(const EnvConfig &config) : config_(config), rng_(0) {
    validate_config(config_);
    covert_budget_ = covert_budget(config_.covert);

    // Users and Warden are drawn once per run and stay fixed across episodes.
    Rng layout_rng(split_seed(config_.seed, "layout"));
    layout_.satellite = area_center(config_.area, config_.geo_altitude);
    layout_.users.resize(config_.k_users);
    for (auto &user : layout_.users) {
        user.x = layout_rng.uniform(config_.area.x_min, config_.area.x_max);
        user.y = layout_rng.uniform(config_.area.y_min, config_.area.y_max);
        user.z = 0.0;
    }
    layout_.warden.x = layout_rng.uniform(config_.area.x_min, config_.area.x_max);
    layout_.warden.y = layout_rng.uniform(config_.area.y_min, config_.area.y_max);
    layout_.warden.z = 0.0;
    layout_.relay = area_center(config_.area, config_.area.altitude);

    prev_capacities_.assign(config_.k_users, 0.0);
    csi_scale_rk_.assign(config_.k_users, 1.0);
}

Eigen::VectorXd Env::reset(std::uint64_t episode_seed) {
    layout_.relay = area_center(config_.area, config_.area.altitude);
    rng_ = Rng(split_seed(config_.seed, "episode", episode_seed));
    slot_ = 0;
    done_ = false;
    prev_action_summary_.setZero();
    prev_capacities_.assign(config_.k_users, 0.0);
    prev_reward_ = 0.0;

    // Scale CSI entries so typical magnitudes are O(1) in the state: divide out
    // the large-scale gain at the episode-start geometry.
    auto scale_for = [](const LinkParams &link, double d) {
        return 1.0 / std::sqrt(link.l0 * std::pow(d, -link.alpha));
    };
    csi_scale_ar_ = scale_for(config_.links.ar, distance(layout_.satellite, layout_.relay));
    for (int k = 0; k < config_.k_users; ++k)
        csi_scale_rk_[k] = scale_for(config_.links.rk, distance(layout_.relay, layout_.users[k]));

    draw_channels();
    return build_state();
}

void Env::draw_channels() {
    channels_ = sample_channel_set(layout_, config_.geom, config_.links, rng_);
}

std::pair<Eigen::Vector2d, TransmissionMatrix> Env::decode_action(const Eigen::VectorXd &raw,
                                                                  const EnvConfig &config) {
    const int m = config.geom.elements();
    if (raw.size() != config.action_dim())
        throw std::invalid_argument("decode_action: wrong action dimension");
    const Eigen::VectorXd c = raw.cwiseMax(-1.0).cwiseMin(1.0);

    Eigen::Vector2d velocity = config.v_max * c.head<2>();
    const double speed = velocity.norm();
    if (speed > config.v_max)
        velocity *= config.v_max / speed;

    TransmissionMatrix tm;
    const double beta_lo = 1.0 + kBetaFloorMargin;
    tm.betas = beta_lo + ((config.beta_max - beta_lo) / 2.0) * (c.segment(2, m).array() + 1.0);
    tm.phis = std::numbers::pi * (c.segment(2 + m, m).array() + 1.0);
    return {velocity, tm};
}

StepResult Env::step(const Eigen::VectorXd &raw_action) {
    if (done_)
        throw std::logic_error("Env::step called on a finished episode");

    const Eigen::VectorXd clamped = raw_action.cwiseMax(-1.0).cwiseMin(1.0);
    const auto [velocity, tm] = decode_action(clamped, config_);
    const int m = config_.geom.elements();

    // Beamforming acts on the channels the agent observed in the current state.
    std::vector<double> capacities(config_.k_users);
    for (int k = 0; k < config_.k_users; ++k)
        capacities[k] = user_capacity(channels_.h_rk[k], tm, channels_.h_ar, config_.budget);
    const double jain = jain_index(capacities);
    const double objective = slot_objective(capacities);

    const double p_in = config_.budget.p_a * config_.budget.g_a;
    const double iota =
        warden_exposure(channels_.h_rw, tm, channels_.h_ar, p_in, config_.budget.sigma_r2).iota;
    const double ris_power = ris_output_power(tm, channels_.h_ar, p_in, config_.budget.sigma_r2);

    const bool covert_violation = iota >= covert_budget_;
    const bool power_violation = ris_power >= config_.ris_budget.p_max_active;

    Position3 target = advance_relay(layout_.relay, velocity, config_.dt);
    const bool boundary_violation = !in_bounds(target, config_.area);
    target.x = std::clamp(target.x, config_.area.x_min, config_.area.x_max);
    target.y = std::clamp(target.y, config_.area.y_min, config_.area.y_max);
    layout_.relay = target;

    const double reward = objective - config_.r_pc * (covert_violation ? 1.0 : 0.0) -
                          config_.r_pr * (power_violation ? 1.0 : 0.0) -
                          config_.r_pp * (boundary_violation ? 1.0 : 0.0);

    StepResult result;
    result.info.slot = slot_;
    result.info.capacities = capacities;
    result.info.jain = jain;
    result.info.objective = objective;
    result.info.iota = iota;
    result.info.ris_power = ris_power;
    result.info.covert_violation = covert_violation;
    result.info.power_violation = power_violation;
    result.info.boundary_violation = boundary_violation;
    result.info.reward = reward;
    result.info.relay = layout_.relay;

    ++slot_;
    done_ = slot_ >= config_.n_slots;

    draw_channels(); // next slot's draw at the new position

    prev_action_summary_[0] = clamped[0];
    prev_action_summary_[1] = clamped[1];
    prev_action_summary_[2] = clamped.segment(2, m).mean();
    prev_action_summary_[3] = clamped.segment(2 + m, m).mean();
    prev_capacities_ = capacities;
    prev_reward_ = reward;

    result.next_state = build_state();
    result.reward = reward;
    result.done = done_;
    return result;
}

Eigen::VectorXd Env::build_state() const {
    const int k = config_.k_users;
    Eigen::VectorXd s(config_.state_dim());
    int at = 0;

    const double xe = config_.area.x_extent();
    const double ye = config_.area.y_extent();
    auto norm_x = [&](double x) { return (x - config_.area.x_min) / xe; };
    auto norm_y = [&](double y) { return (y - config_.area.y_min) / ye; };

    // positions: relay, users (x then y), warden
    s[at++] = norm_x(layout_.relay.x);
    s[at++] = norm_y(layout_.relay.y);
    for (int i = 0; i < k; ++i)
        s[at++] = norm_x(layout_.users[i].x);
    for (int i = 0; i < k; ++i)
        s[at++] = norm_y(layout_.users[i].y);
    s[at++] = norm_x(layout_.warden.x);
    s[at++] = norm_y(layout_.warden.y);

    // CSI, real and imaginary interleaved per entry
    auto put_channel = [&](const ChannelVector &h, double scale) {
        for (int i = 0; i < h.size(); ++i) {
            s[at++] = h[i].real() * scale;
            s[at++] = h[i].imag() * scale;
        }
    };
    put_channel(channels_.h_ar, csi_scale_ar_);
    for (int i = 0; i < k; ++i)
        put_channel(channels_.h_rk[i], csi_scale_rk_[i]);

    // history: compressed previous action, previous capacities, previous reward
    s.segment(at, 4) = prev_action_summary_;
    at += 4;
    for (int i = 0; i < k; ++i)
        s[at++] = prev_capacities_[i] / kCapacityScale;
    s[at++] = prev_reward_ / (kCapacityScale * k);

    if (at != s.size())
        throw std::logic_error("build_state: dimension bookkeeping broke");
    return s;
}

} // namespace aastar
