// Private JSON codecs for checkpointing; not installed.
#pragma once

#include <json.hpp>

#include "aastar/diffusion.hpp"
#include "aastar/env.hpp"
#include "aastar/nn.hpp"
#include "aastar/trainer.hpp"

namespace aastar {

inline nlohmann::json matrix_to_json(const Eigen::MatrixXd &m) {
    nlohmann::json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    std::vector<double> data(m.size());
    Eigen::Map<Eigen::MatrixXd>(data.data(), m.rows(), m.cols()) = m;
    j["data"] = data; // column-major
    return j;
}

inline Eigen::MatrixXd matrix_from_json(const nlohmann::json &j) {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto data = j.at("data").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(data.size()) != rows * cols)
        throw std::invalid_argument("matrix_from_json: size mismatch");
    return Eigen::Map<const Eigen::MatrixXd>(data.data(), rows, cols);
}

inline nlohmann::json vector_to_json(const Eigen::VectorXd &v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

inline Eigen::VectorXd vector_from_json(const nlohmann::json &j) {
    const auto data = j.get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(data.data(), static_cast<Eigen::Index>(data.size()));
}

inline void to_json(nlohmann::json &j, const MlpSpec &spec) {
    j = {{"widths", spec.widths},
         {"hidden", to_string(spec.hidden)},
         {"output", to_string(spec.output)}};
}

inline void from_json(const nlohmann::json &j, MlpSpec &spec) {
    spec.widths = j.at("widths").get<std::vector<int>>();
    spec.hidden = activation_from_string(j.at("hidden").get<std::string>());
    spec.output = activation_from_string(j.at("output").get<std::string>());
}

inline void to_json(nlohmann::json &j, const Mlp &net) {
    j["spec"] = net.spec;
    j["w"] = nlohmann::json::array();
    j["b"] = nlohmann::json::array();
    for (const auto &w : net.w)
        j["w"].push_back(matrix_to_json(w));
    for (const auto &b : net.b)
        j["b"].push_back(vector_to_json(b));
}

inline void from_json(const nlohmann::json &j, Mlp &net) {
    net.spec = j.at("spec").get<MlpSpec>();
    net.w.clear();
    net.b.clear();
    for (const auto &w : j.at("w"))
        net.w.push_back(matrix_from_json(w));
    for (const auto &b : j.at("b"))
        net.b.push_back(vector_from_json(b));
}

inline void to_json(nlohmann::json &j, const AdamState &s) {
    j = {{"lr", s.lr}, {"beta1", s.beta1}, {"beta2", s.beta2}, {"eps", s.eps}, {"step", s.step}};
    j["mw"] = nlohmann::json::array();
    j["vw"] = nlohmann::json::array();
    j["mb"] = nlohmann::json::array();
    j["vb"] = nlohmann::json::array();
    for (const auto &m : s.mw)
        j["mw"].push_back(matrix_to_json(m));
    for (const auto &m : s.vw)
        j["vw"].push_back(matrix_to_json(m));
    for (const auto &v : s.mb)
        j["mb"].push_back(vector_to_json(v));
    for (const auto &v : s.vb)
        j["vb"].push_back(vector_to_json(v));
}

inline void from_json(const nlohmann::json &j, AdamState &s) {
    s.lr = j.at("lr").get<double>();
    s.beta1 = j.at("beta1").get<double>();
    s.beta2 = j.at("beta2").get<double>();
    s.eps = j.at("eps").get<double>();
    s.step = j.at("step").get<long>();
    s.mw.clear();
    s.vw.clear();
    s.mb.clear();
    s.vb.clear();
    for (const auto &m : j.at("mw"))
        s.mw.push_back(matrix_from_json(m));
    for (const auto &m : j.at("vw"))
        s.vw.push_back(matrix_from_json(m));
    for (const auto &v : j.at("mb"))
        s.mb.push_back(vector_from_json(v));
    for (const auto &v : j.at("vb"))
        s.vb.push_back(vector_from_json(v));
}

inline void to_json(nlohmann::json &j, const DiffusionSchedule &s) {
    j = {{"nus", s.nus}, {"alpha_bars", s.alpha_bars}};
}

inline void from_json(const nlohmann::json &j, DiffusionSchedule &s) {
    s.nus = j.at("nus").get<std::vector<double>>();
    s.alpha_bars = j.at("alpha_bars").get<std::vector<double>>();
}

inline void to_json(nlohmann::json &j, const DiffusionPolicy &p) {
    j["net"] = p.net;
    j["schedule"] = p.schedule;
    j["action_dim"] = p.action_dim;
    j["condition_dim"] = p.condition_dim;
    j["embed_dim"] = p.embed_dim;
}

inline void from_json(const nlohmann::json &j, DiffusionPolicy &p) {
    p.net = j.at("net").get<Mlp>();
    p.schedule = j.at("schedule").get<DiffusionSchedule>();
    p.action_dim = j.at("action_dim").get<int>();
    p.condition_dim = j.at("condition_dim").get<int>();
    p.embed_dim = j.at("embed_dim").get<int>();
}

inline void to_json(nlohmann::json &j, const TrainerConfig &c) {
    j = {{"algorithm", to_string(c.algorithm)},
         {"episodes", c.episodes},
         {"batch_size", c.batch_size},
         {"buffer_capacity", c.buffer_capacity},
         {"gamma", c.gamma},
         {"tau", c.tau},
         {"lr", c.lr},
         {"eta_a", c.eta_a},
         {"hidden_width", c.hidden_width},
         {"critic_hidden_layers", c.critic_hidden_layers},
         {"predictor_hidden_layers", c.predictor_hidden_layers},
         {"diffusion_steps", c.diffusion_steps},
         {"schedule", to_string(c.schedule_kind)},
         {"embed_dim", c.embed_dim},
         {"start_learning_multiple", c.start_learning_multiple},
         {"update_every", c.update_every},
         {"target_policy_samples", c.target_policy_samples},
         {"action_gradient_steps", c.action_gradient_steps},
         {"ddpg_noise_std", c.ddpg_noise_std},
         {"td3_explore_noise_std", c.td3_explore_noise_std},
         {"td3_noise_std", c.td3_noise_std},
         {"td3_noise_clip", c.td3_noise_clip},
         {"td3_policy_delay", c.td3_policy_delay},
         {"checkpoint_interval", c.checkpoint_interval},
         {"seed", c.seed}};
}

inline void from_json(const nlohmann::json &j, TrainerConfig &c) {
    c.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
    c.episodes = j.at("episodes").get<int>();
    c.batch_size = j.at("batch_size").get<int>();
    c.buffer_capacity = j.at("buffer_capacity").get<std::size_t>();
    c.gamma = j.at("gamma").get<double>();
    c.tau = j.at("tau").get<double>();
    c.lr = j.at("lr").get<double>();
    c.eta_a = j.at("eta_a").get<double>();
    c.hidden_width = j.at("hidden_width").get<int>();
    c.critic_hidden_layers = j.at("critic_hidden_layers").get<int>();
    c.predictor_hidden_layers = j.at("predictor_hidden_layers").get<int>();
    c.diffusion_steps = j.at("diffusion_steps").get<int>();
    c.schedule_kind = schedule_kind_from_string(j.at("schedule").get<std::string>());
    c.embed_dim = j.at("embed_dim").get<int>();
    c.start_learning_multiple = j.at("start_learning_multiple").get<int>();
    c.update_every = j.at("update_every").get<int>();
    c.target_policy_samples = j.at("target_policy_samples").get<int>();
    c.action_gradient_steps = j.at("action_gradient_steps").get<int>();
    c.ddpg_noise_std = j.at("ddpg_noise_std").get<double>();
    c.td3_explore_noise_std = j.at("td3_explore_noise_std").get<double>();
    c.td3_noise_std = j.at("td3_noise_std").get<double>();
    c.td3_noise_clip = j.at("td3_noise_clip").get<double>();
    c.td3_policy_delay = j.at("td3_policy_delay").get<int>();
    c.checkpoint_interval = j.at("checkpoint_interval").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
}

// Linear-unit echo of the environment; exact round trip for checkpoints.
inline void to_json(nlohmann::json &j, const EnvConfig &c) {
    j["n_slots"] = c.n_slots;
    j["dt"] = c.dt;
    j["area"] = {{"x_min", c.area.x_min}, {"x_max", c.area.x_max},   {"y_min", c.area.y_min},
                 {"y_max", c.area.y_max}, {"altitude", c.area.altitude}};
    j["k_users"] = c.k_users;
    j["geo_altitude"] = c.geo_altitude;
    j["geom"] = {{"mx", c.geom.mx},
                 {"my", c.geom.my},
                 {"dx", c.geom.dx},
                 {"dy", c.geom.dy},
                 {"wavelength", c.geom.wavelength}};
    j["ris_budget"] = {{"p_max_active", c.ris_budget.p_max_active},
                       {"sigma_r2", c.ris_budget.sigma_r2}};
    auto link = [](const LinkParams &p) {
        return nlohmann::json{{"l0", p.l0}, {"alpha", p.alpha}, {"kappa", p.kappa}};
    };
    j["links"] = {{"ar", link(c.links.ar)}, {"rk", link(c.links.rk)}, {"rw", link(c.links.rw)}};
    j["budget"] = {{"p_a", c.budget.p_a},
                   {"g_a", c.budget.g_a},
                   {"sigma_k2", c.budget.sigma_k2},
                   {"sigma_r2", c.budget.sigma_r2}};
    j["covert"] = {{"rho", c.covert.rho},
                   {"sigma_w2_nominal", c.covert.sigma_w2_nominal},
                   {"epsilon", c.covert.epsilon}};
    j["penalties"] = {{"covert", c.r_pc}, {"ris_power", c.r_pr}, {"boundary", c.r_pp}};
    j["v_max"] = c.v_max;
    j["beta_max"] = c.beta_max;
    j["seed"] = c.seed;
}

inline void from_json(const nlohmann::json &j, EnvConfig &c) {
    c.n_slots = j.at("n_slots").get<int>();
    c.dt = j.at("dt").get<double>();
    const auto &a = j.at("area");
    c.area = {a.at("x_min").get<double>(), a.at("x_max").get<double>(),
              a.at("y_min").get<double>(), a.at("y_max").get<double>(),
              a.at("altitude").get<double>()};
    c.k_users = j.at("k_users").get<int>();
    c.geo_altitude = j.at("geo_altitude").get<double>();
    const auto &g = j.at("geom");
    c.geom = {g.at("mx").get<int>(), g.at("my").get<int>(), g.at("dx").get<double>(),
              g.at("dy").get<double>(), g.at("wavelength").get<double>()};
    const auto &rb = j.at("ris_budget");
    c.ris_budget = {rb.at("p_max_active").get<double>(), rb.at("sigma_r2").get<double>()};
    auto link = [](const nlohmann::json &p) {
        return LinkParams{p.at("l0").get<double>(), p.at("alpha").get<double>(),
                          p.at("kappa").get<double>()};
    };
    c.links.ar = link(j.at("links").at("ar"));
    c.links.rk = link(j.at("links").at("rk"));
    c.links.rw = link(j.at("links").at("rw"));
    const auto &b = j.at("budget");
    c.budget = {b.at("p_a").get<double>(), b.at("g_a").get<double>(),
                b.at("sigma_k2").get<double>(), b.at("sigma_r2").get<double>()};
    const auto &cv = j.at("covert");
    c.covert = {cv.at("rho").get<double>(), cv.at("sigma_w2_nominal").get<double>(),
                cv.at("epsilon").get<double>()};
    const auto &p = j.at("penalties");
    c.r_pc = p.at("covert").get<double>();
    c.r_pr = p.at("ris_power").get<double>();
    c.r_pp = p.at("boundary").get<double>();
    c.v_max = j.at("v_max").get<double>();
    c.beta_max = j.at("beta_max").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
}

} // namespace aastar
