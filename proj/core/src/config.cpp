#include "aastar/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace aastar {

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// -174 dBm/Hz over `bandwidth_mhz` MHz, in watts
double noise_watts(double dbm_per_hz, double bandwidth_mhz) {
    const double dbw_per_hz = dbm_per_hz - 30.0;
    return db_to_linear(dbw_per_hz) * bandwidth_mhz * 1e6;
}

EnvConfig parse_env(const nlohmann::json &j, std::uint64_t seed) {
    EnvConfig env;
    env.n_slots = j.at("n_slots").get<int>();
    env.dt = j.at("dt_s").get<double>();
    env.k_users = j.at("k_users").get<int>();
    const auto &a = j.at("area");
    env.area = {a.at("x_min").get<double>(), a.at("x_max").get<double>(),
                a.at("y_min").get<double>(), a.at("y_max").get<double>(),
                a.at("altitude_m").get<double>()};
    env.geo_altitude = j.at("geo_altitude_m").get<double>();

    const auto &r = j.at("ris");
    env.geom = {r.at("mx").get<int>(), r.at("my").get<int>(), r.at("dx_m").get<double>(),
                r.at("dy_m").get<double>(), r.at("wavelength_m").get<double>()};
    env.beta_max = r.at("beta_max").get<double>();

    const auto &l = j.at("links");
    const double l0 = db_to_linear(l.at("l0_db").get<double>());
    auto link = [&](const nlohmann::json &p) {
        return LinkParams{l0, p.at("alpha").get<double>(), p.at("kappa").get<double>()};
    };
    env.links.ar = link(l.at("ar"));
    env.links.rk = link(l.at("rk"));
    env.links.rw = link(l.at("rw"));

    const auto &b = j.at("budget");
    const double bandwidth_mhz = b.at("bandwidth_mhz").get<double>();
    const double noise = noise_watts(b.at("noise_dbm_hz").get<double>(), bandwidth_mhz);
    env.budget.p_a = db_to_linear(b.at("p_a_dbw_mhz").get<double>()) * bandwidth_mhz;
    env.budget.g_a = db_to_linear(b.at("g_a_dbi").get<double>());
    env.budget.sigma_k2 = noise;
    env.budget.sigma_r2 = noise;
    env.ris_budget.p_max_active = r.at("p_max_active_w").get<double>();
    env.ris_budget.sigma_r2 = noise;

    const auto &c = j.at("covert");
    env.covert.rho = db_to_linear(c.at("rho_db").get<double>());
    env.covert.sigma_w2_nominal = noise;
    env.covert.epsilon = c.at("epsilon").get<double>();

    const auto &p = j.at("penalties");
    env.r_pc = p.at("covert").get<double>();
    env.r_pr = p.at("ris_power").get<double>();
    env.r_pp = p.at("boundary").get<double>();

    env.v_max = j.at("v_max_ms").get<double>();
    env.seed = seed;
    return env;
}

TrainerConfig parse_trainer(const nlohmann::json &j, std::uint64_t seed) {
    TrainerConfig t;
    t.algorithm = algorithm_from_string(j.value("algorithm", "gdpg"));
    t.episodes = j.at("episodes").get<int>();
    t.batch_size = j.at("batch_size").get<int>();
    t.buffer_capacity = j.at("buffer_capacity").get<std::size_t>();
    t.gamma = j.at("gamma").get<double>();
    t.tau = j.at("tau").get<double>();
    t.lr = j.at("lr").get<double>();
    t.eta_a = j.at("eta_a").get<double>();
    t.hidden_width = j.at("hidden_width").get<int>();
    t.critic_hidden_layers = j.value("critic_hidden_layers", 2);
    t.predictor_hidden_layers = j.value("predictor_hidden_layers", 3);
    t.diffusion_steps = j.at("diffusion_steps").get<int>();
    t.schedule_kind = schedule_kind_from_string(j.value("schedule", "cosine"));
    t.embed_dim = j.value("embed_dim", 16);
    t.start_learning_multiple = j.value("start_learning_multiple", 5);
    t.update_every = j.value("update_every", 1);
    t.target_policy_samples = j.value("target_policy_samples", 1);
    t.action_gradient_steps = j.value("action_gradient_steps", 1);
    t.ddpg_noise_std = j.value("ddpg_noise_std", 0.1);
    t.td3_explore_noise_std = j.value("td3_explore_noise_std", 0.1);
    t.td3_noise_std = j.value("td3_noise_std", 0.2);
    t.td3_noise_clip = j.value("td3_noise_clip", 0.5);
    t.td3_policy_delay = j.value("td3_policy_delay", 2);
    t.checkpoint_interval = j.value("checkpoint_interval_episodes", 0);
    t.seed = seed;
    return t;
}

void validate(const ExperimentConfig &cfg) {
    if (cfg.env.covert.epsilon <= 0.0 || cfg.env.covert.epsilon >= 1.0)
        throw ConfigError("config: covert.epsilon must be in (0, 1)");
    if (cfg.env.covert.rho <= 1.0)
        throw ConfigError("config: covert.rho_db must be positive");
    if (cfg.trainer.episodes < 1 || cfg.trainer.batch_size < 1)
        throw ConfigError("config: trainer.episodes and batch_size must be positive");
    if (cfg.trainer.diffusion_steps < 1)
        throw ConfigError("config: trainer.diffusion_steps must be >= 1");
    if (cfg.trainer.action_gradient_steps < 1)
        throw ConfigError("config: trainer.action_gradient_steps must be >= 1");
    if (cfg.eval_episodes < 1)
        throw ConfigError("config: eval.episodes must be >= 1");
    if (cfg.sweeps.diffusion_steps.empty() || cfg.sweeps.learning_rate.empty() ||
        cfg.sweeps.epsilon.empty() || cfg.sweeps.ris_size.empty())
        throw ConfigError("config: every sweep axis needs at least one point");
    for (int t : cfg.sweeps.diffusion_steps)
        if (t < 1)
            throw ConfigError("config: sweep diffusion steps must be >= 1");
    for (double e : cfg.sweeps.epsilon)
        if (e <= 0.0 || e >= 1.0)
            throw ConfigError("config: sweep epsilon values must be in (0, 1)");
    for (const auto &sz : cfg.sweeps.ris_size)
        if (sz[0] < 1 || sz[1] < 1)
            throw ConfigError("config: sweep RIS sizes must be >= 1x1");
}

} // namespace

void ExperimentConfig::set_seed(std::uint64_t seed) {
    env.seed = seed;
    trainer.seed = seed;
    auto doc = nlohmann::json::parse(canonical_json);
    doc["seed"] = seed;
    canonical_json = doc.dump(2);
}

ExperimentConfig parse_config_json(const std::string &text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }

    ExperimentConfig cfg;
    try {
        cfg.schema_version = doc.at("schema_version").get<int>();
        if (cfg.schema_version != 1)
            throw ConfigError("config: unsupported schema_version");
        cfg.profile = doc.value("profile", "custom");
        const auto seed = doc.at("seed").get<std::uint64_t>();
        cfg.env = parse_env(doc.at("env"), seed);
        cfg.trainer = parse_trainer(doc.at("trainer"), seed);
        cfg.eval_episodes = doc.at("eval").at("episodes").get<int>();
        const auto &s = doc.at("sweeps");
        cfg.sweeps.diffusion_steps = s.at("diffusion_steps").get<std::vector<int>>();
        cfg.sweeps.learning_rate = s.at("learning_rate").get<std::vector<double>>();
        cfg.sweeps.epsilon = s.at("epsilon").get<std::vector<double>>();
        cfg.sweeps.ris_size = s.at("ris_size").get<std::vector<std::array<int, 2>>>();
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    validate(cfg);
    cfg.canonical_json = doc.dump(2);
    return cfg;
}

ExperimentConfig load_config_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_json(buf.str());
}

namespace {

const char *kDeskProfile = R"({
  "schema_version": 1,
  "profile": "desk",
  "seed": 1,
  "env": {
    "n_slots": 20,
    "dt_s": 1.0,
    "k_users": 3,
    "area": {"x_min": 0.0, "x_max": 200.0, "y_min": 0.0, "y_max": 200.0, "altitude_m": 100.0},
    "geo_altitude_m": 35786000.0,
    "ris": {"mx": 2, "my": 2, "dx_m": 0.075, "dy_m": 0.075, "wavelength_m": 0.15,
            "p_max_active_w": 1.0, "beta_max": 30.0},
    "links": {
      "l0_db": -38.0,
      "ar": {"alpha": 2.1, "kappa": 5.0},
      "rk": {"alpha": 2.5, "kappa": 3.0},
      "rw": {"alpha": 2.7, "kappa": 3.0}
    },
    "budget": {"p_a_dbw_mhz": 59.0, "g_a_dbi": 51.0, "noise_dbm_hz": -174.0, "bandwidth_mhz": 1.0},
    "covert": {"rho_db": 3.0, "epsilon": 0.1},
    "penalties": {"covert": 10.0, "ris_power": 10.0, "boundary": 10.0},
    "v_max_ms": 20.0
  },
  "trainer": {
    "algorithm": "gdpg",
    "episodes": 2000,
    "batch_size": 64,
    "buffer_capacity": 4000,
    "gamma": 0.95,
    "tau": 0.01,
    "lr": 0.001,
    "eta_a": 0.03,
    "hidden_width": 64,
    "critic_hidden_layers": 2,
    "predictor_hidden_layers": 3,
    "diffusion_steps": 10,
    "schedule": "linear",
    "embed_dim": 16,
    "start_learning_multiple": 5,
    "update_every": 1,
    "target_policy_samples": 1,
    "action_gradient_steps": 10,
    "ddpg_noise_std": 0.1,
    "td3_explore_noise_std": 0.1,
    "td3_noise_std": 0.2,
    "td3_noise_clip": 0.5,
    "td3_policy_delay": 2,
    "checkpoint_interval_episodes": 0
  },
  "eval": {"episodes": 100},
  "sweeps": {
    "diffusion_steps": [5, 10, 15],
    "learning_rate": [0.003, 0.0003, 3e-05],
    "epsilon": [0.05, 0.1, 0.2],
    "ris_size": [[1, 4], [2, 2], [2, 4]]
  }
})";

const char *kPaperProfile = R"({
  "schema_version": 1,
  "profile": "paper",
  "seed": 1,
  "env": {
    "n_slots": 50,
    "dt_s": 1.0,
    "k_users": 5,
    "area": {"x_min": 0.0, "x_max": 200.0, "y_min": 0.0, "y_max": 200.0, "altitude_m": 100.0},
    "geo_altitude_m": 35786000.0,
    "ris": {"mx": 4, "my": 4, "dx_m": 0.075, "dy_m": 0.075, "wavelength_m": 0.15,
            "p_max_active_w": 1.0, "beta_max": 30.0},
    "links": {
      "l0_db": -38.0,
      "ar": {"alpha": 2.1, "kappa": 5.0},
      "rk": {"alpha": 2.5, "kappa": 3.0},
      "rw": {"alpha": 2.7, "kappa": 3.0}
    },
    "budget": {"p_a_dbw_mhz": 59.0, "g_a_dbi": 51.0, "noise_dbm_hz": -174.0, "bandwidth_mhz": 1.0},
    "covert": {"rho_db": 3.0, "epsilon": 0.1},
    "penalties": {"covert": 10.0, "ris_power": 10.0, "boundary": 10.0},
    "v_max_ms": 20.0
  },
  "trainer": {
    "algorithm": "gdpg",
    "episodes": 20000,
    "batch_size": 256,
    "buffer_capacity": 100000,
    "gamma": 0.95,
    "tau": 0.005,
    "lr": 0.0003,
    "eta_a": 0.03,
    "hidden_width": 256,
    "critic_hidden_layers": 2,
    "predictor_hidden_layers": 3,
    "diffusion_steps": 10,
    "schedule": "cosine",
    "embed_dim": 16,
    "start_learning_multiple": 5,
    "update_every": 1,
    "target_policy_samples": 1,
    "action_gradient_steps": 1,
    "ddpg_noise_std": 0.1,
    "td3_explore_noise_std": 0.1,
    "td3_noise_std": 0.2,
    "td3_noise_clip": 0.5,
    "td3_policy_delay": 2,
    "checkpoint_interval_episodes": 1000
  },
  "eval": {"episodes": 100},
  "sweeps": {
    "diffusion_steps": [5, 10, 15],
    "learning_rate": [0.003, 0.0003, 3e-05],
    "epsilon": [0.05, 0.1, 0.2],
    "ris_size": [[1, 4], [2, 4], [4, 4], [5, 4]]
  }
})";

} // namespace

std::string profile_json(const std::string &name) {
    if (name == "desk")
        return kDeskProfile;
    if (name == "paper")
        return kPaperProfile;
    throw ConfigError("unknown profile: " + name + " (expected 'desk' or 'paper')");
}

ExperimentConfig desk_profile() { return parse_config_json(kDeskProfile); }
ExperimentConfig paper_profile() { return parse_config_json(kPaperProfile); }

ExperimentConfig profile_by_name(const std::string &name) {
    return parse_config_json(profile_json(name));
}

} // namespace aastar
