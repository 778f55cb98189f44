#include "aastar/checkpoint.hpp"

#include <fstream>
#include <stdexcept>

#include "json_codec.hpp"

namespace aastar {

std::string checkpoint_to_json(const AgentBundle &bundle, const EnvConfig &env) {
    nlohmann::json j;
    j["format"] = kCheckpointFormatTag;
    j["algorithm"] = to_string(bundle.algorithm);
    j["state_dim"] = bundle.state_dim;
    j["action_dim"] = bundle.action_dim;
    j["trainer"] = bundle.cfg;
    j["env"] = env;

    j["critic1"] = bundle.critic1;
    j["critic2"] = bundle.critic2;
    j["target_critic1"] = bundle.target_critic1;
    j["target_critic2"] = bundle.target_critic2;
    j["critic1_opt"] = bundle.critic1_opt;
    j["critic2_opt"] = bundle.critic2_opt;

    if (bundle.algorithm == Algorithm::gdpg) {
        j["policy"] = bundle.policy;
        j["target_policy"] = bundle.target_policy;
        j["policy_opt"] = bundle.policy_opt;
    } else {
        j["actor"] = bundle.actor;
        j["target_actor"] = bundle.target_actor;
        j["actor_opt"] = bundle.actor_opt;
    }
    return j.dump();
}

Checkpoint checkpoint_from_json(const std::string &text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != kCheckpointFormatTag)
        throw std::invalid_argument("checkpoint: unsupported format tag");

    Checkpoint ckpt;
    ckpt.bundle.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
    ckpt.bundle.state_dim = j.at("state_dim").get<int>();
    ckpt.bundle.action_dim = j.at("action_dim").get<int>();
    ckpt.bundle.cfg = j.at("trainer").get<TrainerConfig>();
    ckpt.env = j.at("env").get<EnvConfig>();

    ckpt.bundle.critic1 = j.at("critic1").get<Mlp>();
    ckpt.bundle.critic2 = j.at("critic2").get<Mlp>();
    ckpt.bundle.target_critic1 = j.at("target_critic1").get<Mlp>();
    ckpt.bundle.target_critic2 = j.at("target_critic2").get<Mlp>();
    ckpt.bundle.critic1_opt = j.at("critic1_opt").get<AdamState>();
    ckpt.bundle.critic2_opt = j.at("critic2_opt").get<AdamState>();

    if (ckpt.bundle.algorithm == Algorithm::gdpg) {
        ckpt.bundle.policy = j.at("policy").get<DiffusionPolicy>();
        ckpt.bundle.target_policy = j.at("target_policy").get<DiffusionPolicy>();
        ckpt.bundle.policy_opt = j.at("policy_opt").get<AdamState>();
    } else {
        ckpt.bundle.actor = j.at("actor").get<Mlp>();
        ckpt.bundle.target_actor = j.at("target_actor").get<Mlp>();
        ckpt.bundle.actor_opt = j.at("actor_opt").get<AdamState>();
    }
    return ckpt;
}

void save_checkpoint(const AgentBundle &bundle, const EnvConfig &env, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("save_checkpoint: cannot open " + path);
    out << checkpoint_to_json(bundle, env) << '\n';
}

Checkpoint load_checkpoint(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("load_checkpoint: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return checkpoint_from_json(text);
}

} // namespace aastar
