#pragma once

#include <string>

#include "aastar/env.hpp"
#include "aastar/trainer.hpp"

namespace aastar {

inline constexpr const char *kCheckpointFormatTag = "aastar-checkpoint-v1";

struct Checkpoint {
    AgentBundle bundle;
    EnvConfig env;
};

std::string checkpoint_to_json(const AgentBundle &bundle, const EnvConfig &env);
Checkpoint checkpoint_from_json(const std::string &text);

void save_checkpoint(const AgentBundle &bundle, const EnvConfig &env, const std::string &path);
Checkpoint load_checkpoint(const std::string &path);

} // namespace aastar
