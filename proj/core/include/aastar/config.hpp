#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "aastar/env.hpp"
#include "aastar/trainer.hpp"

namespace aastar {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SweepAxes {
    std::vector<int> diffusion_steps;
    std::vector<double> learning_rate;
    std::vector<double> epsilon;
    std::vector<std::array<int, 2>> ris_size; // {mx, my}
};

// One fully resolved experiment: environment, trainer, evaluation and sweep axes.
// Config files carry the dB-valued fields of the public schema; they are converted
// to linear units exactly once, here.
struct ExperimentConfig {
    int schema_version = 1;
    std::string profile = "desk";
    EnvConfig env;
    TrainerConfig trainer;
    int eval_episodes = 100;
    SweepAxes sweeps;

    // Canonicalized source document; saved verbatim as the reproducibility snapshot.
    std::string canonical_json;

    void set_seed(std::uint64_t seed);
};

ExperimentConfig parse_config_json(const std::string &text);
ExperimentConfig load_config_file(const std::string &path);

// In-repo profiles; identical to configs/desk.json and configs/paper.json.
ExperimentConfig desk_profile();
ExperimentConfig paper_profile();
ExperimentConfig profile_by_name(const std::string &name);

// The JSON document (public schema, dB units) for a profile.
std::string profile_json(const std::string &name);

} // namespace aastar
