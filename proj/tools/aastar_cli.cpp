// Experiment driver: seeded train / eval / sweep / bench around the core library.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "aastar/bench.hpp"
#include "aastar/checkpoint.hpp"
#include "aastar/config.hpp"
#include "aastar/trainer.hpp"

namespace fs = std::filesystem;
using namespace aastar;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeError = 2;

struct CommonOpts {
    std::string config_path;
    std::string profile;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
};

std::string resolve_out_dir(const std::string &flag_value, const std::string &fallback) {
    if (!flag_value.empty())
        return flag_value;
    if (const char *env = std::getenv("AASTAR_OUTPUT_DIR"); env && *env)
        return std::string(env) + "/" + fallback;
    return fallback;
}

ExperimentConfig resolve_config(const CommonOpts &opts) {
    ExperimentConfig cfg;
    if (!opts.config_path.empty())
        cfg = load_config_file(opts.config_path);
    else
        cfg = profile_by_name(opts.profile.empty() ? "desk" : opts.profile);
    if (opts.seed)
        cfg.set_seed(*opts.seed);
    return cfg;
}

void write_text(const fs::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string());
    out << text;
    if (text.empty() || text.back() != '\n')
        out << '\n';
}

int run_train(const ExperimentConfig &cfg, const std::string &out_dir, bool log_steps) {
    Env env(cfg.env);
    AgentBundle bundle = AgentBundle::make(env.state_dim(), env.action_dim(), cfg.trainer);

    fs::create_directories(out_dir);
    write_text(fs::path(out_dir) / "config_snapshot.json", cfg.canonical_json);

    std::ofstream log(fs::path(out_dir) / "train_log.jsonl", std::ios::binary);
    std::ofstream timing(fs::path(out_dir) / "timing.jsonl", std::ios::binary);
    std::ofstream steps;
    if (log_steps)
        steps.open(fs::path(out_dir) / "steps.jsonl", std::ios::binary);

    TrainHooks hooks;
    hooks.on_episode = [&](const EpisodeRecord &rec) {
        log << to_json_line(rec) << '\n';
        if (rec.episode % 100 == 0)
            std::cout << "episode " << rec.episode << " reward " << rec.reward
                      << " covert_violations " << rec.covert_violations << std::endl;
    };
    hooks.on_episode_timing = [&](int episode, double seconds) {
        timing << nlohmann::json{{"episode", episode}, {"seconds", seconds}}.dump() << '\n';
    };
    if (log_steps)
        hooks.on_step = [&](const SlotInfo &info) { steps << to_json_line(info) << '\n'; };
    hooks.on_checkpoint = [&](int episode, const AgentBundle &b) {
        char name[64];
        std::snprintf(name, sizeof(name), "checkpoint_ep%06d.json", episode + 1);
        save_checkpoint(b, cfg.env, (fs::path(out_dir) / name).string());
    };

    const auto start = std::chrono::steady_clock::now();
    const TrainResult result = train(env, bundle, hooks);
    const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;

    save_checkpoint(bundle, cfg.env, (fs::path(out_dir) / "checkpoint.json").string());

    const DecileStats stats = decile_stats(result.episodes);
    nlohmann::json summary;
    summary["episodes"] = static_cast<int>(result.episodes.size());
    summary["total_env_steps"] = result.total_env_steps;
    summary["total_learn_steps"] = result.total_learn_steps;
    summary["wall_clock_seconds"] = wall.count();
    summary["first_decile_mean_reward"] = stats.first_mean_reward;
    summary["last_decile_mean_reward"] = stats.last_mean_reward;
    summary["first_decile_mean_covert_violations"] = stats.first_mean_covert_violations;
    summary["last_decile_mean_covert_violations"] = stats.last_mean_covert_violations;
    write_text(fs::path(out_dir) / "summary.json", summary.dump(2));

    std::cout << "train: wrote " << out_dir << " (last-decile mean reward "
              << stats.last_mean_reward << ")" << std::endl;
    return kExitOk;
}

int run_eval(const std::string &checkpoint_path, const CommonOpts &opts,
             const std::string &mode_name, std::optional<int> episodes_override,
             const std::string &out_dir) {
    const ActionWrapper wrapper = action_wrapper_from_string(mode_name);

    std::optional<Checkpoint> ckpt;
    EnvConfig env_cfg;
    int episodes = 100;
    std::uint64_t eval_seed = 1;

    if (!checkpoint_path.empty()) {
        ckpt = load_checkpoint(checkpoint_path);
        env_cfg = ckpt->env;
        eval_seed = ckpt->env.seed;
    } else {
        if (wrapper != ActionWrapper::random)
            throw ConfigError("eval: --checkpoint is required unless --mode random");
        const ExperimentConfig cfg = resolve_config(opts);
        env_cfg = cfg.env;
        episodes = cfg.eval_episodes;
        eval_seed = cfg.env.seed;
    }
    if (!opts.config_path.empty() || !opts.profile.empty()) {
        const ExperimentConfig cfg = resolve_config(opts);
        episodes = cfg.eval_episodes;
    }
    if (opts.seed)
        eval_seed = *opts.seed;
    if (episodes_override)
        episodes = *episodes_override;

    Env env(env_cfg);
    const EvalSummary summary =
        evaluate(env, ckpt ? &ckpt->bundle : nullptr, wrapper, episodes, eval_seed);

    fs::create_directories(out_dir);
    nlohmann::json j = nlohmann::json::parse(to_json(summary));
    j["mode"] = to_string(wrapper);
    j["eval_seed"] = eval_seed;
    write_text(fs::path(out_dir) / "eval_summary.json", j.dump(2));
    std::cout << j.dump(2) << std::endl;
    return kExitOk;
}

nlohmann::json config_doc_with(const ExperimentConfig &cfg, const std::string &axis,
                               const nlohmann::json &value) {
    nlohmann::json doc = nlohmann::json::parse(cfg.canonical_json);
    if (axis == "diffusion_steps")
        doc["trainer"]["diffusion_steps"] = value;
    else if (axis == "learning_rate")
        doc["trainer"]["lr"] = value;
    else if (axis == "epsilon")
        doc["env"]["covert"]["epsilon"] = value;
    else if (axis == "ris_size") {
        doc["env"]["ris"]["mx"] = value.at(0);
        doc["env"]["ris"]["my"] = value.at(1);
    } else
        throw ConfigError("sweep: unknown axis " + axis);
    return doc;
}

int run_sweep(const ExperimentConfig &cfg, const std::string &axis, const std::string &out_dir) {
    std::vector<std::pair<std::string, nlohmann::json>> points;
    if (axis == "diffusion_steps") {
        for (int t : cfg.sweeps.diffusion_steps)
            points.emplace_back("t" + std::to_string(t), t);
    } else if (axis == "learning_rate") {
        for (double lr : cfg.sweeps.learning_rate) {
            char label[32];
            std::snprintf(label, sizeof(label), "lr%.0e", lr);
            points.emplace_back(label, lr);
        }
    } else if (axis == "epsilon") {
        for (double eps : cfg.sweeps.epsilon) {
            char label[32];
            std::snprintf(label, sizeof(label), "eps%g", eps);
            points.emplace_back(label, eps);
        }
    } else if (axis == "ris_size") {
        for (const auto &sz : cfg.sweeps.ris_size)
            points.emplace_back("ris" + std::to_string(sz[0]) + "x" + std::to_string(sz[1]),
                                nlohmann::json{sz[0], sz[1]});
    } else {
        throw ConfigError("sweep: unknown axis " + axis);
    }

    for (const auto &[label, value] : points) {
        const nlohmann::json doc = config_doc_with(cfg, axis, value);
        const ExperimentConfig point_cfg = parse_config_json(doc.dump(2));
        const std::string point_dir = out_dir + "/" + axis + "/" + label;
        std::cout << "sweep point " << label << " -> " << point_dir << std::endl;
        run_train(point_cfg, point_dir, false);
    }
    return kExitOk;
}

int run_bench(const ExperimentConfig &cfg, const std::vector<int> &steps_axis, int reps,
              const std::string &out_dir) {
    const auto table = inference_latency_table(
        cfg.env.state_dim(), cfg.env.action_dim(), cfg.trainer.hidden_width,
        cfg.trainer.predictor_hidden_layers, cfg.trainer.embed_dim, steps_axis, reps,
        cfg.env.seed);

    std::vector<double> xs, ys;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &point : table) {
        xs.push_back(point.steps);
        ys.push_back(point.mean_ms);
        rows.push_back({{"diffusion_steps", point.steps}, {"mean_latency_ms", point.mean_ms}});
        std::cout << "T=" << point.steps << "  " << point.mean_ms << " ms" << std::endl;
    }
    const LinearFit fit = linear_fit(xs, ys);
    std::cout << "linear fit: slope " << fit.slope << " ms/step, intercept " << fit.intercept
              << " ms, R^2 " << fit.r2 << std::endl;

    fs::create_directories(out_dir);
    nlohmann::json j;
    j["table"] = rows;
    j["fit"] = {{"slope_ms_per_step", fit.slope}, {"intercept_ms", fit.intercept}, {"r2", fit.r2}};
    j["reps"] = reps;
    write_text(fs::path(out_dir) / "bench.json", j.dump(2));
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Desk-scale lab for aerial active STAR-RIS covert communications"};
    app.require_subcommand(1);

    CommonOpts opts;

    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--config", opts.config_path, "Path to an experiment config (JSON)");
        cmd->add_option("--profile", opts.profile, "Built-in profile: desk or paper");
        cmd->add_option("--seed", opts.seed, "Root seed override");
        cmd->add_option("--out", opts.out_dir, "Output directory");
    };

    auto *train_cmd = app.add_subcommand("train", "Train an agent and write logs + checkpoint");
    add_common(train_cmd);
    bool log_steps = false;
    train_cmd->add_flag("--log-steps", log_steps, "Also stream per-step diagnostics");

    auto *eval_cmd = app.add_subcommand("eval", "Evaluate a checkpoint without learning");
    add_common(eval_cmd);
    std::string checkpoint_path, mode = "active";
    std::optional<int> eval_episodes;
    eval_cmd->add_option("--checkpoint", checkpoint_path, "Checkpoint file to evaluate");
    eval_cmd->add_option("--mode", mode, "active | random | na | oto | oabo");
    eval_cmd->add_option("--episodes", eval_episodes, "Number of evaluation episodes");

    auto *sweep_cmd = app.add_subcommand("sweep", "Train once per point of a sweep axis");
    add_common(sweep_cmd);
    std::string axis;
    sweep_cmd->add_option("--axis", axis, "diffusion_steps | learning_rate | epsilon | ris_size")
        ->required();

    auto *bench_cmd = app.add_subcommand("bench", "Measure inference latency vs diffusion steps");
    add_common(bench_cmd);
    std::vector<int> steps_axis;
    int reps = 200;
    bench_cmd->add_option("--steps", steps_axis, "Diffusion-step counts to time");
    bench_cmd->add_option("--reps", reps, "Samples per point");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (train_cmd->parsed()) {
            const ExperimentConfig cfg = resolve_config(opts);
            return run_train(cfg, resolve_out_dir(opts.out_dir, "out/train"), log_steps);
        }
        if (eval_cmd->parsed()) {
            return run_eval(checkpoint_path, opts, mode, eval_episodes,
                            resolve_out_dir(opts.out_dir, "out/eval"));
        }
        if (sweep_cmd->parsed()) {
            const ExperimentConfig cfg = resolve_config(opts);
            return run_sweep(cfg, axis, resolve_out_dir(opts.out_dir, "out/sweep"));
        }
        if (bench_cmd->parsed()) {
            const ExperimentConfig cfg = resolve_config(opts);
            if (steps_axis.empty())
                for (int t = 2; t <= 20; t += 2)
                    steps_axis.push_back(t);
            return run_bench(cfg, steps_axis, reps, resolve_out_dir(opts.out_dir, "out/bench"));
        }
    } catch (const ConfigError &e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitConfigError;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitConfigError;
    } catch (const std::exception &e) {
        std::cerr << "runtime error: " << e.what() << std::endl;
        return kExitRuntimeError;
    }
    return kExitOk;
}
