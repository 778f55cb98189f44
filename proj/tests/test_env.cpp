#include <doctest.h>

#include <cmath>
#include <numbers>

#include "aastar/config.hpp"
#include "aastar/env.hpp"

using namespace aastar;

namespace {

EnvConfig desk_env() { return desk_profile().env; }

EnvConfig paper_env() { return paper_profile().env; }

} // namespace

TEST_CASE("state and action dimensions follow the MDP formulas") {
    EnvConfig cfg = paper_env(); // 4x4, K = 5
    CHECK(cfg.state_dim() == 216); // 2*16*6 + 15 + 9
    CHECK(cfg.action_dim() == 34); // 2 + 2*16

    EnvConfig small = desk_env(); // 2x2, K = 3
    CHECK(small.state_dim() == 2 * 4 * 4 + 9 + 9);
    CHECK(small.action_dim() == 10);

    Env env(small);
    const Eigen::VectorXd s = env.reset(0);
    CHECK(s.size() == small.state_dim());
}

TEST_CASE("reset") {
    EnvConfig cfg = desk_env();
    Env env(cfg);

    SUBCASE("same episode seed reproduces the state exactly") {
        const Eigen::VectorXd a = env.reset(3);
        const Eigen::VectorXd b = env.reset(3);
        CHECK((a - b).norm() == 0.0);
        const Eigen::VectorXd c = env.reset(4);
        CHECK((a - c).norm() > 0.0);
    }
    SUBCASE("relay starts at the area center; history entries are zero") {
        const Eigen::VectorXd s = env.reset(0);
        CHECK(env.layout().relay.x == doctest::Approx(100.0));
        CHECK(env.layout().relay.y == doctest::Approx(100.0));
        CHECK(env.layout().relay.z == doctest::Approx(cfg.area.altitude));
        // previous reward is the final entry; previous capacities precede it
        CHECK(s[s.size() - 1] == 0.0);
        for (int k = 0; k < cfg.k_users; ++k)
            CHECK(s[s.size() - 2 - k] == 0.0);
    }
    SUBCASE("position entries are normalized into [0, 1]") {
        const Eigen::VectorXd s = env.reset(0);
        const int pos_entries = 2 * cfg.k_users + 4;
        for (int i = 0; i < pos_entries; ++i) {
            CHECK(s[i] >= 0.0);
            CHECK(s[i] <= 1.0);
        }
    }
    SUBCASE("the h_ar block occupies exactly 2M entries after the positions") {
        // With the CSI normalization, h_ar entries have magnitude ~O(1); check the
        // block is populated and finite.
        const Eigen::VectorXd s = env.reset(1);
        const int m = cfg.geom.elements();
        const int start = 2 * cfg.k_users + 4;
        double power = 0.0;
        for (int i = 0; i < 2 * m; ++i)
            power += s[start + i] * s[start + i];
        CHECK(power > 1e-3);
        CHECK(std::isfinite(power));
    }
}

TEST_CASE("decode_action") {
    EnvConfig cfg = desk_env();
    const int m = cfg.geom.elements();

    SUBCASE("all -1: velocity renormalized onto the speed circle, beta floor, phi 0") {
        const Eigen::VectorXd raw = Eigen::VectorXd::Constant(cfg.action_dim(), -1.0);
        const auto [vel, tm] = Env::decode_action(raw, cfg);
        CHECK(vel.norm() == doctest::Approx(cfg.v_max));
        CHECK(vel.x() == doctest::Approx(-cfg.v_max / std::numbers::sqrt2));
        CHECK(vel.y() == doctest::Approx(-cfg.v_max / std::numbers::sqrt2));
        for (int i = 0; i < m; ++i) {
            CHECK(tm.betas[i] == doctest::Approx(1.0 + 1e-6));
            CHECK(tm.phis[i] == doctest::Approx(0.0));
        }
    }
    SUBCASE("all 0: zero velocity, beta midpoint, phi pi") {
        const Eigen::VectorXd raw = Eigen::VectorXd::Zero(cfg.action_dim());
        const auto [vel, tm] = Env::decode_action(raw, cfg);
        CHECK(vel.norm() == doctest::Approx(0.0));
        for (int i = 0; i < m; ++i) {
            CHECK(tm.betas[i] == doctest::Approx((1.0 + 1e-6 + cfg.beta_max) / 2.0));
            CHECK(tm.phis[i] == doctest::Approx(std::numbers::pi));
        }
    }
    SUBCASE("all +1: beta cap, phi 2pi") {
        const Eigen::VectorXd raw = Eigen::VectorXd::Constant(cfg.action_dim(), 1.0);
        const auto [vel, tm] = Env::decode_action(raw, cfg);
        for (int i = 0; i < m; ++i) {
            CHECK(tm.betas[i] == doctest::Approx(cfg.beta_max));
            CHECK(tm.phis[i] == doctest::Approx(2.0 * std::numbers::pi));
        }
    }
    SUBCASE("out-of-box raws are clamped before decoding") {
        Eigen::VectorXd raw = Eigen::VectorXd::Constant(cfg.action_dim(), 5.0);
        const auto [vel, tm] = Env::decode_action(raw, cfg);
        CHECK(tm.betas.maxCoeff() == doctest::Approx(cfg.beta_max));
        CHECK(vel.norm() <= cfg.v_max + 1e-12);
    }
}

TEST_CASE("step") {
    EnvConfig cfg = desk_env();
    Env env(cfg);

    SUBCASE("boundary overrun is penalized and the relay is clamped") {
        env.reset(0);
        Eigen::VectorXd raw = Eigen::VectorXd::Zero(cfg.action_dim());
        raw[0] = 1.0; // full speed along +x
        StepResult last;
        // 100 m to the wall at 20 m/s: the sixth step crosses
        for (int i = 0; i < 6; ++i)
            last = env.step(raw);
        CHECK(last.info.boundary_violation);
        CHECK(env.layout().relay.x == doctest::Approx(cfg.area.x_max));
        CHECK(last.reward == doctest::Approx(last.info.objective - cfg.r_pp -
                                             (last.info.covert_violation ? cfg.r_pc : 0.0) -
                                             (last.info.power_violation ? cfg.r_pr : 0.0)));
    }

    SUBCASE("floor amplification in this geometry stays covert") {
        env.reset(0);
        Eigen::VectorXd raw = Eigen::VectorXd::Zero(cfg.action_dim());
        raw.segment(2, cfg.geom.elements()).setConstant(-1.0); // beta at the floor
        const StepResult res = env.step(raw);
        CHECK(res.info.iota < env.covert_budget_watts());
        CHECK_FALSE(res.info.covert_violation);
    }

    SUBCASE("episode ends exactly at n_slots and stepping past it throws") {
        env.reset(0);
        const Eigen::VectorXd raw = Eigen::VectorXd::Zero(cfg.action_dim());
        for (int i = 0; i < cfg.n_slots - 1; ++i) {
            const StepResult r = env.step(raw);
            CHECK_FALSE(r.done);
        }
        const StepResult final_step = env.step(raw);
        CHECK(final_step.done);
        CHECK_THROWS_AS(env.step(raw), std::logic_error);
    }

    SUBCASE("reward decomposition holds on every step of a random episode") {
        Rng rng(split_seed(23, "env-reward"));
        env.reset(5);
        while (!env.done()) {
            Eigen::VectorXd raw(cfg.action_dim());
            for (int i = 0; i < raw.size(); ++i)
                raw[i] = rng.uniform(-1.0, 1.0);
            const StepResult res = env.step(raw);
            const double penalties = cfg.r_pc * (res.info.covert_violation ? 1 : 0) +
                                     cfg.r_pr * (res.info.power_violation ? 1 : 0) +
                                     cfg.r_pp * (res.info.boundary_violation ? 1 : 0);
            CHECK(res.reward + penalties == doctest::Approx(res.info.objective).epsilon(1e-10));
            CHECK(res.info.covert_violation == !is_covert(res.info.iota, cfg.covert));
        }
    }

    SUBCASE("a random-policy episode replays through the metrics stack") {
        // The info log must reproduce the episode's cumulative objective through
        // an independent pass over slot_objective.
        Rng rng(split_seed(23, "env-replay"));
        env.reset(7);
        double cumulative = 0.0, replayed = 0.0;
        while (!env.done()) {
            Eigen::VectorXd raw(cfg.action_dim());
            for (int i = 0; i < raw.size(); ++i)
                raw[i] = rng.uniform(-1.0, 1.0);
            const StepResult res = env.step(raw);
            cumulative += res.info.objective;
            replayed += slot_objective(res.info.capacities);
            CHECK(res.info.jain == doctest::Approx(jain_index(res.info.capacities)));
        }
        CHECK(cumulative == doctest::Approx(replayed).epsilon(1e-10));
    }

    SUBCASE("trajectories are reproducible from (config seed, episode seed, actions)") {
        Rng rng(split_seed(23, "env-determinism"));
        std::vector<Eigen::VectorXd> actions;
        for (int i = 0; i < cfg.n_slots; ++i) {
            Eigen::VectorXd raw(cfg.action_dim());
            for (int j = 0; j < raw.size(); ++j)
                raw[j] = rng.uniform(-1.0, 1.0);
            actions.push_back(raw);
        }
        auto run = [&](Env &e) {
            std::vector<double> rewards;
            e.reset(11);
            for (const auto &a : actions)
                rewards.push_back(e.step(a).reward);
            return rewards;
        };
        Env env2(cfg);
        const auto r1 = run(env);
        const auto r2 = run(env2);
        REQUIRE(r1.size() == r2.size());
        for (std::size_t i = 0; i < r1.size(); ++i)
            CHECK(r1[i] == r2[i]);
    }
}

TEST_CASE("per-step diagnostics serialize to one JSON line") {
    EnvConfig cfg = desk_env();
    Env env(cfg);
    env.reset(0);
    const StepResult res = env.step(Eigen::VectorXd::Zero(cfg.action_dim()));
    const std::string line = to_json_line(res.info);
    CHECK(line.find("\"iota\"") != std::string::npos);
    CHECK(line.find('\n') == std::string::npos);
}

TEST_CASE("invalid configurations are rejected") {
    EnvConfig cfg = desk_env();
    cfg.n_slots = 0;
    CHECK_THROWS_AS(Env{cfg}, std::invalid_argument);

    EnvConfig cfg2 = desk_env();
    cfg2.k_users = 0;
    CHECK_THROWS_AS(Env{cfg2}, std::invalid_argument);

    EnvConfig cfg3 = desk_env();
    cfg3.r_pc = -1.0;
    CHECK_THROWS_AS(Env{cfg3}, std::invalid_argument);
}
