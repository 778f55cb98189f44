#include <benchmark/benchmark.h>

#include "aastar/config.hpp"
#include "aastar/env.hpp"

using namespace aastar;

namespace {

void BM_ChannelSet(benchmark::State &state) {
    EnvConfig cfg = paper_profile().env;
    cfg.geom.mx = static_cast<int>(state.range(0));
    cfg.geom.my = 4;
    NodeLayout layout;
    layout.satellite = {100, 100, cfg.geo_altitude};
    layout.users.assign(cfg.k_users, Position3{60, 80, 0});
    layout.warden = {140, 40, 0};
    layout.relay = {100, 100, 100};
    Rng rng(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_channel_set(layout, cfg.geom, cfg.links, rng));
    }
}
BENCHMARK(BM_ChannelSet)->Arg(1)->Arg(2)->Arg(4)->Arg(5);

void BM_EnvStep(benchmark::State &state) {
    const EnvConfig cfg = desk_profile().env;
    Env env(cfg);
    Rng rng(5);
    Eigen::VectorXd action(cfg.action_dim());
    std::uint64_t episode = 0;
    env.reset(episode);
    for (auto _ : state) {
        if (env.done())
            env.reset(++episode);
        for (int i = 0; i < action.size(); ++i)
            action[i] = rng.uniform(-1.0, 1.0);
        benchmark::DoNotOptimize(env.step(action));
    }
}
BENCHMARK(BM_EnvStep);

} // namespace
