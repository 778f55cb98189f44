#include <benchmark/benchmark.h>

#include "aastar/config.hpp"
#include "aastar/diffusion.hpp"

using namespace aastar;

namespace {

DiffusionPolicy make_policy(int diffusion_steps) {
    const ExperimentConfig cfg = desk_profile();
    DiffusionPolicy policy;
    policy.action_dim = cfg.env.action_dim();
    policy.condition_dim = cfg.env.state_dim();
    policy.embed_dim = cfg.trainer.embed_dim;
    policy.schedule = make_schedule(diffusion_steps, ScheduleKind::cosine);
    Rng rng(7);
    policy.net = Mlp::init(
        DiffusionPolicy::make_spec(policy.action_dim, policy.condition_dim, policy.embed_dim,
                                   cfg.trainer.hidden_width, cfg.trainer.predictor_hidden_layers),
        rng, 0.01);
    return policy;
}

void BM_SampleAction(benchmark::State &state) {
    const DiffusionPolicy policy = make_policy(static_cast<int>(state.range(0)));
    Rng rng(11);
    Eigen::VectorXd cond = Eigen::VectorXd::Random(policy.condition_dim);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_action(cond, policy, rng));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SampleAction)->DenseRange(2, 20, 2)->Complexity(benchmark::oN);

void BM_ElboUpdate(benchmark::State &state) {
    DiffusionPolicy policy = make_policy(10);
    const int batch = static_cast<int>(state.range(0));
    Rng rng(13);
    Eigen::MatrixXd conds = Eigen::MatrixXd::Random(policy.condition_dim, batch);
    Eigen::MatrixXd actions = Eigen::MatrixXd::Random(policy.action_dim, batch);
    for (auto _ : state) {
        MlpGrads grads = MlpGrads::zeros(policy.net.spec);
        benchmark::DoNotOptimize(elbo_loss(policy, conds, actions, rng, &grads));
    }
}
BENCHMARK(BM_ElboUpdate)->Arg(32)->Arg(128)->Arg(256);

} // namespace

BENCHMARK_MAIN();
