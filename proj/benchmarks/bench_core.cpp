#include <benchmark/benchmark.h>

#include "hadsw/chsw.hpp"
#include "hadsw/flows.hpp"
#include "hadsw/sampling.hpp"

namespace {

using namespace hadsw;

DiscreteMeasure make_cloud(const ManifoldDescriptor& desc, int n,
                           std::uint64_t seed) {
  auto m = make_manifold(desc);
  RngStream rng(seed);
  const MatrixXd cov =
      0.25 * MatrixXd::Identity(m->tangent_dim(), m->tangent_dim());
  return DiscreteMeasure::uniform(
      m, sample_wrapped_normal(*m, m->origin(), cov, n, rng));
}

ManifoldDescriptor descriptor_for(int which) {
  switch (which) {
    case 0: return ManifoldDescriptor::euclidean(8);
    case 1: return ManifoldDescriptor::lorentz(4);
    case 2: return ManifoldDescriptor::poincare(4);
    case 3: return ManifoldDescriptor::spd_log_euclidean(4);
    default: return ManifoldDescriptor::spd_log_cholesky(4);
  }
}

void BM_Chsw(benchmark::State& state) {
  const auto desc = descriptor_for(static_cast<int>(state.range(0)));
  const auto mu = make_cloud(desc, static_cast<int>(state.range(1)), 1);
  const auto nu = make_cloud(desc, static_cast<int>(state.range(1)), 2);
  ChswParams params;
  params.projection = Projection::kHorospherical;
  params.num_directions = 64;
  for (auto _ : state)
    benchmark::DoNotOptimize(chsw(mu, nu, params).value);
}
BENCHMARK(BM_Chsw)
    ->ArgsProduct({{0, 1, 2, 3, 4}, {128, 512}})
    ->Unit(benchmark::kMillisecond);

void BM_Directions(benchmark::State& state) {
  const auto desc = descriptor_for(static_cast<int>(state.range(0)));
  auto m = make_manifold(desc);
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_directions(*m, 256, 7));
}
BENCHMARK(BM_Directions)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);

void BM_FlowStep(benchmark::State& state) {
  const auto desc = descriptor_for(static_cast<int>(state.range(0)));
  const auto mu = make_cloud(desc, 256, 1);
  const auto nu = make_cloud(desc, 256, 2);
  const MatrixXd dirs = sample_directions(*mu.manifold, 32, 11);
  FlowParams params;
  for (auto _ : state)
    benchmark::DoNotOptimize(flow_step(mu, nu, dirs, params, 0));
}
BENCHMARK(BM_FlowStep)
    ->DenseRange(0, 4)
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
