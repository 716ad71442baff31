#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "qsr/extraction.hpp"
#include "qsr/oracle.hpp"

using namespace qsr;

namespace {

void BM_ExtractRandomScene(benchmark::State& state) {
  qsr::testing::Rng rng(4);
  const Scene scene = qsr::testing::random_scene(rng, static_cast<std::size_t>(state.range(0)));
  const EngineConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(extract_qsr(scene, scene.robot, cfg));
}
BENCHMARK(BM_ExtractRandomScene)->Arg(5)->Arg(20)->Arg(80);

// Boxes on a jittered grid: the sweep keeps the work near-linear.
void BM_ExtractSparseGrid(benchmark::State& state) {
  qsr::testing::Rng rng(5);
  const int side = static_cast<int>(state.range(0));
  Scene scene;
  for (int gx = 0; gx < side; ++gx)
    for (int gy = 0; gy < side; ++gy) {
      SceneObject o;
      o.id = "o" + std::to_string(gx * side + gy);
      const double x = 2.0 * gx + qsr::testing::uniform(rng, -0.6, 0.6);
      const double y = 2.0 * gy + qsr::testing::uniform(rng, -0.6, 0.6);
      o.box = OrientedBox({x, y, 0.2}, {0.2, 0.15, 0.2}, qsr::testing::uniform(rng, 0, kPi));
      scene.objects.push_back(o);
    }
  const EngineConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(extract_qsr(scene, RobotPose({-5, -5, 0}, 0), cfg));
  state.SetComplexityN(side * side);
}
BENCHMARK(BM_ExtractSparseGrid)->Arg(10)->Arg(20)->Arg(40)->Complexity();

void BM_OracleRelation(benchmark::State& state) {
  const std::vector<Scene> scenes = oracle::random_pair_scenes(16, 6);
  const EngineConfig cfg;
  std::size_t i = 0;
  for (auto _ : state) {
    const Scene& s = scenes[i++ % scenes.size()];
    benchmark::DoNotOptimize(oracle::oracle_relation(s.objects[0], s.objects[1],
                                                     {RelationName::LeftOf}, s.robot, cfg,
                                                     static_cast<std::size_t>(state.range(0)), 1));
  }
}
BENCHMARK(BM_OracleRelation)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
