#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "qsr/frames.hpp"
#include "qsr/geometry.hpp"

using namespace qsr;

namespace {

std::vector<std::pair<OrientedBox, OrientedBox>> pairs(std::size_t n, bool overlapping) {
  qsr::testing::Rng rng(1);
  std::vector<std::pair<OrientedBox, OrientedBox>> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(overlapping ? qsr::testing::random_overlapping_pair(rng)
                              : qsr::testing::random_separated_pair(rng));
  return out;
}

void BM_BoxDistance(benchmark::State& state) {
  const auto ps = pairs(256, false);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [a, b] = ps[i++ % ps.size()];
    benchmark::DoNotOptimize(box_distance(a, b));
  }
}
BENCHMARK(BM_BoxDistance);

void BM_IntersectionVolume(benchmark::State& state) {
  const auto ps = pairs(256, true);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [a, b] = ps[i++ % ps.size()];
    benchmark::DoNotOptimize(box_intersection_volume(a, b));
  }
}
BENCHMARK(BM_IntersectionVolume);

void BM_FitBox(benchmark::State& state) {
  qsr::testing::Rng rng(2);
  const OrientedBox box = qsr::testing::random_box(rng);
  const auto pts = qsr::testing::random_points_in(rng, box, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fit_min_oriented_box(pts));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FitBox)->RangeMultiplier(10)->Range(10, 100000)->Complexity();

void BM_ViewFrames(benchmark::State& state) {
  qsr::testing::Rng rng(3);
  const OrientedBox box = qsr::testing::random_box(rng);
  const RobotPose pose = qsr::testing::random_pose(rng);
  for (auto _ : state) benchmark::DoNotOptimize(view_frames(box, pose));
}
BENCHMARK(BM_ViewFrames);

}  // namespace
