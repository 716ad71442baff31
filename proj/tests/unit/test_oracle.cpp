#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "qsr/oracle.hpp"

using namespace qsr;
using namespace qsr::oracle;
using qsr::testing::Rng;

namespace {

SceneObject object(std::string id, const OrientedBox& box) {
  SceneObject o;
  o.id = std::move(id);
  o.box = box;
  return o;
}

const RobotPose kRobot({-5, 0.3, 0}, 0.0);

}  // namespace

TEST_SUITE("sampling") {
  TEST_CASE("uniform draws stay in [0, 1) and repeat per seed") {
    std::mt19937_64 a(42), b(42);
    for (int i = 0; i < 10000; ++i) {
      const double u = uniform01(a);
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
      CHECK(u == uniform01(b));
    }
  }

  TEST_CASE("region samples pass the membership recheck and fill the region") {
    const OrientedBox box({1, 2, 0.5}, {0.4, 0.1, 0.5}, 0.7);
    const SampledRegion r(Region::of(box), 20000, 3);
    CHECK(r.samples.size() == 20000);
    CHECK(r.verify());
    for (const Point3& p : r.samples) CHECK(box.contains(p));
    // mean of the samples sits at the center
    Point3 mean;
    for (const Point3& p : r.samples) mean = mean + (1.0 / 20000) * p;
    CHECK(distance(mean, box.center()) < 0.01);
    CHECK(Region::of(box).volume() == doctest::Approx(box.volume()));
  }

  TEST_CASE("depth, outside distance and projection") {
    const Region r = Region::of(OrientedBox({0, 0, 0}, {1, 1, 1}, 0.0));
    CHECK(r.depth({0, 0, 0}) == doctest::Approx(1.0));
    CHECK(r.depth({2, 0, 0}) == doctest::Approx(-1.0));
    CHECK(r.outside_distance({4, 5, 1}) == doctest::Approx(5.0));
    CHECK(r.outside_distance({0.5, 0, 0}) == 0.0);
    CHECK(r.project({3, 0.5, -2}) == Point3{1, 0.5, -1});
  }

  TEST_CASE("halfspace regions are plain coordinate bounds") {
    const OrientedBox box({0, 0, 0}, {0.5, 0.5, 0.5}, 0.0);
    const Region up = vertical_region(box, true, 2.0);
    CHECK(up.contains({0, 0, 1.0}));
    CHECK_FALSE(up.contains({0, 0, 2.6}));
    CHECK_FALSE(up.contains({0.6, 0, 1.0}));
    const Region east = lateral_region(box, std::nullopt, 0, true, 2.0);
    CHECK(east.contains({2.4, 0, 0}));
    CHECK_FALSE(east.contains({0.4, 0, 0}));
  }

  TEST_CASE("small N is refused") {
    const SceneObject a = object("a", OrientedBox({0, 0, 0}, {0.5, 0.5, 0.5}, 0));
    CHECK_THROWS_AS(oracle_relation(a, a, {RelationName::Touches}, kRobot, EngineConfig{}, 9999, 1),
                    std::invalid_argument);
  }
}

TEST_SUITE("answers") {
  TEST_CASE("flush contact is touching with a reported margin") {
    const SceneObject a = object("a", OrientedBox({0, 0, 0}, {0.5, 0.5, 0.5}, 0));
    const SceneObject b = object("b", OrientedBox({1, 0, 0}, {0.5, 0.5, 0.5}, 0));
    const OracleAnswer o = oracle_relation(b, a, {RelationName::Touches}, kRobot, EngineConfig{},
                                           100000, kDefaultSeed);
    CHECK(o.holds);
    CHECK(o.margin > 0.0);
    CHECK(o.band == doctest::Approx(0.01));
    CHECK(engine_relation(b, a, {RelationName::Touches}, kRobot, EngineConfig{}) == true);
  }

  TEST_CASE("sampled distance is an upper bound that converges") {
    Rng rng(1);
    for (int i = 0; i < 10; ++i) {
      const auto [a, b] = qsr::testing::random_separated_pair(rng, 1.0);
      const double d = box_distance(a, b);
      const double coarse = sampled_distance(a, b, 10000, 5);
      const double fine = sampled_distance(a, b, 100000, 5);
      CHECK(coarse >= d - 1e-9);
      CHECK(fine >= d - 1e-9);
      CHECK(fine - d <= 1e-2);
    }
  }

  TEST_CASE("five seeds never flip a decisive answer") {
    const std::vector<Scene> scenes = random_pair_scenes(15, 11);
    const EngineConfig cfg;
    for (const Scene& s : scenes) {
      const SceneObject& f = s.objects[0];
      const SceneObject& r = s.objects[1];
      if (f.is_plane()) continue;
      for (const Query& q : all_queries()) {
        std::optional<bool> decided;
        for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
          const OracleAnswer o = oracle_relation(f, r, q, s.robot, cfg, 20000, seed, s.objects);
          if (!o.decisive()) continue;
          if (decided) CHECK(*decided == o.holds);
          decided = o.holds;
        }
      }
    }
  }

  TEST_CASE("doubling N keeps decisive answers") {
    const std::vector<Scene> scenes = random_pair_scenes(10, 12);
    const EngineConfig cfg;
    for (const Scene& s : scenes) {
      const SceneObject& f = s.objects[0];
      const SceneObject& r = s.objects[1];
      if (f.is_plane()) continue;
      for (const Query& q : all_queries()) {
        const OracleAnswer lo = oracle_relation(f, r, q, s.robot, cfg, 20000, 9, s.objects);
        const OracleAnswer hi = oracle_relation(f, r, q, s.robot, cfg, 40000, 9, s.objects);
        if (lo.decisive() && hi.decisive()) CHECK(lo.holds == hi.holds);
      }
    }
  }
}

TEST_SUITE("agreement") {
  TEST_CASE("engine and oracle agree on a small batch") {
    const std::vector<Scene> scenes = random_pair_scenes(20, 7);
    AgreementOptions opt;
    opt.samples = 20000;
    opt.seed = 7;
    const AgreementReport rep = check_agreement(scenes, EngineConfig{}, opt);
    CHECK(rep.scenes == 20);
    CHECK(rep.checks > 20 * 20);
    CHECK(rep.passed());
    CHECK(rep.agreements + rep.in_band_disagreements.size() == rep.checks);
    CHECK(rep.to_json().find("\"out_of_band_disagreements\"") != std::string::npos);
  }

  TEST_CASE("a different halfspace scale in the oracle is caught") {
    const std::vector<Scene> scenes = random_pair_scenes(40, 8);
    EngineConfig engine_cfg, oracle_cfg;
    oracle_cfg.relations.halfspace_scale_s = 3.0;
    std::size_t caught = 0;
    for (const Scene& s : scenes) {
      const SceneObject& f = s.objects[0];
      const SceneObject& r = s.objects[1];
      if (f.is_plane()) continue;
      for (RelationName rel : {RelationName::LeftOf, RelationName::RightOf, RelationName::InFrontOf,
                               RelationName::Behind, RelationName::Above, RelationName::Below}) {
        const auto e = engine_relation(f, r, {rel}, s.robot, engine_cfg, s.objects);
        const OracleAnswer o = oracle_relation(f, r, {rel}, s.robot, oracle_cfg, 20000, 1, s.objects);
        if (e && o.decisive() && *e != o.holds) ++caught;
      }
    }
    CHECK(caught > 0);
  }

  TEST_CASE("relation filter narrows the checks") {
    const std::vector<Scene> scenes = random_pair_scenes(5, 9);
    AgreementOptions opt;
    opt.samples = 10000;
    opt.relations = {RelationName::Touches};
    const AgreementReport rep = check_agreement(scenes, EngineConfig{}, opt);
    for (const auto& c : rep.in_band_disagreements) CHECK(c.query == "Touches");
    CHECK(rep.checks <= 2 * scenes.size());
  }

  TEST_CASE("scene generator is seeded") {
    const auto a = random_pair_scenes(5, 3), b = random_pair_scenes(5, 3);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t k = 0; k < a[i].objects.size(); ++k)
        CHECK(same_solid(a[i].objects[k].box, b[i].objects[k].box, 0.0));
  }
}
