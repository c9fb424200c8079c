#include <doctest.h>

#include <fstream>

#include "otflow/errors.hpp"
#include "otflow/io.hpp"
#include "otflow/rng.hpp"
#include "otflow/synth.hpp"
#include "support/test_util.hpp"

using namespace otflow;
using testutil::TempDir;

TEST_SUITE("io") {

TEST_CASE("format_double survives a text round trip") {
  Rng rng = seeded_rng(91);
  for (int i = 0; i < 500; ++i) {
    const double value = (rng.uniform() - 0.5) * std::pow(10.0, rng.uniform(-12.0, 12.0));
    CHECK(std::stod(format_double(value)) == value);
  }
  CHECK(format_double(0.0) == "0");
  CHECK(std::stod(format_double(-0.0)) == 0.0);
}

TEST_CASE("ply round trip is exact") {
  TempDir dir("ply");
  Rng rng = seeded_rng(93);
  Coords pts(37, 3);
  for (Index i = 0; i < 37; ++i) {
    pts.row(i) = rng.uniform_in_cube(50.0).transpose();
  }
  const PointCloud cloud(pts);
  const auto path = dir.path() / "cloud.ply";
  write_ply(path, cloud);
  const PointCloud loaded = read_ply(path);
  CHECK(loaded.data() == cloud.data());

  const std::string text = testutil::read_file(path);
  CHECK(text.starts_with("ply\nformat ascii 1.0\n"));
  CHECK(text.find("element vertex 37") != std::string::npos);
  CHECK(text.find('\r') == std::string::npos);  // LF only
}

TEST_CASE("ply reader rejects malformed headers") {
  TempDir dir("plybad");
  const auto path = dir.path() / "bad.ply";
  std::ofstream(path) << "ply\nformat binary_little_endian 1.0\nelement vertex 1\n"
                         "property double x\nproperty double y\nproperty double z\n"
                         "end_header\n";
  CHECK_THROWS_AS(read_ply(path), IoError);
  std::ofstream(path) << "not a ply\n";
  CHECK_THROWS_AS(read_ply(path), IoError);
  CHECK_THROWS_AS(read_ply(dir.path() / "absent.ply"), IoError);
}

TEST_CASE("flow and mask round trips") {
  TempDir dir("flow");
  Rng rng = seeded_rng(95);
  Coords vec(21, 3);
  for (Index i = 0; i < 21; ++i) {
    vec.row(i) = rng.uniform_in_cube(3.0).transpose();
  }
  const FlowField flow(vec);
  write_flow(dir.path() / "f.txt", flow);
  CHECK(read_flow(dir.path() / "f.txt").data() == flow.data());

  std::vector<bool> flags;
  for (int i = 0; i < 21; ++i) {
    flags.push_back(rng.uniform() < 0.5);
  }
  const ValidityMask mask(flags);
  write_mask(dir.path() / "m.txt", mask);
  CHECK(read_mask(dir.path() / "m.txt").data() == mask.data());

  std::ofstream(dir.path() / "badmask.txt") << "1\n2\n";
  CHECK_THROWS_AS(read_mask(dir.path() / "badmask.txt"), IoError);
  std::ofstream(dir.path() / "badflow.txt") << "0.1 0.2\n";
  CHECK_THROWS_AS(read_flow(dir.path() / "badflow.txt"), IoError);
}

TEST_CASE("scene manifest round trip preserves everything") {
  TempDir dir("scene");
  SceneSpec spec;
  spec.n = 40;
  spec.seed = 97;
  const ScenePair scene = gen_perfect(spec);
  const auto manifest = write_scene(dir.path(), "sc", scene);
  CHECK(manifest.filename() == "sc.json");
  const ScenePair loaded = read_scene(manifest);
  CHECK(loaded.source().data() == scene.source().data());
  CHECK(loaded.target().data() == scene.target().data());
  CHECK(loaded.truth().data() == scene.truth().data());
  CHECK(loaded.mask().data() == scene.mask().data());
  REQUIRE(loaded.permutation().has_value());
  CHECK(*loaded.permutation() == *scene.permutation());
}

TEST_CASE("scene manifest without permutation omits the file") {
  TempDir dir("scene2");
  SceneSpec spec;
  spec.n = 12;
  spec.seed = 98;
  spec.resample_pool = 48;
  const ScenePair scene = gen_resampled(spec);
  const auto manifest = write_scene(dir.path(), "rs", scene);
  CHECK(!std::filesystem::exists(dir.path() / "rs_perm.txt"));
  const ScenePair loaded = read_scene(manifest);
  CHECK(!loaded.permutation().has_value());
}

TEST_CASE("inconsistent scene files surface as IoError") {
  TempDir dir("scene3");
  SceneSpec spec;
  spec.n = 10;
  spec.seed = 99;
  const ScenePair scene = gen_perfect(spec);
  const auto manifest = write_scene(dir.path(), "sc", scene);
  // Truncate the mask so lengths no longer line up.
  std::ofstream(dir.path() / "sc_mask.txt") << "1\n1\n1\n";
  CHECK_THROWS_AS(read_scene(manifest), IoError);
  CHECK_THROWS_AS(read_scene(dir.path() / "nothere.json"), IoError);
}

TEST_CASE("manifest schema matches what write_scene produces") {
  TempDir dir("schema");
  SceneSpec spec;
  spec.n = 8;
  spec.seed = 100;
  const auto manifest_path = write_scene(dir.path(), "sc", gen_perfect(spec));
  const auto manifest = nlohmann::json::parse(testutil::read_file(manifest_path));
  std::string why;
  CHECK_MESSAGE(testutil::matches_schema(manifest, testutil::load_schema("scene_manifest.schema.json"), &why),
                why);
}

}  // TEST_SUITE
