#include "otflow/synth.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "otflow/rng.hpp"

namespace otflow {

namespace {

struct DrawnMotion {
  Eigen::Matrix3d rotation;
  Vec3 translation;
};

DrawnMotion draw_motion(Rng& rng, const RigidMotionSpec& motion) {
  const Vec3 axis = rng.unit_vector();
  const double angle =
      rng.uniform(0.0, motion.max_rotation_deg * std::numbers::pi / 180.0);
  if (motion.fixed_translation.has_value()) {
    return {Eigen::AngleAxisd(angle, axis).toRotationMatrix(), *motion.fixed_translation};
  }
  const Vec3 direction = rng.unit_vector();
  const double magnitude = rng.uniform(0.0, motion.max_translation);
  return {Eigen::AngleAxisd(angle, axis).toRotationMatrix(), magnitude * direction};
}

Coords draw_cloud(Rng& rng, Index n, double cube_extent) {
  Coords points(n, 3);
  const double half = cube_extent / 2.0;
  for (Index i = 0; i < n; ++i) {
    points.row(i) = rng.uniform_in_cube(half).transpose();
  }
  return points;
}

Coords warp(Rng& rng, const Coords& points, const DrawnMotion& motion, double jitter_sigma) {
  Coords warped(points.rows(), 3);
  for (Index i = 0; i < points.rows(); ++i) {
    Vec3 moved = motion.rotation * Vec3(points.row(i)) + motion.translation;
    moved += Vec3(rng.normal(jitter_sigma), rng.normal(jitter_sigma), rng.normal(jitter_sigma));
    warped.row(i) = moved.transpose();
  }
  return warped;
}

void validate_common(const SceneSpec& spec) {
  if (spec.n < 1) {
    throw std::invalid_argument("SceneSpec: n must be at least 1");
  }
  if (spec.motion.jitter_sigma < 0.0) {
    throw std::invalid_argument("SceneSpec: jitter_sigma must be non-negative");
  }
  if (!(spec.occlusion_fraction >= 0.0 && spec.occlusion_fraction < 1.0)) {
    throw std::invalid_argument("SceneSpec: occlusion_fraction must lie in [0, 1)");
  }
  if (!(spec.cube_extent > 0.0)) {
    throw std::invalid_argument("SceneSpec: cube_extent must be positive");
  }
}

}  // namespace

ScenePair gen_perfect(const SceneSpec& spec) {
  validate_common(spec);
  if (spec.occlusion_fraction != 0.0) {
    throw std::invalid_argument("gen_perfect: occlusion_fraction must be 0");
  }
  Rng rng = seeded_rng(spec.seed);
  Coords source = draw_cloud(rng, spec.n, spec.cube_extent);
  const DrawnMotion motion = draw_motion(rng, spec.motion);
  const Coords warped = warp(rng, source, motion, spec.motion.jitter_sigma);

  // Flow first, then the target as source + flow, so the perfect-world
  // identity holds bitwise rather than up to rounding.
  Coords truth = warped - source;
  const std::vector<Index> perm = rng.permutation(spec.n);
  Coords target(spec.n, 3);
  for (Index i = 0; i < spec.n; ++i) {
    target.row(perm[static_cast<std::size_t>(i)]) = source.row(i) + truth.row(i);
  }
  return ScenePair(PointCloud(std::move(source)), PointCloud(std::move(target)),
                   FlowField(std::move(truth)), ValidityMask::all_true(spec.n), perm);
}

ScenePair gen_resampled(const SceneSpec& spec) {
  validate_common(spec);
  if (spec.resample_pool < spec.n) {
    throw std::invalid_argument("gen_resampled: resample_pool must be at least n");
  }
  Rng rng = seeded_rng(spec.seed);
  const Index pool = spec.resample_pool;
  const Coords dense = draw_cloud(rng, pool, spec.cube_extent);
  const DrawnMotion motion = draw_motion(rng, spec.motion);
  const Coords warped = warp(rng, dense, motion, spec.motion.jitter_sigma);

  const std::vector<Index> source_idx = rng.sample_without_replacement(pool, spec.n);
  const std::vector<Index> target_idx = rng.sample_without_replacement(pool, spec.n);

  Coords source(spec.n, 3);
  Coords truth(spec.n, 3);
  Coords target(spec.n, 3);
  for (Index i = 0; i < spec.n; ++i) {
    const Index d = source_idx[static_cast<std::size_t>(i)];
    source.row(i) = dense.row(d);
    truth.row(i) = warped.row(d) - dense.row(d);
  }
  for (Index j = 0; j < spec.n; ++j) {
    target.row(j) = warped.row(target_idx[static_cast<std::size_t>(j)]);
  }
  return ScenePair(PointCloud(std::move(source)), PointCloud(std::move(target)),
                   FlowField(std::move(truth)), ValidityMask::all_true(spec.n));
}

ScenePair gen_occluded(const SceneSpec& spec) {
  validate_common(spec);
  if (!(spec.occlusion_fraction > 0.0)) {
    throw std::invalid_argument("gen_occluded: occlusion_fraction must be positive");
  }
  const Index occluded =
      static_cast<Index>(std::ceil(spec.occlusion_fraction * static_cast<double>(spec.n)));
  if (occluded >= spec.n) {
    throw std::invalid_argument("gen_occluded: occluded count must stay below n");
  }
  if (spec.resample_pool < spec.n) {
    throw std::invalid_argument("gen_occluded: resample_pool must be at least n");
  }
  Rng rng = seeded_rng(spec.seed);
  const Index pool = spec.resample_pool;
  const Coords dense = draw_cloud(rng, pool, spec.cube_extent);
  const DrawnMotion motion = draw_motion(rng, spec.motion);
  const Coords warped = warp(rng, dense, motion, spec.motion.jitter_sigma);

  const std::vector<Index> source_idx = rng.sample_without_replacement(pool, spec.n);

  Coords source(spec.n, 3);
  Coords truth(spec.n, 3);
  for (Index i = 0; i < spec.n; ++i) {
    const Index d = source_idx[static_cast<std::size_t>(i)];
    source.row(i) = dense.row(d);
    truth.row(i) = warped.row(d) - dense.row(d);
  }

  // Half-space cut: occlude the `occluded` sampled source points with the
  // largest projection onto a random direction, then drop every dense point
  // of that half-space from the warped pool.
  const Vec3 direction = rng.unit_vector();
  std::vector<std::pair<double, Index>> projected(static_cast<std::size_t>(spec.n));
  for (Index i = 0; i < spec.n; ++i) {
    projected[static_cast<std::size_t>(i)] = {direction.dot(Vec3(source.row(i))), i};
  }
  std::sort(projected.begin(), projected.end(), [](const auto& lhs, const auto& rhs) {
    if (lhs.first != rhs.first) {
      return lhs.first > rhs.first;  // largest projection first
    }
    return lhs.second < rhs.second;
  });
  std::vector<bool> mask_flags(static_cast<std::size_t>(spec.n), true);
  const double cut = projected[static_cast<std::size_t>(occluded - 1)].first;
  for (Index k = 0; k < occluded; ++k) {
    mask_flags[static_cast<std::size_t>(projected[static_cast<std::size_t>(k)].second)] = false;
  }

  std::vector<Index> remaining;
  remaining.reserve(static_cast<std::size_t>(pool));
  for (Index d = 0; d < pool; ++d) {
    if (direction.dot(Vec3(dense.row(d))) < cut) {
      remaining.push_back(d);
    }
  }
  if (static_cast<Index>(remaining.size()) < spec.n) {
    throw std::invalid_argument("gen_occluded: warped pool too small after occlusion cut");
  }

  const std::vector<Index> picks =
      rng.sample_without_replacement(static_cast<Index>(remaining.size()), spec.n);
  Coords target(spec.n, 3);
  for (Index j = 0; j < spec.n; ++j) {
    target.row(j) = warped.row(remaining[static_cast<std::size_t>(picks[static_cast<std::size_t>(j)])]);
  }
  return ScenePair(PointCloud(std::move(source)), PointCloud(std::move(target)),
                   FlowField(std::move(truth)), ValidityMask(std::move(mask_flags)));
}

}  // namespace otflow
