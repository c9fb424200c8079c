#pragma once

#include <cstdint>
#include <optional>

#include "otflow/types.hpp"

namespace otflow {

/// Rigid motion plus per-point jitter applied between the two captures.
/// Defaults are plausible driving-scale magnitudes.
struct RigidMotionSpec {
  double max_rotation_deg = 15.0;  // rotation angle drawn in [0, max]
  double max_translation = 1.0;    // translation magnitude drawn in [0, max] (meters)
  double jitter_sigma = 0.01;      // per-coordinate Gaussian jitter (meters)
  std::optional<Vec3> fixed_translation;  // overrides the random translation draw
};

/// Recipe for one synthetic scene pair. Scenes are drawn in a cube of side
/// cube_extent so the default 10 m gate is active but not saturating.
struct SceneSpec {
  Index n = 128;                    // points per cloud
  RigidMotionSpec motion;
  double occlusion_fraction = 0.0;  // rho in [0, 1)
  Index resample_pool = 512;        // dense pool size N >= n
  std::uint64_t seed = 0;
  double cube_extent = 10.0;        // side length of the sampling cube (meters)
};

/// Perfect-world pair: the target is an exact permutation of the displaced
/// source, so source[i] + truth[i] == target[perm[i]] holds bitwise. Jitter
/// is folded into the displacement before duplication, preserving the
/// identity. Requires occlusion_fraction == 0.
ScenePair gen_perfect(const SceneSpec& spec);

/// Resampled pair: both clouds are independent n-point subsamples of one
/// dense N-point pool and its warped image, so points rarely have exact
/// counterparts. Ground truth comes from the dense correspondence. Requires
/// resample_pool >= n; resample_pool == n degenerates to a perfect pair up
/// to ordering. No permutation is recorded.
ScenePair gen_resampled(const SceneSpec& spec);

/// Occluded pair: as gen_resampled, but a half-space region containing
/// exactly ceil(rho * n) of the sampled source points is removed from the
/// warped pool before the target is sampled. The mask is false exactly on
/// those source points. Requires 0 < rho and ceil(rho * n) < n.
ScenePair gen_occluded(const SceneSpec& spec);

}  // namespace otflow
