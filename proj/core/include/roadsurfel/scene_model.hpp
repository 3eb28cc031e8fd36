#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "roadsurfel/grid.hpp"

namespace roadsurfel {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr int kShCoeffCount = 16;  // real SH basis through degree 3
using ShCoeffs = Eigen::Matrix<double, 3, kShCoeffCount>;

/// One planar Gaussian primitive. The tangent frame (tangent_u, tangent_v)
/// spans the surfel plane; scales are in meters along each tangent.
struct Surfel {
  Vec3 center = Vec3::Zero();
  double scale_u = 1.0;
  double scale_v = 1.0;
  Vec3 tangent_u = Vec3::UnitX();
  Vec3 tangent_v = Vec3::UnitY();
  double opacity = 0.5;
  ShCoeffs sh_coeffs = ShCoeffs::Zero();
  Eigen::VectorXd semantic_logits;

  /// Gram-Schmidt on the tangent pair. Idempotent for frames that already
  /// satisfy the orthonormality invariant.
  void orthonormalize_frame();

  /// Checks the stored invariants (unit orthogonal tangents, positive
  /// scales, opacity in [0,1]) within `tol`.
  bool valid(double tol = 1e-6) const;
};

/// Pinhole camera with a world-from-camera rigid pose. Pixel (x, y) spans
/// [x, x+1) x [y, y+1); its ray passes through the pixel center
/// ((x + 0.5 - cx) / fx, (y + 0.5 - cy) / fy, 1) in camera coordinates.
struct Camera {
  double fx = 0.0, fy = 0.0, cx = 0.0, cy = 0.0;
  int width = 0, height = 0;
  Mat3 rotation = Mat3::Identity();   // world-from-camera
  Vec3 translation = Vec3::Zero();    // camera center in world coordinates

  bool valid(double tol = 1e-6) const;

  /// Unit ray direction in world coordinates through pixel center (x, y).
  Vec3 pixel_ray(double x, double y) const;
  /// World ray direction scaled so its camera-z component is 1; the world
  /// point at camera-space depth z is translation + z * pixel_ray_z1.
  Vec3 pixel_ray_z1(double x, double y) const;

  Vec3 world_to_camera(const Vec3& world_point) const;
  Vec3 camera_to_world(const Vec3& camera_point) const;
};

/// One input view plus its per-pixel annotations. All raster fields share
/// the camera's width/height.
struct Frame {
  std::string id;
  ImageD image;                          // HxWx3, channels in [0,1]
  Camera camera;
  ImageI label_map;                      // HxWx1, class indices in [0,C)
  std::optional<ImageB> occluder_mask;   // HxWx1, nonzero = occluder
  std::optional<ImageD> inpainted_image; // HxWx3
};

struct Scene {
  std::vector<Surfel> surfels;
  int class_count = 0;
  std::vector<std::string> class_names;
};

/// Eq-style tangent-plane chart: center + scale_u * tangent_u * u +
/// scale_v * tangent_v * v.
Vec3 surfel_local_to_world(const Surfel& surfel, double u, double v);

/// normalize(tangent_u x tangent_v), flipped so the world-z component is
/// >= 0 (road surfaces face up).
Vec3 surfel_normal(const Surfel& surfel);

}  // namespace roadsurfel
