#pragma once

#include <optional>
#include <span>
#include <vector>

#include "roadsurfel/scene_model.hpp"

namespace roadsurfel {

/// One ray-surfel intersection. `u`, `v` are the surfel-local chart
/// coordinates, `depth` is the camera-space z of the intersection point,
/// `weight` the Gaussian kernel value there.
struct SplatHit {
  int surfel_index = -1;
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;
  double weight = 0.0;
};

/// Depth-sorted hits on one ray together with their blending weights
/// omega_i = alpha_i * G_i * prod_{j<i} (1 - alpha_j * G_j).
struct RayContribution {
  std::vector<SplatHit> hits;
  std::vector<double> omegas;
};

struct RenderOptions {
  Vec3 background = Vec3(0.5, 0.5, 0.5);
  double cutoff_radius = 3.0;  // hit rejected when u^2 + v^2 > cutoff^2
  double alpha_min = 1e-4;     // below this the pixel shows the background
  bool retain_contributions = false;
  bool use_tiles = true;
  int tile_size = 16;
  int thread_count = 0;  // 0 = hardware concurrency
};

struct RenderOutput {
  ImageD color;            // HxWx3
  ImageD depth;            // HxWx1, omega-weighted mean, 0 where uncovered
  ImageD normal;           // HxWx3, omega-mean surfel normal, unit or zero
  ImageD semantic;         // HxWxC blended logits
  ImageD alpha;            // HxWx1 accumulated opacity
  ImageD dominant_normal;  // HxWx3, from depth-buffer central differences
  ImageB normal_valid;     // HxWx1, 1 where dominant_normal is defined
  std::vector<RayContribution> contributions;  // HxW, when retained
  Vec3 background = Vec3::Zero();
  double alpha_min = 0.0;

  const RayContribution& contribution_at(int y, int x) const {
    return contributions[static_cast<size_t>(y) * color.width() + x];
  }
};

/// Per-ray blend result before buffer assembly.
struct BlendResult {
  Vec3 color = Vec3::Zero();
  double depth = 0.0;
  Vec3 normal = Vec3::Zero();
  Eigen::VectorXd semantic;
  double alpha = 0.0;
  RayContribution contribution;
};

/// exp(-(u^2 + v^2) / 2).
double gaussian_weight(double u, double v);

/// Exact intersection of the pixel's viewing ray with the surfel plane,
/// expressed in the surfel's (u, v) chart. Returns no-hit when the
/// intersection lies behind the camera, the ray grazes the plane
/// (|ray . normal| < 1e-9), or u^2 + v^2 exceeds cutoff_radius^2.
std::optional<SplatHit> ray_splat_intersect(const Camera& camera, int px,
                                            int py, const Surfel& surfel,
                                            int surfel_index,
                                            double cutoff_radius = 3.0);

/// Ascending depth; ties broken by ascending surfel index.
void sort_hits(std::vector<SplatHit>& hits);

/// Front-to-back compositing over sorted hits. `colors` are the decoded
/// per-surfel RGB values for the current view; `normals` the per-surfel
/// unit normals. Depth and normal are omega-weighted means normalized by
/// the accumulated alpha (zero where it vanishes).
BlendResult blend_ray(std::span<const SplatHit> hits, const Scene& scene,
                      std::span<const Vec3> colors,
                      std::span<const Vec3> normals,
                      bool retain_contribution);

/// Full forward render: intersect + sort + blend per pixel, then the
/// dominant plane normal from central differences of the back-projected
/// depth buffer. Throws std::invalid_argument for cameras with nonpositive
/// focal lengths.
RenderOutput render(const Scene& scene, const Camera& camera,
                    const RenderOptions& opts = {});

/// Reference implementation: per-pixel loop over every surfel, no tiling.
/// Kept as the oracle the tiled path must match bit for bit.
RenderOutput render_naive(const Scene& scene, const Camera& camera,
                          const RenderOptions& opts = {});

/// Decoded SH color of every surfel for a camera at `eye` (view direction
/// from the eye to each surfel center).
std::vector<Vec3> surfel_view_colors(const Scene& scene, const Vec3& eye);

/// Per-surfel canonical normals.
std::vector<Vec3> surfel_normals(const Scene& scene);

}  // namespace roadsurfel
