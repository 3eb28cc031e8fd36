#include "roadsurfel/rasterizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "roadsurfel/parallel.hpp"
#include "roadsurfel/sh.hpp"

namespace roadsurfel {

double gaussian_weight(double u, double v) {
  return std::exp(-0.5 * (u * u + v * v));
}

std::optional<SplatHit> ray_splat_intersect(const Camera& camera, int px,
                                            int py, const Surfel& surfel,
                                            int surfel_index,
                                            double cutoff_radius) {
  const Vec3 origin = camera.translation;
  const Vec3 dir_cam((px + 0.5 - camera.cx) / camera.fx,
                     (py + 0.5 - camera.cy) / camera.fy, 1.0);
  const double dir_norm = dir_cam.norm();
  const Vec3 dir_world = (camera.rotation * dir_cam) / dir_norm;

  // Plane normal; unit for orthonormal frames. Its scale cancels in t.
  const Vec3 plane_normal = surfel.tangent_u.cross(surfel.tangent_v);
  const double denom = dir_world.dot(plane_normal);
  if (std::abs(denom / plane_normal.norm()) < 1e-9) return std::nullopt;

  const double t = (surfel.center - origin).dot(plane_normal) / denom;
  if (t <= 0.0) return std::nullopt;

  const Vec3 point = origin + t * dir_world;
  const Vec3 offset = point - surfel.center;
  const double u = offset.dot(surfel.tangent_u) / surfel.scale_u;
  const double v = offset.dot(surfel.tangent_v) / surfel.scale_v;
  const double r2 = u * u + v * v;
  if (r2 > cutoff_radius * cutoff_radius) return std::nullopt;

  SplatHit hit;
  hit.surfel_index = surfel_index;
  hit.u = u;
  hit.v = v;
  // Camera-space z of the intersection: t is distance along the unit ray
  // whose camera-z component is 1 / |dir_cam|.
  hit.depth = t / dir_norm;
  hit.weight = std::exp(-0.5 * r2);
  return hit;
}

void sort_hits(std::vector<SplatHit>& hits) {
  std::sort(hits.begin(), hits.end(),
            [](const SplatHit& a, const SplatHit& b) {
              if (a.depth != b.depth) return a.depth < b.depth;
              return a.surfel_index < b.surfel_index;
            });
}

BlendResult blend_ray(std::span<const SplatHit> hits, const Scene& scene,
                      std::span<const Vec3> colors,
                      std::span<const Vec3> normals,
                      bool retain_contribution) {
  BlendResult result;
  result.semantic = Eigen::VectorXd::Zero(scene.class_count);

  Vec3 normal_sum = Vec3::Zero();
  double depth_sum = 0.0;
  double transmittance = 1.0;

  if (retain_contribution) {
    result.contribution.hits.assign(hits.begin(), hits.end());
    result.contribution.omegas.reserve(hits.size());
  }

  for (const SplatHit& hit : hits) {
    const Surfel& surfel = scene.surfels[hit.surfel_index];
    const double a = surfel.opacity * hit.weight;
    const double omega = a * transmittance;
    result.color += omega * colors[hit.surfel_index];
    if (scene.class_count > 0)
      result.semantic += omega * surfel.semantic_logits;
    depth_sum += omega * hit.depth;
    normal_sum += omega * normals[hit.surfel_index];
    result.alpha += omega;
    transmittance *= (1.0 - a);
    if (retain_contribution) result.contribution.omegas.push_back(omega);
  }

  if (result.alpha > 0.0) {
    result.depth = depth_sum / result.alpha;
    result.normal = normal_sum / result.alpha;
  }
  return result;
}

std::vector<Vec3> surfel_view_colors(const Scene& scene, const Vec3& eye) {
  std::vector<Vec3> colors(scene.surfels.size());
  for (size_t i = 0; i < scene.surfels.size(); ++i) {
    Vec3 dir = scene.surfels[i].center - eye;
    const double norm = dir.norm();
    dir = norm > 0.0 ? Vec3(dir / norm) : Vec3(0.0, 0.0, 1.0);
    colors[i] = sh_eval(scene.surfels[i].sh_coeffs, dir);
  }
  return colors;
}

std::vector<Vec3> surfel_normals(const Scene& scene) {
  std::vector<Vec3> normals(scene.surfels.size());
  for (size_t i = 0; i < scene.surfels.size(); ++i)
    normals[i] = surfel_normal(scene.surfels[i]);
  return normals;
}

namespace {

void check_camera(const Camera& camera) {
  if (!(camera.fx > 0.0) || !(camera.fy > 0.0))
    throw std::invalid_argument("render: camera focal lengths must be > 0");
  if (camera.width <= 0 || camera.height <= 0)
    throw std::invalid_argument("render: camera image size must be > 0");
}

/// Conservative pixel-rectangle bound of a surfel's cutoff support.
/// Returns false when the surfel may cover any pixel (near/behind camera).
bool projected_bounds(const Camera& camera, const Surfel& surfel,
                      double cutoff, int& x0, int& y0, int& x1, int& y1) {
  const double radius =
      cutoff * std::max(surfel.scale_u, surfel.scale_v);
  const Vec3 q = camera.world_to_camera(surfel.center);
  if (q.z() - radius <= 1e-9) return false;

  const double z_lo = q.z() - radius, z_hi = q.z() + radius;
  auto axis_range = [&](double coord, double focal, double principal,
                        double& lo, double& hi) {
    const double c0 = (coord - radius) / z_lo, c1 = (coord - radius) / z_hi;
    const double c2 = (coord + radius) / z_lo, c3 = (coord + radius) / z_hi;
    lo = focal * std::min(std::min(c0, c1), std::min(c2, c3)) + principal;
    hi = focal * std::max(std::max(c0, c1), std::max(c2, c3)) + principal;
  };
  double lo_x, hi_x, lo_y, hi_y;
  axis_range(q.x(), camera.fx, camera.cx, lo_x, hi_x);
  axis_range(q.y(), camera.fy, camera.cy, lo_y, hi_y);

  // Continuous image coords -> pixel indices (centers at i + 0.5), with a
  // one-pixel safety margin.
  x0 = static_cast<int>(std::floor(lo_x - 0.5)) - 1;
  x1 = static_cast<int>(std::ceil(hi_x - 0.5)) + 1;
  y0 = static_cast<int>(std::floor(lo_y - 0.5)) - 1;
  y1 = static_cast<int>(std::ceil(hi_y - 0.5)) + 1;
  return true;
}

struct TileBins {
  int tiles_x = 0, tiles_y = 0, tile_size = 0;
  std::vector<std::vector<int>> surfels;  // ascending indices per tile
};

TileBins bin_surfels(const Scene& scene, const Camera& camera,
                     const RenderOptions& opts) {
  TileBins bins;
  bins.tile_size = std::max(1, opts.tile_size);
  bins.tiles_x = (camera.width + bins.tile_size - 1) / bins.tile_size;
  bins.tiles_y = (camera.height + bins.tile_size - 1) / bins.tile_size;
  bins.surfels.resize(static_cast<size_t>(bins.tiles_x) * bins.tiles_y);

  for (int i = 0; i < static_cast<int>(scene.surfels.size()); ++i) {
    int x0, y0, x1, y1;
    if (!projected_bounds(camera, scene.surfels[i], opts.cutoff_radius, x0,
                          y0, x1, y1)) {
      x0 = 0;
      y0 = 0;
      x1 = camera.width - 1;
      y1 = camera.height - 1;
    }
    x0 = std::max(0, x0);
    y0 = std::max(0, y0);
    x1 = std::min(camera.width - 1, x1);
    y1 = std::min(camera.height - 1, y1);
    if (x0 > x1 || y0 > y1) continue;

    const int tx0 = x0 / bins.tile_size, tx1 = x1 / bins.tile_size;
    const int ty0 = y0 / bins.tile_size, ty1 = y1 / bins.tile_size;
    for (int ty = ty0; ty <= ty1; ++ty)
      for (int tx = tx0; tx <= tx1; ++tx)
        bins.surfels[static_cast<size_t>(ty) * bins.tiles_x + tx].push_back(i);
  }
  return bins;
}

void fill_dominant_normals(const Camera& camera, const RenderOptions& opts,
                           RenderOutput& out) {
  const int w = camera.width, h = camera.height;

  // Cache the z1-scaled ray directions; P(x, y) = origin + depth * dir.
  ImageD ray_dirs(h, w, 3);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const Vec3 d = camera.pixel_ray_z1(x, y);
      for (int c = 0; c < 3; ++c) ray_dirs.at(y, x, c) = d[c];
    }

  auto covered = [&](int y, int x) {
    return out.alpha.at(y, x) >= opts.alpha_min;
  };
  auto point_at = [&](int y, int x) {
    const double d = out.depth.at(y, x);
    return Vec3(d * ray_dirs.at(y, x, 0), d * ray_dirs.at(y, x, 1),
                d * ray_dirs.at(y, x, 2));
  };

  parallel_for_blocks(h, kRowBlock, opts.thread_count,
                      [&](int, int64_t row_begin, int64_t row_end) {
    for (int y = static_cast<int>(row_begin); y < row_end; ++y) {
      if (y == 0 || y == h - 1) continue;
      for (int x = 1; x < w - 1; ++x) {
        if (!covered(y, x) || !covered(y, x - 1) || !covered(y, x + 1) ||
            !covered(y - 1, x) || !covered(y + 1, x))
          continue;
        const Vec3 tangent_x = 0.5 * (point_at(y, x + 1) - point_at(y, x - 1));
        const Vec3 tangent_y = 0.5 * (point_at(y + 1, x) - point_at(y - 1, x));
        Vec3 cross = tangent_x.cross(tangent_y);
        const double norm = cross.norm();
        if (norm < 1e-12) continue;
        cross /= norm;
        if (cross.z() < 0.0) cross = -cross;
        for (int c = 0; c < 3; ++c) out.dominant_normal.at(y, x, c) = cross[c];
        out.normal_valid.at(y, x) = 1;
      }
    }
  });
}

RenderOutput render_impl(const Scene& scene, const Camera& camera,
                         const RenderOptions& opts, bool use_tiles) {
  check_camera(camera);
  const int w = camera.width, h = camera.height;
  const int class_count = std::max(scene.class_count, 1);

  RenderOutput out;
  out.color = ImageD(h, w, 3);
  out.depth = ImageD(h, w, 1);
  out.normal = ImageD(h, w, 3);
  out.semantic = ImageD(h, w, class_count);
  out.alpha = ImageD(h, w, 1);
  out.dominant_normal = ImageD(h, w, 3);
  out.normal_valid = ImageB(h, w, 1);
  out.background = opts.background;
  out.alpha_min = opts.alpha_min;
  if (opts.retain_contributions)
    out.contributions.resize(static_cast<size_t>(h) * w);

  const std::vector<Vec3> colors =
      surfel_view_colors(scene, camera.translation);
  const std::vector<Vec3> normals = surfel_normals(scene);

  TileBins bins;
  if (use_tiles) bins = bin_surfels(scene, camera, opts);
  const std::vector<int> all_indices = [&] {
    std::vector<int> v(scene.surfels.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = static_cast<int>(i);
    return v;
  }();

  parallel_for_blocks(h, kRowBlock, opts.thread_count,
                      [&](int, int64_t row_begin, int64_t row_end) {
    std::vector<SplatHit> hits;
    for (int y = static_cast<int>(row_begin); y < row_end; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::vector<int>& candidates =
            use_tiles ? bins.surfels[static_cast<size_t>(y / bins.tile_size) *
                                         bins.tiles_x +
                                     x / bins.tile_size]
                      : all_indices;
        hits.clear();
        for (int idx : candidates) {
          if (auto hit = ray_splat_intersect(camera, x, y, scene.surfels[idx],
                                             idx, opts.cutoff_radius))
            hits.push_back(*hit);
        }
        sort_hits(hits);
        BlendResult blended = blend_ray(hits, scene, colors, normals,
                                        opts.retain_contributions);

        const bool under_threshold = blended.alpha < opts.alpha_min;
        const Vec3 color = under_threshold ? opts.background : blended.color;
        Vec3 normal = Vec3::Zero();
        if (!under_threshold && blended.normal.norm() > 0.0)
          normal = blended.normal.normalized();
        for (int c = 0; c < 3; ++c) {
          out.color.at(y, x, c) = color[c];
          out.normal.at(y, x, c) = normal[c];
        }
        out.depth.at(y, x) = blended.depth;
        out.alpha.at(y, x) = blended.alpha;
        if (scene.class_count > 0)
          for (int c = 0; c < scene.class_count; ++c)
            out.semantic.at(y, x, c) = blended.semantic[c];
        if (opts.retain_contributions)
          out.contributions[static_cast<size_t>(y) * w + x] =
              std::move(blended.contribution);
      }
    }
  });

  fill_dominant_normals(camera, opts, out);
  return out;
}

}  // namespace

RenderOutput render(const Scene& scene, const Camera& camera,
                    const RenderOptions& opts) {
  return render_impl(scene, camera, opts, opts.use_tiles);
}

RenderOutput render_naive(const Scene& scene, const Camera& camera,
                          const RenderOptions& opts) {
  return render_impl(scene, camera, opts, false);
}

}  // namespace roadsurfel
