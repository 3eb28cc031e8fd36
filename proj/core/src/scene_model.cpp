#include "roadsurfel/scene_model.hpp"

#include <cmath>

namespace roadsurfel {

void Surfel::orthonormalize_frame() {
  tangent_u.normalize();
  tangent_v -= tangent_v.dot(tangent_u) * tangent_u;
  tangent_v.normalize();
}

bool Surfel::valid(double tol) const {
  if (!(scale_u > 0.0 && scale_v > 0.0)) return false;
  if (!(opacity >= 0.0 && opacity <= 1.0)) return false;
  if (std::abs(tangent_u.norm() - 1.0) > tol) return false;
  if (std::abs(tangent_v.norm() - 1.0) > tol) return false;
  if (std::abs(tangent_u.dot(tangent_v)) > tol) return false;
  return center.allFinite() && sh_coeffs.allFinite();
}

bool Camera::valid(double tol) const {
  if (!(fx > 0.0 && fy > 0.0)) return false;
  if (width <= 0 || height <= 0) return false;
  const Mat3 should_be_identity = rotation * rotation.transpose();
  if ((should_be_identity - Mat3::Identity()).cwiseAbs().maxCoeff() > tol)
    return false;
  return std::abs(rotation.determinant() - 1.0) <= tol;
}

Vec3 Camera::pixel_ray(double x, double y) const {
  return pixel_ray_z1(x, y).normalized();
}

Vec3 Camera::pixel_ray_z1(double x, double y) const {
  const Vec3 cam_dir((x + 0.5 - cx) / fx, (y + 0.5 - cy) / fy, 1.0);
  return rotation * cam_dir;
}

Vec3 Camera::world_to_camera(const Vec3& world_point) const {
  return rotation.transpose() * (world_point - translation);
}

Vec3 Camera::camera_to_world(const Vec3& camera_point) const {
  return rotation * camera_point + translation;
}

Vec3 surfel_local_to_world(const Surfel& surfel, double u, double v) {
  return surfel.center + surfel.scale_u * surfel.tangent_u * u +
         surfel.scale_v * surfel.tangent_v * v;
}

Vec3 surfel_normal(const Surfel& surfel) {
  Vec3 normal = surfel.tangent_u.cross(surfel.tangent_v).normalized();
  if (normal.z() < 0.0) normal = -normal;
  return normal;
}

}  // namespace roadsurfel
