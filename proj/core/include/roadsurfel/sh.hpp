#pragma once

#include <Eigen/Core>

#include "roadsurfel/scene_model.hpp"

namespace roadsurfel {

/// Evaluates the 16 real spherical-harmonic basis functions (degrees 0..3)
/// at unit direction `dir`.
void sh_basis(const Vec3& dir, double out[kShCoeffCount]);

/// Basis values plus the Jacobian of each basis function with respect to
/// the (unconstrained) direction components.
void sh_basis_with_grad(const Vec3& dir, double out[kShCoeffCount],
                        Eigen::Matrix<double, kShCoeffCount, 3>& jacobian);

/// Decodes view-dependent color: clamp(coeffs * basis + 0.5, 0, 1) per
/// channel.
Vec3 sh_eval(const ShCoeffs& coeffs, const Vec3& view_dir);

}  // namespace roadsurfel
