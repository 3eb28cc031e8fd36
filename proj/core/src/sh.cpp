#include "roadsurfel/sh.hpp"

#include <algorithm>

namespace roadsurfel {

namespace {
// Real SH constants, degrees 0..3.
constexpr double kC0 = 0.28209479177387814;
constexpr double kC1 = 0.4886025119029199;
constexpr double kC2[5] = {1.0925484305920792, -1.0925484305920792,
                           0.31539156525252005, -1.0925484305920792,
                           0.5462742152960396};
constexpr double kC3[7] = {-0.5900435899266435, 2.890611442640554,
                           -0.4570457994644658, 0.3731763325901154,
                           -0.4570457994644658, 1.445305721320277,
                           -0.5900435899266435};
}  // namespace

void sh_basis(const Vec3& dir, double out[kShCoeffCount]) {
  const double x = dir.x(), y = dir.y(), z = dir.z();
  const double xx = x * x, yy = y * y, zz = z * z;
  const double xy = x * y, yz = y * z, xz = x * z;

  out[0] = kC0;
  out[1] = -kC1 * y;
  out[2] = kC1 * z;
  out[3] = -kC1 * x;
  out[4] = kC2[0] * xy;
  out[5] = kC2[1] * yz;
  out[6] = kC2[2] * (2.0 * zz - xx - yy);
  out[7] = kC2[3] * xz;
  out[8] = kC2[4] * (xx - yy);
  out[9] = kC3[0] * y * (3.0 * xx - yy);
  out[10] = kC3[1] * xy * z;
  out[11] = kC3[2] * y * (4.0 * zz - xx - yy);
  out[12] = kC3[3] * z * (2.0 * zz - 3.0 * xx - 3.0 * yy);
  out[13] = kC3[4] * x * (4.0 * zz - xx - yy);
  out[14] = kC3[5] * z * (xx - yy);
  out[15] = kC3[6] * x * (xx - 3.0 * yy);
}

void sh_basis_with_grad(const Vec3& dir, double out[kShCoeffCount],
                        Eigen::Matrix<double, kShCoeffCount, 3>& jac) {
  sh_basis(dir, out);
  const double x = dir.x(), y = dir.y(), z = dir.z();
  const double xx = x * x, yy = y * y, zz = z * z;

  jac.setZero();
  // degree 1
  jac(1, 1) = -kC1;
  jac(2, 2) = kC1;
  jac(3, 0) = -kC1;
  // degree 2
  jac(4, 0) = kC2[0] * y;
  jac(4, 1) = kC2[0] * x;
  jac(5, 1) = kC2[1] * z;
  jac(5, 2) = kC2[1] * y;
  jac(6, 0) = kC2[2] * (-2.0 * x);
  jac(6, 1) = kC2[2] * (-2.0 * y);
  jac(6, 2) = kC2[2] * (4.0 * z);
  jac(7, 0) = kC2[3] * z;
  jac(7, 2) = kC2[3] * x;
  jac(8, 0) = kC2[4] * (2.0 * x);
  jac(8, 1) = kC2[4] * (-2.0 * y);
  // degree 3
  jac(9, 0) = kC3[0] * 6.0 * x * y;
  jac(9, 1) = kC3[0] * (3.0 * xx - 3.0 * yy);
  jac(10, 0) = kC3[1] * y * z;
  jac(10, 1) = kC3[1] * x * z;
  jac(10, 2) = kC3[1] * x * y;
  jac(11, 0) = kC3[2] * (-2.0 * x * y);
  jac(11, 1) = kC3[2] * (4.0 * zz - xx - 3.0 * yy);
  jac(11, 2) = kC3[2] * (8.0 * y * z);
  jac(12, 0) = kC3[3] * (-6.0 * x * z);
  jac(12, 1) = kC3[3] * (-6.0 * y * z);
  jac(12, 2) = kC3[3] * (6.0 * zz - 3.0 * xx - 3.0 * yy);
  jac(13, 0) = kC3[4] * (4.0 * zz - 3.0 * xx - yy);
  jac(13, 1) = kC3[4] * (-2.0 * x * y);
  jac(13, 2) = kC3[4] * (8.0 * x * z);
  jac(14, 0) = kC3[5] * (2.0 * x * z);
  jac(14, 1) = kC3[5] * (-2.0 * y * z);
  jac(14, 2) = kC3[5] * (xx - yy);
  jac(15, 0) = kC3[6] * (3.0 * xx - 3.0 * yy);
  jac(15, 1) = kC3[6] * (-6.0 * x * y);
}

Vec3 sh_eval(const ShCoeffs& coeffs, const Vec3& view_dir) {
  double basis[kShCoeffCount];
  sh_basis(view_dir, basis);
  Vec3 rgb;
  for (int ch = 0; ch < 3; ++ch) {
    double value = 0.5;
    for (int b = 0; b < kShCoeffCount; ++b) value += coeffs(ch, b) * basis[b];
    rgb[ch] = std::clamp(value, 0.0, 1.0);
  }
  return rgb;
}

}  // namespace roadsurfel
