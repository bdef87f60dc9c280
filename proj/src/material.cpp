#include "elastodg/material.hpp"

#include <cmath>
#include <string>

#include "elastodg/errors.hpp"

namespace elastodg {

Material::Material(double rho, const Matrix6& stiffness)
    : rho_(rho), c_(stiffness) {
  if (!(rho > 0.0)) throw ConfigError("material density must be positive");
  if (!c_.isApprox(c_.transpose(), 1e-12))
    throw ConfigError("stiffness matrix must be symmetric");
  llt_.compute(c_);
  if (llt_.info() != Eigen::Success)
    throw ConfigError("stiffness matrix must be positive definite");
  speeds_.cp = {std::sqrt(c_(0, 0) / rho_), std::sqrt(c_(1, 1) / rho_),
                std::sqrt(c_(2, 2) / rho_)};
  // shear diagonal order is (xy, xz, yz): G_xy = c(3,3), G_xz = c(4,4),
  // G_yz = c(5,5)
  speeds_.csh = {std::sqrt(c_(3, 3) / rho_), std::sqrt(c_(5, 5) / rho_),
                 std::sqrt(c_(4, 4) / rho_)};
  speeds_.csv = {std::sqrt(c_(4, 4) / rho_), std::sqrt(c_(3, 3) / rho_),
                 std::sqrt(c_(5, 5) / rho_)};
}

Material make_isotropic(double rho, double lambda, double mu) {
  if (!(mu > 0.0) || !(lambda + 2.0 * mu > 0.0))
    throw ConfigError("isotropic moduli out of range: lambda=" +
                      std::to_string(lambda) + " mu=" + std::to_string(mu));
  Matrix6 c = Matrix6::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c(i, j) = (i == j) ? 2.0 * mu + lambda : lambda;
  for (int i = 3; i < 6; ++i) c(i, i) = mu;
  return Material(rho, c);
}

Material make_isotropic_from_speeds(double rho, double cp, double cs) {
  if (!(cs > 0.0) || !(cp > cs * std::sqrt(4.0 / 3.0)))
    throw ConfigError("wavespeeds must satisfy cp > cs*sqrt(4/3) > 0, got cp=" +
                      std::to_string(cp) + " cs=" + std::to_string(cs));
  const double mu = rho * cs * cs;
  const double lambda = rho * cp * cp - 2.0 * mu;
  return make_isotropic(rho, lambda, mu);
}

Material make_orthotropic(double rho, double c11, double c12, double c13,
                          double c22, double c23, double c33, double c44,
                          double c55, double c66) {
  Matrix6 c = Matrix6::Zero();
  c(0, 0) = c11;
  c(0, 1) = c(1, 0) = c12;
  c(0, 2) = c(2, 0) = c13;
  c(1, 1) = c22;
  c(1, 2) = c(2, 1) = c23;
  c(2, 2) = c33;
  c(3, 3) = c44;
  c(4, 4) = c55;
  c(5, 5) = c66;
  return Material(rho, c);
}

Material make_from_stiffness(double rho, const Matrix6& c) {
  const double scale = c.cwiseAbs().maxCoeff();
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      const bool allowed = (i < 3 && j < 3) || (i == j);
      if (!allowed && std::abs(c(i, j)) > 1e-12 * scale)
        throw ConfigError(
            "stiffness matrix is not orthotropic: nonzero coupling at (" +
            std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
  }
  return Material(rho, c);
}

EffectiveSpeeds effective_normal_speeds(const AxisWavespeeds& ws,
                                        const std::array<double, 3>& n) {
  auto mix = [&](const std::array<double, 3>& c) {
    double s = 0.0;
    for (int a = 0; a < 3; ++a) s += n[a] * n[a] * c[a] * c[a];
    return std::sqrt(s);
  };
  return {mix(ws.cp), mix(ws.csh), mix(ws.csv)};
}

}  // namespace elastodg
