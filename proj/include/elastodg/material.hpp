#pragma once
// Isotropic / orthotropic linear elastic materials.
//
// Stress components follow the state-vector order (xx, yy, zz, xy, xz, yz);
// the stiffness acts on engineering strains, so the shear diagonal holds the
// (xy, xz, yz) shear moduli in that order.

#include <array>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

namespace elastodg {

using Matrix6 = Eigen::Matrix<double, 6, 6>;
using Vector6 = Eigen::Matrix<double, 6, 1>;

// Per-axis wavespeeds: for propagation along axis a, cp[a] is the longitudinal
// speed and csh[a]/csv[a] the two shear speeds (horizontal/vertical
// polarization in the paper-fixed labeling).
struct AxisWavespeeds {
  std::array<double, 3> cp, csh, csv;
};

// Effective speeds seen by a face with unit normal n: weighted by the normal
// components, one per characteristic family (normal, m-tangential,
// l-tangential).
struct EffectiveSpeeds {
  double cn, cm, cl;
};

class Material {
 public:
  // Validates rho > 0 and C symmetric positive definite (Cholesky).
  Material(double rho, const Matrix6& stiffness);

  double rho() const { return rho_; }
  const Matrix6& stiffness() const { return c_; }
  // compliance solve: returns C^{-1} s
  Vector6 compliance_apply(const Vector6& s) const { return llt_.solve(s); }
  const AxisWavespeeds& axis_wavespeeds() const { return speeds_; }

 private:
  double rho_;
  Matrix6 c_;
  Eigen::LLT<Matrix6> llt_;
  AxisWavespeeds speeds_;
};

Material make_isotropic(double rho, double lambda, double mu);

// Requires cp > cs * sqrt(4/3) so that lambda = rho cp^2 - 2 rho cs^2 stays
// positive-definite-compatible.
Material make_isotropic_from_speeds(double rho, double cp, double cs);

// Orthotropic stiffness from the nine independent coefficients. c44/c55/c66
// fill the (xy, xz, yz) shear diagonal in that order.
Material make_orthotropic(double rho, double c11, double c12, double c13,
                          double c22, double c23, double c33, double c44,
                          double c55, double c66);

// Accepts a full 6x6 only when it has the orthotropic sparsity pattern;
// rejects general anisotropy.
Material make_from_stiffness(double rho, const Matrix6& c);

EffectiveSpeeds effective_normal_speeds(const AxisWavespeeds& ws,
                                        const std::array<double, 3>& n);

}  // namespace elastodg
