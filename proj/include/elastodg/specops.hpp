#pragma once
// 1D spectral collocation operators on [0,1] and tensor-product helpers for
// nodal fields on (degree+1)^3 points.
//
// The nodal derivative matrix D together with the diagonal quadrature H
// satisfies the summation-by-parts relation
//     H D + (H D)^T = e1 e1^T - e0 e0^T,
// where e0/e1 interpolate a nodal polynomial to the interval endpoints.

#include <vector>

#include <Eigen/Dense>

namespace elastodg {

enum class QuadratureRule { GaussLobatto, GaussLegendre };

// Degrees beyond this are rejected; node computation and operator conditioning
// are only qualified up to here.
constexpr int kMaxDegree = 15;

struct Quadrature1D {
  QuadratureRule rule{QuadratureRule::GaussLobatto};
  int degree = 0;
  std::vector<double> nodes;    // ascending, inside [0,1]
  std::vector<double> weights;  // positive, sum to 1
};

struct SbpOperator1D {
  Quadrature1D quad;
  Eigen::MatrixXd diff;        // (n x n) collocation derivative
  Eigen::VectorXd e0, e1;      // endpoint interpolation vectors L_j(0), L_j(1)
  std::vector<double> bary;    // barycentric weights of the node set
  bool conditioning_warning = false;  // degree > 12: weights/D grow ill-conditioned

  int n() const { return quad.degree + 1; }
};

// degree >= 1, <= kMaxDegree. Gauss-Lobatto integrates degree 2P-1 exactly,
// Gauss-Legendre degree 2P+1. Nodes are Newton-refined in extended precision.
Quadrature1D build_quadrature(QuadratureRule rule, int degree);
SbpOperator1D build_sbp(QuadratureRule rule, int degree);

// --- tensor-product helpers -------------------------------------------------
// Volume fields are scalar arrays over (n,n,n) nodes in lexicographic order
// with axis 0 fastest: index = i + n*(j + n*k).
//
// Face arrays for a face perpendicular to `axis` keep the two remaining axes
// in ascending order with the first one fastest:
//   axis 0 -> (j,k), axis 1 -> (i,k), axis 2 -> (i,j).

// out = derivative of `in` along `axis`; in/out must not alias.
void apply_derivative_3d(const SbpOperator1D& op, int axis, const double* in,
                         double* out);

// face[a,b] = sum_i e(side)_i * vol[..i..]; side 0 uses e0, side 1 uses e1.
// Plain node extraction for Gauss-Lobatto, endpoint extrapolation for
// Gauss-Legendre.
void extract_face_3d(const SbpOperator1D& op, int axis, int side,
                     const double* vol, double* face);

// vol[..i..] += (e(side)_i / h_i) * face[a,b]: the H^{-1} e(side) scatter of a
// surface term back into the volume.
void accumulate_face_3d(const SbpOperator1D& op, int axis, int side,
                        const double* face, double* vol);

// Values of the Lagrange basis at x (barycentric evaluation; exact one-hot
// when x coincides with a node).
void basis_values(const SbpOperator1D& op, double x, double* out);

}  // namespace elastodg
