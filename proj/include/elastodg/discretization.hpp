#pragma once
// Semi-discrete DG spatial operator in anti-symmetric split form.
//
// Rates are dQ/dt = Ptilde * [ sum_xi D_xi F_xi(Q) + sum_xi B_xi(D_xi v)
//                              - Flux(Q) ]
// with Ptilde = J^{-1} blockdiag(rho^{-1} I3, C): conservative flux divergence
// in the momentum rows, non-conservative products in the Hooke rows, and the
// characteristic penalty flux scattered through H^{-1} e(side).

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "elastodg/geometry.hpp"
#include "elastodg/material.hpp"
#include "elastodg/riemann.hpp"
#include "elastodg/state.hpp"

namespace elastodg {

// Per-domain-face closure. exact_data injects the trace itself as boundary
// data (hats equal the trace, fluctuations vanish); used by the verification
// suites, not reachable from run configs.
struct BoundaryRule {
  std::array<double, 3> gamma{0.0, 0.0, 0.0};
  bool exact_data = false;
};

using BoundaryTable = std::array<BoundaryRule, 6>;  // x_min..z_max, order as faces

inline BoundaryRule free_surface_rule() { return {{1.0, 1.0, 1.0}, false}; }
inline BoundaryRule absorbing_rule() { return {{0.0, 0.0, 0.0}, false}; }
inline BoundaryRule clamped_rule() { return {{-1.0, -1.0, -1.0}, false}; }

// Diagnostic view of one face node during a flux evaluation, from the side of
// the owning element. Rotated quantities are in the local (n,m,l) frame.
struct FaceNodeInfo {
  int elem, face, node;
  int side;       // 0: reference coordinate 0, 1: reference coordinate 1
  bool boundary;
  double scale;   // J |grad xi|
  double wquad;   // tangential quadrature weight h_a h_b
  std::array<double, 3> z;           // own impedances (n,m,l)
  std::array<double, 3> v, t;        // own rotated trace
  std::array<double, 3> vhat, that;  // own hat state
  std::array<double, 3> vhat_other;  // opposite-side hat velocity (interfaces)
  std::array<double, 3> g;           // own fluctuations (local frame)
};

class SpatialOperator {
 public:
  SpatialOperator(const Mesh& mesh, std::vector<Material> materials,
                  std::vector<int> elem_material, BoundaryTable bc);

  const Mesh& mesh() const { return *mesh_; }
  const Material& material_of(int e) const {
    return materials_[elem_material_[e]];
  }
  const BoundaryTable& boundary_table() const { return bc_; }

  // out = Ptilde (divF + B): the volume-only operator the predictor iterates.
  void volume_rate(const StateField& q, StateField& out, int threads) const;

  // Full semi-discrete rate including the penalty flux.
  void full_rate(const StateField& q, StateField& out, int threads) const;

  // Walks every element face node, invoking fn with the flux quantities that
  // the rate assembly would use. Serial; for diagnostics and tests.
  void visit_face_nodes(const StateField& q,
                        const std::function<void(const FaceNodeInfo&)>& fn) const;

  // max_n |sum_eta that_eta (vhat+ - vhat-)| / (sum_eta |that_eta| max|vhat|),
  // over all internal face nodes; the no-slip/force-balance residual.
  double interface_identity_residual(const StateField& q) const;

 private:
  struct Workspace;
  void extract_faces(const StateField& q, int threads) const;
  void element_bracket(int e, const StateField& q, Workspace& ws,
                       bool with_flux) const;
  void apply_material(int e, const Workspace& ws, StateField& out) const;

  const Mesh* mesh_;
  std::vector<Material> materials_;
  std::vector<int> elem_material_;
  BoundaryTable bc_;
  // Published face traces: [elem][face][comp][facenode], filled in phase 1 of
  // a rate evaluation, read-only in phase 2.
  mutable std::vector<double> faceq_;
  mutable std::vector<std::unique_ptr<Workspace>> workspaces_;
};

}  // namespace elastodg
