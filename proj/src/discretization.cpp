#include "elastodg/discretization.hpp"

#include <cmath>

#include "elastodg/parallel.hpp"

namespace elastodg {

namespace {
// stress-tensor rows by state component index: row c of sigma selects the
// traction components (sigma . e_c)
constexpr int kSigmaRow[3][3] = {{3, 6, 7}, {6, 4, 8}, {7, 8, 5}};
}  // namespace

struct SpatialOperator::Workspace {
  std::vector<double> bracket[kComps];
  std::vector<double> dv[3][3];  // velocity component x axis
  std::vector<double> fa, tmp;
  std::vector<double> flux[kComps];

  explicit Workspace(int npe, int nfp) {
    for (auto& b : bracket) b.resize(npe);
    for (auto& row : dv)
      for (auto& f : row) f.resize(npe);
    fa.resize(npe);
    tmp.resize(npe);
    for (auto& f : flux) f.resize(nfp);
  }
};

SpatialOperator::SpatialOperator(const Mesh& mesh,
                                 std::vector<Material> materials,
                                 std::vector<int> elem_material,
                                 BoundaryTable bc)
    : mesh_(&mesh),
      materials_(std::move(materials)),
      elem_material_(std::move(elem_material)),
      bc_(bc) {
  if ((int)elem_material_.size() != mesh.nelem())
    throw MeshError("element material table size mismatch");
  for (int id : elem_material_)
    if (id < 0 || id >= (int)materials_.size())
      throw MeshError("element material id out of range");
  for (const auto& rule : bc_)
    for (double g : rule.gamma)
      if (std::abs(g) > 1.0)
        throw ConfigError("boundary reflection coefficients must be in [-1,1]");
}

void SpatialOperator::extract_faces(const StateField& q, int threads) const {
  const int nfp = mesh_->op.n() * mesh_->op.n();
  const std::size_t need = (std::size_t)mesh_->nelem() * 6 * kComps * nfp;
  if (faceq_.size() != need) faceq_.resize(need);
  parallel_for(mesh_->nelem(), threads, [&](int e, int) {
    for (int f = 0; f < 6; ++f) {
      for (int c = 0; c < kComps; ++c) {
        double* dst = faceq_.data() + (((std::size_t)e * 6 + f) * kComps + c) * nfp;
        extract_face_3d(mesh_->op, f / 2, f % 2, q.comp(e, c), dst);
      }
    }
  });
}

// Per-face-node flux pipeline. emit(node, flux9, info_or_null) runs once per
// face node; info is only assembled when wants_info is true.
template <class Emit>
static void face_flux_nodes(const Mesh& mesh,
                            const std::vector<Material>& materials,
                            const std::vector<int>& elem_material,
                            const BoundaryTable& bc,
                            const std::vector<double>& faceq, int e, int f,
                            bool wants_info, Emit&& emit) {
  const SbpOperator1D& op = mesh.op;
  const int n = op.n();
  const int nfp = n * n;
  const int axis = f / 2;
  const int side = f % 2;
  const int nb = mesh.neighbor(e, f);
  const bool boundary = nb < 0;

  // Face frame arrays come from the minus side (the element whose side-1 face
  // touches the interface); a side-0 element reuses its neighbor's data.
  const FaceData& frame = (boundary || side == 1)
                              ? mesh.elems[e].face[f]
                              : mesh.elems[nb].face[f ^ 1];

  const Material& mat = materials[elem_material[e]];
  const Material* mat2 = boundary ? nullptr : &materials[elem_material[nb]];

  auto trace = [&](int elem, int face, int c) {
    return faceq.data() + (((std::size_t)elem * 6 + face) * kComps + c) * nfp;
  };

  const BoundaryRule& rule = bc[f];

  for (int p = 0; p < nfp; ++p) {
    const std::array<double, 3>& nrm = frame.normal[p];
    const double scale = frame.scale[p];
    std::array<std::array<double, 3>, 3> rot;
    face_rotation_basis(nrm, rot);

    auto rotated_trace = [&](int elem, int face, std::array<double, 3>& w,
                             std::array<double, 3>& t) {
      double vx = trace(elem, face, 0)[p];
      double vy = trace(elem, face, 1)[p];
      double vz = trace(elem, face, 2)[p];
      double tr[3];
      for (int c = 0; c < 3; ++c)
        tr[c] = trace(elem, face, kSigmaRow[c][0])[p] * nrm[0] +
                trace(elem, face, kSigmaRow[c][1])[p] * nrm[1] +
                trace(elem, face, kSigmaRow[c][2])[p] * nrm[2];
      for (int eta = 0; eta < 3; ++eta) {
        w[eta] = rot[eta][0] * vx + rot[eta][1] * vy + rot[eta][2] * vz;
        t[eta] = rot[eta][0] * tr[0] + rot[eta][1] * tr[1] + rot[eta][2] * tr[2];
      }
    };

    std::array<double, 3> w, t;
    rotated_trace(e, f, w, t);
    const EffectiveSpeeds cs = effective_normal_speeds(mat.axis_wavespeeds(), nrm);
    const std::array<double, 3> z = {mat.rho() * cs.cn, mat.rho() * cs.cm,
                                     mat.rho() * cs.cl};

    std::array<double, 3> vhat, that, vhat_other{0, 0, 0};
    if (boundary) {
      if (rule.exact_data) {
        vhat = w;
        that = t;
      } else {
        for (int eta = 0; eta < 3; ++eta) {
          const HatState h = boundary_hat(side, rule.gamma[eta], z[eta], w[eta], t[eta]);
          vhat[eta] = h.v;
          that[eta] = h.t;
        }
      }
    } else {
      std::array<double, 3> w2, t2;
      rotated_trace(nb, f ^ 1, w2, t2);
      const EffectiveSpeeds cs2 =
          effective_normal_speeds(mat2->axis_wavespeeds(), nrm);
      const std::array<double, 3> z2 = {mat2->rho() * cs2.cn,
                                        mat2->rho() * cs2.cm,
                                        mat2->rho() * cs2.cl};
      for (int eta = 0; eta < 3; ++eta) {
        InterfaceHats h;
        if (side == 1) {
          h = interface_hat(z[eta], w[eta], t[eta], z2[eta], w2[eta], t2[eta]);
          vhat[eta] = h.minus.v;
          vhat_other[eta] = h.plus.v;
        } else {
          h = interface_hat(z2[eta], w2[eta], t2[eta], z[eta], w[eta], t[eta]);
          vhat[eta] = h.plus.v;
          vhat_other[eta] = h.minus.v;
        }
        that[eta] = h.minus.t;
      }
    }

    std::array<double, 3> g, gt;
    for (int eta = 0; eta < 3; ++eta) {
      g[eta] = fluctuation(side, z[eta], w[eta], t[eta], vhat[eta], that[eta]);
      gt[eta] = g[eta] / z[eta];
    }
    std::array<double, 3> gx, gtx;
    for (int c = 0; c < 3; ++c) {
      gx[c] = rot[0][c] * g[0] + rot[1][c] * g[1] + rot[2][c] * g[2];
      gtx[c] = rot[0][c] * gt[0] + rot[1][c] * gt[1] + rot[2][c] * gt[2];
    }
    const std::array<double, 9> flux9 =
        assemble_fluctuation_vector(side, nrm, gx, gtx);

    if (wants_info) {
      FaceNodeInfo info;
      info.elem = e;
      info.face = f;
      info.node = p;
      info.side = side;
      info.boundary = boundary;
      info.scale = scale;
      const int b1 = p % n, b2 = p / n;
      const auto& hw = op.quad.weights;
      info.wquad = hw[b1] * hw[b2];
      info.z = z;
      info.v = w;
      info.t = t;
      info.vhat = vhat;
      info.that = that;
      info.vhat_other = vhat_other;
      info.g = g;
      emit(p, scale, flux9, &info);
    } else {
      emit(p, scale, flux9, (const FaceNodeInfo*)nullptr);
    }
  }
}

void SpatialOperator::element_bracket(int e, const StateField& q, Workspace& ws,
                                      bool with_flux) const {
  const SbpOperator1D& op = mesh_->op;
  const int npe = mesh_->npe();
  const ElementGeometry& el = mesh_->elems[e];
  for (auto& b : ws.bracket) std::fill(b.begin(), b.end(), 0.0);

  // momentum rows: sum_a D_a [ met_a . (sigma row) ]
  for (int a = 0; a < 3; ++a) {
    const double* m0 = el.met[3 * a + 0].data();
    const double* m1 = el.met[3 * a + 1].data();
    const double* m2 = el.met[3 * a + 2].data();
    for (int vc = 0; vc < 3; ++vc) {
      const double* s0 = q.comp(e, kSigmaRow[vc][0]);
      const double* s1 = q.comp(e, kSigmaRow[vc][1]);
      const double* s2 = q.comp(e, kSigmaRow[vc][2]);
      for (int p = 0; p < npe; ++p)
        ws.fa[p] = m0[p] * s0[p] + m1[p] * s1[p] + m2[p] * s2[p];
      apply_derivative_3d(op, a, ws.fa.data(), ws.tmp.data());
      double* out = ws.bracket[vc].data();
      for (int p = 0; p < npe; ++p) out[p] += ws.tmp[p];
    }
  }

  // Hooke rows: non-conservative products from velocity gradients
  for (int c = 0; c < 3; ++c)
    for (int a = 0; a < 3; ++a)
      apply_derivative_3d(op, a, q.comp(e, c), ws.dv[c][a].data());
  for (int a = 0; a < 3; ++a) {
    const double* m0 = el.met[3 * a + 0].data();
    const double* m1 = el.met[3 * a + 1].data();
    const double* m2 = el.met[3 * a + 2].data();
    const double* d0 = ws.dv[0][a].data();
    const double* d1 = ws.dv[1][a].data();
    const double* d2 = ws.dv[2][a].data();
    double* bxx = ws.bracket[3].data();
    double* byy = ws.bracket[4].data();
    double* bzz = ws.bracket[5].data();
    double* bxy = ws.bracket[6].data();
    double* bxz = ws.bracket[7].data();
    double* byz = ws.bracket[8].data();
    for (int p = 0; p < npe; ++p) {
      bxx[p] += m0[p] * d0[p];
      byy[p] += m1[p] * d1[p];
      bzz[p] += m2[p] * d2[p];
      bxy[p] += m1[p] * d0[p] + m0[p] * d1[p];
      bxz[p] += m2[p] * d0[p] + m0[p] * d2[p];
      byz[p] += m2[p] * d1[p] + m1[p] * d2[p];
    }
  }

  if (!with_flux) return;
  for (int f = 0; f < 6; ++f) {
    face_flux_nodes(*mesh_, materials_, elem_material_, bc_, faceq_, e, f,
                    false,
                    [&](int p, double scale, const std::array<double, 9>& flux9,
                        const FaceNodeInfo*) {
                      for (int c = 0; c < kComps; ++c)
                        ws.flux[c][p] = -scale * flux9[c];
                    });
    for (int c = 0; c < kComps; ++c)
      accumulate_face_3d(op, f / 2, f % 2, ws.flux[c].data(),
                         ws.bracket[c].data());
  }
}

void SpatialOperator::apply_material(int e, const Workspace& ws,
                                     StateField& out) const {
  const int npe = mesh_->npe();
  const ElementGeometry& el = mesh_->elems[e];
  const Material& mat = material_of(e);
  const double rho = mat.rho();
  const Matrix6& c = mat.stiffness();
  for (int vc = 0; vc < 3; ++vc) {
    double* o = out.comp(e, vc);
    const double* b = ws.bracket[vc].data();
    for (int p = 0; p < npe; ++p) o[p] = b[p] / (el.jac[p] * rho);
  }
  for (int p = 0; p < npe; ++p) {
    Vector6 b;
    for (int i = 0; i < 6; ++i) b[i] = ws.bracket[3 + i][p];
    const Vector6 y = c * b;
    const double jinv = 1.0 / el.jac[p];
    for (int i = 0; i < 6; ++i) out.comp(e, 3 + i)[p] = y[i] * jinv;
  }
}

void SpatialOperator::volume_rate(const StateField& q, StateField& out,
                                  int threads) const {
  const int npe = mesh_->npe();
  const int nfp = mesh_->op.n() * mesh_->op.n();
  if ((int)workspaces_.size() < std::max(threads, 1))
    workspaces_.resize(std::max(threads, 1));
  parallel_for(mesh_->nelem(), threads, [&](int e, int w) {
    if (!workspaces_[w]) workspaces_[w] = std::make_unique<Workspace>(npe, nfp);
    element_bracket(e, q, *workspaces_[w], false);
    apply_material(e, *workspaces_[w], out);
  });
}

void SpatialOperator::full_rate(const StateField& q, StateField& out,
                                int threads) const {
  const int npe = mesh_->npe();
  const int nfp = mesh_->op.n() * mesh_->op.n();
  if ((int)workspaces_.size() < std::max(threads, 1))
    workspaces_.resize(std::max(threads, 1));
  extract_faces(q, threads);
  parallel_for(mesh_->nelem(), threads, [&](int e, int w) {
    if (!workspaces_[w]) workspaces_[w] = std::make_unique<Workspace>(npe, nfp);
    element_bracket(e, q, *workspaces_[w], true);
    apply_material(e, *workspaces_[w], out);
  });
}

void SpatialOperator::visit_face_nodes(
    const StateField& q, const std::function<void(const FaceNodeInfo&)>& fn) const {
  extract_faces(q, 1);
  for (int e = 0; e < mesh_->nelem(); ++e)
    for (int f = 0; f < 6; ++f)
      face_flux_nodes(*mesh_, materials_, elem_material_, bc_, faceq_, e, f,
                      true,
                      [&](int, double, const std::array<double, 9>&,
                          const FaceNodeInfo* info) { fn(*info); });
}

double SpatialOperator::interface_identity_residual(const StateField& q) const {
  double worst = 0.0;
  visit_face_nodes(q, [&](const FaceNodeInfo& info) {
    if (info.boundary || info.side != 1) return;
    double num = 0.0, den = 0.0;
    for (int eta = 0; eta < 3; ++eta) {
      num += info.that[eta] * (info.vhat_other[eta] - info.vhat[eta]);
      den += std::abs(info.that[eta]) *
             std::max(std::abs(info.vhat[eta]), std::abs(info.vhat_other[eta]));
    }
    if (den > 1e-280) worst = std::max(worst, std::abs(num) / den);
  });
  return worst;
}

}  // namespace elastodg
