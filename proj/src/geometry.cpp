#include "elastodg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "elastodg/errors.hpp"

namespace elastodg {

double TopographySurface::operator()(double x, double z) const {
  auto cell = [](double u, int n, double h, int& i0, double& t) {
    double g = u / h;
    g = std::clamp(g, 0.0, (double)(n - 1));
    i0 = std::min((int)g, n - 2);
    t = g - i0;
  };
  int i0, k0;
  double tx, tz;
  cell(x, nx, spacing, i0, tx);
  cell(z, nz, spacing, k0, tz);
  auto at = [&](int i, int k) { return elevation[i + (std::size_t)nx * k]; };
  return (1 - tx) * (1 - tz) * at(i0, k0) + tx * (1 - tz) * at(i0 + 1, k0) +
         (1 - tx) * tz * at(i0, k0 + 1) + tx * tz * at(i0 + 1, k0 + 1);
}

TopographySurface ingest_topography(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open topography file: " + path);
  TopographySurface topo;
  std::string line;
  int lineno = 0;

  auto fail = [&](const std::string& what) {
    throw MeshError(path + ":" + std::to_string(lineno) + ": " + what);
  };

  if (!std::getline(in, line)) {
    lineno = 1;
    fail("missing header line 'nx nz spacing_m'");
  }
  ++lineno;
  {
    std::istringstream hs(line);
    if (!(hs >> topo.nx >> topo.nz >> topo.spacing))
      fail("malformed header, expected 'nx nz spacing_m'");
    std::string extra;
    if (hs >> extra) fail("trailing tokens after header");
    if (topo.nx < 2 || topo.nz < 2) fail("grid must be at least 2 x 2");
    if (!(topo.spacing > 0.0)) fail("grid spacing must be positive");
  }

  const std::size_t total = (std::size_t)topo.nx * topo.nz;
  topo.elevation.reserve(total);
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    double v;
    while (ls >> v) {
      if (topo.elevation.size() == total) fail("more samples than nx*nz");
      topo.elevation.push_back(v);
    }
    if (!ls.eof()) fail("malformed elevation value");
  }
  if (topo.elevation.size() != total) {
    ++lineno;
    fail("expected " + std::to_string(total) + " samples, got " +
         std::to_string(topo.elevation.size()));
  }
  return topo;
}

void face_rotation_basis(const std::array<double, 3>& n,
                         std::array<std::array<double, 3>, 3>& rot) {
  const double ny = std::abs(n[1]);
  std::array<double, 3> m0 =
      ny > 0.99 ? std::array<double, 3>{0, 0, 1} : std::array<double, 3>{0, 1, 0};
  double dot = n[0] * m0[0] + n[1] * m0[1] + n[2] * m0[2];
  std::array<double, 3> m{m0[0] - dot * n[0], m0[1] - dot * n[1],
                          m0[2] - dot * n[2]};
  double len = std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]);
  for (double& c : m) c /= len;
  rot[0] = n;
  rot[1] = m;
  rot[2] = {n[1] * m[2] - n[2] * m[1], n[2] * m[0] - n[0] * m[2],
            n[0] * m[1] - n[1] * m[0]};
}

std::array<int, 3> Mesh::elem_ijk(int e) const {
  return {e % spec.nx, (e / spec.nx) % spec.ny, e / (spec.nx * spec.ny)};
}

int Mesh::neighbor(int e, int f) const {
  auto ijk = elem_ijk(e);
  const int a = f / 2;
  const int dir = (f % 2) ? 1 : -1;
  const int n[3] = {spec.nx, spec.ny, spec.nz};
  int v = ijk[a] + dir;
  if (v < 0 || v >= n[a]) {
    if (!spec.periodic[a]) return -1;
    v = (v + n[a]) % n[a];
  }
  ijk[a] = v;
  return elem_index(ijk[0], ijk[1], ijk[2]);
}

namespace {

// met[3a+c] = D_b((D_a2 u) v) - D_a2((D_b u) v) with (a2,b) the cyclic
// successors of axis a and (u,v) the cyclic successors of coordinate c.
void curl_metric(const SbpOperator1D& op, const std::array<const double*, 3>& xc,
                 const std::array<std::array<std::vector<double>, 3>, 3>& dcov,
                 int npe, std::array<std::vector<double>, 9>& met) {
  std::vector<double> prod(npe), tmp(npe);
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3, c2 = (a + 2) % 3;
    for (int c = 0; c < 3; ++c) {
      const int u = (c + 1) % 3, v = (c + 2) % 3;
      auto& out = met[3 * a + c];
      out.assign(npe, 0.0);
      // + D_c2( (D_b u) v )
      for (int p = 0; p < npe; ++p) prod[p] = dcov[u][b][p] * xc[v][p];
      apply_derivative_3d(op, c2, prod.data(), tmp.data());
      for (int p = 0; p < npe; ++p) out[p] += tmp[p];
      // - D_b( (D_c2 u) v )
      for (int p = 0; p < npe; ++p) prod[p] = dcov[u][c2][p] * xc[v][p];
      apply_derivative_3d(op, b, prod.data(), tmp.data());
      for (int p = 0; p < npe; ++p) out[p] -= tmp[p];
    }
  }
}

}  // namespace

Mesh build_mesh(const MeshSpec& spec, QuadratureRule rule, int degree) {
  if (spec.nx < 1 || spec.ny < 1 || spec.nz < 1)
    throw MeshError("element counts must be positive");
  const auto& d = spec.domain;
  if (!(d[0] < d[1]) || !(d[2] < d[3]) || !(d[4] < d[5]))
    throw MeshError("domain extents must be strictly increasing per axis");
  if (spec.top_surface &&
      (spec.periodic[0] || spec.periodic[1] || spec.periodic[2]))
    throw MeshError("periodic axes cannot be combined with a topography surface");

  Mesh mesh;
  mesh.spec = spec;
  mesh.op = build_sbp(rule, degree);
  const SbpOperator1D& op = mesh.op;
  const int n = op.n();
  const int npe = n * n * n;
  const int nfp = n * n;
  const double dx = (d[1] - d[0]) / spec.nx;
  const double dz = (d[5] - d[4]) / spec.nz;

  mesh.elems.resize(mesh.nelem());
  std::array<std::array<std::vector<double>, 3>, 3> dcov;  // dcov[coord][axis]
  for (auto& row : dcov)
    for (auto& f : row) f.resize(npe);

  for (int k = 0; k < spec.nz; ++k) {
    for (int j = 0; j < spec.ny; ++j) {
      for (int i = 0; i < spec.nx; ++i) {
        ElementGeometry& el = mesh.elems[mesh.elem_index(i, j, k)];
        el.x.resize(npe);
        el.y.resize(npe);
        el.z.resize(npe);
        for (int ks = 0; ks < n; ++ks) {
          const double z = d[4] + (k + op.quad.nodes[ks]) * dz;
          for (int jr = 0; jr < n; ++jr) {
            for (int iq = 0; iq < n; ++iq) {
              const int p = iq + n * (jr + n * ks);
              const double x = d[0] + (i + op.quad.nodes[iq]) * dx;
              const double ytop = spec.top_surface ? spec.top_surface(x, z) : d[2];
              el.x[p] = x;
              el.z[p] = z;
              el.y[p] = ytop + ((j + op.quad.nodes[jr]) / spec.ny) * (d[3] - ytop);
            }
          }
        }

        const std::array<const double*, 3> xc = {el.x.data(), el.y.data(),
                                                 el.z.data()};
        for (int c = 0; c < 3; ++c)
          for (int a = 0; a < 3; ++a)
            apply_derivative_3d(op, a, xc[c], dcov[c][a].data());

        el.jac.resize(npe);
        for (int p = 0; p < npe; ++p) {
          const double xq = dcov[0][0][p], xr = dcov[0][1][p], xs = dcov[0][2][p];
          const double yq = dcov[1][0][p], yr = dcov[1][1][p], ys = dcov[1][2][p];
          const double zq = dcov[2][0][p], zr = dcov[2][1][p], zs = dcov[2][2][p];
          el.jac[p] = xq * (yr * zs - zr * ys) - yq * (xr * zs - zr * xs) +
                      zq * (xr * ys - yr * xs);
          if (!(el.jac[p] > 0.0))
            throw MeshError("non-positive Jacobian in element (" +
                            std::to_string(i) + "," + std::to_string(j) + "," +
                            std::to_string(k) + ")");
        }

        curl_metric(op, xc, dcov, npe, el.met);

        for (int f = 0; f < 6; ++f) {
          const int a = f / 2, side = f % 2;
          FaceData& fd = el.face[f];
          fd.normal.resize(nfp);
          fd.scale.resize(nfp);
          std::array<std::vector<double>, 3> row;
          for (int c = 0; c < 3; ++c) {
            row[c].resize(nfp);
            extract_face_3d(op, a, side, el.met[3 * a + c].data(), row[c].data());
          }
          for (int p = 0; p < nfp; ++p) {
            const double sx = row[0][p], sy = row[1][p], sz = row[2][p];
            const double sc = std::sqrt(sx * sx + sy * sy + sz * sz);
            if (!(sc > 0.0))
              throw MeshError("degenerate face metric in element (" +
                              std::to_string(i) + "," + std::to_string(j) + "," +
                              std::to_string(k) + ")");
            fd.scale[p] = sc;
            fd.normal[p] = {sx / sc, sy / sc, sz / sc};
          }
        }
      }
    }
  }

  // Discrete metric identity residual, scaled by the largest metric entry.
  double met_scale = 0.0, resid = 0.0;
  std::vector<double> acc(npe), tmp(npe);
  for (const auto& el : mesh.elems)
    for (const auto& m : el.met)
      for (double v : m) met_scale = std::max(met_scale, std::abs(v));
  for (const auto& el : mesh.elems) {
    for (int c = 0; c < 3; ++c) {
      std::fill(acc.begin(), acc.end(), 0.0);
      for (int a = 0; a < 3; ++a) {
        apply_derivative_3d(op, a, el.met[3 * a + c].data(), tmp.data());
        for (int p = 0; p < npe; ++p) acc[p] += tmp[p];
      }
      for (int p = 0; p < npe; ++p) resid = std::max(resid, std::abs(acc[p]));
    }
  }
  mesh.metric_identity_residual = resid / met_scale;
  if (mesh.metric_identity_residual > 1e-11)
    throw MeshError("discrete metric identity residual " +
                    std::to_string(mesh.metric_identity_residual) +
                    " exceeds 1e-11");

  // Conforming faces: the two sides' independently computed frames must agree.
  // Gauss-Legendre face data on a curved top is endpoint-extrapolated and only
  // agrees to interpolation error, so the hard check covers the exact cases;
  // the solver always uses minus-side data either way.
  const bool check_watertight =
      rule == QuadratureRule::GaussLobatto || !spec.top_surface;
  double wt = 0.0;
  for (int e = 0; e < mesh.nelem(); ++e) {
    for (int a = 0; a < 3; ++a) {
      const int nb = mesh.neighbor(e, 2 * a + 1);
      if (nb < 0) continue;
      const FaceData& fm = mesh.elems[e].face[2 * a + 1];
      const FaceData& fp = mesh.elems[nb].face[2 * a];
      for (int p = 0; p < nfp; ++p) {
        for (int c = 0; c < 3; ++c)
          wt = std::max(wt, std::abs(fm.normal[p][c] - fp.normal[p][c]));
        wt = std::max(wt, std::abs(fm.scale[p] - fp.scale[p]) / fm.scale[p]);
      }
    }
  }
  mesh.watertight_residual = wt;
  if (check_watertight && wt > 1e-10)
    throw MeshError("conforming-face mismatch " + std::to_string(wt) +
                    " exceeds 1e-10");

  return mesh;
}

std::array<double, 3> Mesh::map_point(int e,
                                      const std::array<double, 3>& qrs) const {
  const int n = op.n();
  std::vector<double> lq(n), lr(n), ls(n);
  basis_values(op, qrs[0], lq.data());
  basis_values(op, qrs[1], lr.data());
  basis_values(op, qrs[2], ls.data());
  const ElementGeometry& el = elems[e];
  std::array<double, 3> out{0, 0, 0};
  for (int ks = 0; ks < n; ++ks)
    for (int jr = 0; jr < n; ++jr) {
      const double w2 = lr[jr] * ls[ks];
      for (int iq = 0; iq < n; ++iq) {
        const int p = iq + n * (jr + n * ks);
        const double w = lq[iq] * w2;
        out[0] += w * el.x[p];
        out[1] += w * el.y[p];
        out[2] += w * el.z[p];
      }
    }
  return out;
}

Mesh::Location Mesh::locate(const std::array<double, 3>& p) const {
  const auto& d = spec.domain;
  const double eps = 1e-9;
  auto inside = [&](double v, double lo, double hi) {
    return v >= lo - eps * (hi - lo) && v <= hi + eps * (hi - lo);
  };
  const double ytop = spec.top_surface ? spec.top_surface(p[0], p[2]) : d[2];
  if (!inside(p[0], d[0], d[1]) || !inside(p[2], d[4], d[5]) ||
      !inside(p[1], ytop, d[3]))
    throw MeshError("point outside mesh domain");

  // Structured index guess; exact face hits resolve to the lower element.
  auto pick = [](double u, int count) {
    u = std::clamp(u, 0.0, (double)count);
    int i = std::min((int)u, count - 1);
    if ((double)i == u && i > 0) --i;
    return i;
  };
  const int i = pick((p[0] - d[0]) / (d[1] - d[0]) * spec.nx, spec.nx);
  const int k = pick((p[2] - d[4]) / (d[5] - d[4]) * spec.nz, spec.nz);
  const int j = pick((p[1] - ytop) / (d[3] - ytop) * spec.ny, spec.ny);
  const int e = elem_index(i, j, k);

  // Damped Newton on the interpolated mapping.
  const int n = op.n();
  const int npe = n * n * n;
  std::array<std::array<std::vector<double>, 3>, 3> dcov;
  const ElementGeometry& el = elems[e];
  const std::array<const double*, 3> xc = {el.x.data(), el.y.data(), el.z.data()};
  for (int c = 0; c < 3; ++c)
    for (int a = 0; a < 3; ++a) {
      dcov[c][a].resize(npe);
      apply_derivative_3d(op, a, xc[c], dcov[c][a].data());
    }
  auto interp = [&](const std::vector<double>& f, const double* lq,
                    const double* lr, const double* ls) {
    double out = 0.0;
    for (int ks = 0; ks < n; ++ks)
      for (int jr = 0; jr < n; ++jr) {
        const double w2 = lr[jr] * ls[ks];
        for (int iq = 0; iq < n; ++iq)
          out += lq[iq] * w2 * f[iq + n * (jr + n * ks)];
      }
    return out;
  };

  std::array<double, 3> qrs{0.5, 0.5, 0.5};
  std::vector<double> lq(n), lr(n), ls(n);
  const double scale = std::max({d[1] - d[0], d[3] - d[2], d[5] - d[4]});
  for (int it = 0; it < 50; ++it) {
    auto xp = map_point(e, qrs);
    Eigen::Vector3d res(xp[0] - p[0], xp[1] - p[1], xp[2] - p[2]);
    if (res.norm() < 1e-12 * scale) break;
    basis_values(op, qrs[0], lq.data());
    basis_values(op, qrs[1], lr.data());
    basis_values(op, qrs[2], ls.data());
    Eigen::Matrix3d jac;
    for (int c = 0; c < 3; ++c)
      for (int a = 0; a < 3; ++a)
        jac(c, a) = interp(dcov[c][a], lq.data(), lr.data(), ls.data());
    Eigen::Vector3d step = jac.partialPivLu().solve(res);
    double damp = 1.0;
    const double maxstep = step.cwiseAbs().maxCoeff();
    if (maxstep > 0.5) damp = 0.5 / maxstep;
    for (int a = 0; a < 3; ++a)
      qrs[a] = std::clamp(qrs[a] - damp * step[a], -0.2, 1.2);
  }
  auto xp = map_point(e, qrs);
  const double err = std::sqrt((xp[0] - p[0]) * (xp[0] - p[0]) +
                               (xp[1] - p[1]) * (xp[1] - p[1]) +
                               (xp[2] - p[2]) * (xp[2] - p[2]));
  if (err > 1e-9 * scale)
    throw MeshError("mapping inversion did not converge for point");
  for (int a = 0; a < 3; ++a) qrs[a] = std::clamp(qrs[a], 0.0, 1.0);
  return {e, qrs};
}

}  // namespace elastodg
