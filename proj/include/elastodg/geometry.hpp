#pragma once
// Structured topography-conforming hexahedral meshes with curvilinear metric
// data.
//
// Elements map the reference cube [0,1]^3 to physical space. The vertical (y)
// coordinate is a shear blend between a possibly curved top surface at the
// y-min side and the flat y-max plane; x and z are uniform partitions.
// Contravariant metric rows are built in curl form from the same collocation
// derivative used by the solver, so the discrete identities
// sum_xi D_xi (J xi_x) = 0 hold to round-off on any mapping.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "elastodg/specops.hpp"

namespace elastodg {

struct TopographySurface {
  int nx = 0, nz = 0;
  double spacing = 0.0;
  std::vector<double> elevation;  // row-major, x fastest

  // Bilinear interpolation in grid coordinates anchored at (0,0); queries
  // outside the grid clamp to the boundary.
  double operator()(double x, double z) const;
};

// File format: first line "nx nz spacing_m", then nx*nz elevations in row-major
// order (x fastest). Parse errors carry 1-based line numbers.
TopographySurface ingest_topography(const std::string& path);

// One face of one element, nodes in the face layout of specops. Normals follow
// the positively-pointing convention n = +grad(xi)/|grad(xi)| on both sides of
// the axis, so the two outward normals of a conforming face are antiparallel
// while the stored vectors coincide.
struct FaceData {
  std::vector<std::array<double, 3>> normal;
  std::vector<double> scale;  // |(J xi_x, J xi_y, J xi_z)| surface scaling
};

struct ElementGeometry {
  std::vector<double> x, y, z;  // nodal coordinates
  std::vector<double> jac;      // J > 0
  // met[3*a + c] = J * d(xi_a)/d(x_c), xi = (q,r,s), x_c = (x,y,z)
  std::array<std::vector<double>, 9> met;
  std::array<FaceData, 6> face;  // -q,+q,-r,+r,-s,+s
};

struct MeshSpec {
  int nx = 1, ny = 1, nz = 1;
  std::array<double, 6> domain{0, 1, 0, 1, 0, 1};  // xmin xmax ymin ymax ...
  std::array<bool, 3> periodic{false, false, false};
  // Optional curved top at the y-min side; must stay below the y-max plane.
  std::function<double(double, double)> top_surface;
};

struct Mesh {
  MeshSpec spec;
  SbpOperator1D op;
  std::vector<ElementGeometry> elems;
  double metric_identity_residual = 0.0;  // max |sum_xi D_xi(J xi_c)|, scaled
  double watertight_residual = 0.0;       // max mismatch of conforming faces

  int nelem() const { return spec.nx * spec.ny * spec.nz; }
  int npe() const {
    const int n = op.n();
    return n * n * n;
  }
  int elem_index(int i, int j, int k) const {
    return i + spec.nx * (j + spec.ny * k);
  }
  std::array<int, 3> elem_ijk(int e) const;
  // Neighbor across local face f (0..5), honoring periodic wrap; -1 at a
  // domain boundary. boundary_id(e,f) is the domain face index (== f).
  int neighbor(int e, int f) const;

  // Physical location -> element + reference coordinates. Points on shared
  // faces resolve to the lower element index. Newton on the interpolated
  // mapping, tol 1e-12, at most 50 iterations.
  struct Location {
    int elem;
    std::array<double, 3> qrs;
  };
  Location locate(const std::array<double, 3>& p) const;

  // Interpolate nodal coordinates of element e at reference point qrs.
  std::array<double, 3> map_point(int e, const std::array<double, 3>& qrs) const;
};

// Orthonormal face frame with rows (n, m, l): m is e_y projected off n
// (fallback e_z when |n.e_y| > 0.99), l = n x m.
void face_rotation_basis(const std::array<double, 3>& n,
                         std::array<std::array<double, 3>, 3>& rot);

Mesh build_mesh(const MeshSpec& spec, QuadratureRule rule, int degree);

}  // namespace elastodg
