#pragma once
// Physics-based penalty flux in characteristic form, one tangent frame channel
// at a time. All quantities live in the local face frame (n, m, l) unless
// stated otherwise; no eigendecomposition anywhere.
//
// Face side semantics follow the positively-pointing normal convention: at a
// side-1 face (reference coordinate = 1) the outgoing characteristic is
// p = (Z v - T)/2, at a side-0 face it is q = (Z v + T)/2.

#include <array>

namespace elastodg {

struct Characteristics {
  double q, p;
};

inline Characteristics characteristics(double z, double v, double t) {
  return {0.5 * (z * v + t), 0.5 * (z * v - t)};
}

struct HatState {
  double v, t;
};

// Boundary closure with reflection coefficient gamma in [-1, 1]:
// +1 free surface, 0 absorbing, -1 clamped. `side` is 0 or 1.
HatState boundary_hat(int side, double gamma, double z, double v, double t);

// Two-sided interface closure. Plus side sits at its side-0 face, minus side
// at its side-1 face; both sides share the frame. Produces a single traction
// and per-side velocities with zero jump.
struct InterfaceHats {
  HatState minus, plus;  // minus.t == plus.t
};
InterfaceHats interface_hat(double z_minus, double v_minus, double t_minus,
                            double z_plus, double v_plus, double t_plus);

// Fluctuation G seen by the element owning the trace (v, t) against hats:
// side 1: G = Z(v - v_hat)/2 + (t - t_hat)/2, side 0 flips the traction sign.
double fluctuation(int side, double z, double v, double t, double v_hat,
                   double t_hat);

// Nine-component penalty vector from the back-rotated fluctuations g (velocity
// rows) and g_tilde (traction rows), with the face unit normal. side selects
// the sign of the stress block: -1 factors at side 0, +1 at side 1.
std::array<double, 9> assemble_fluctuation_vector(
    int side, const std::array<double, 3>& n, const std::array<double, 3>& g,
    const std::array<double, 3>& g_tilde);

}  // namespace elastodg
