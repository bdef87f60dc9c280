#include "elastodg/riemann.hpp"

#include <cmath>
#include <string>

#include "elastodg/errors.hpp"

namespace elastodg {

HatState boundary_hat(int side, double gamma, double z, double v, double t) {
  if (std::abs(gamma) > 1.0)
    throw ConfigError("reflection coefficient must satisfy |gamma| <= 1, got " +
                      std::to_string(gamma));
  const auto [q, p] = characteristics(z, v, t);
  if (side == 0) {
    // outgoing characteristic q is preserved
    return {(1.0 + gamma) * q / z, (1.0 - gamma) * q};
  }
  // side 1: outgoing characteristic p is preserved
  return {(1.0 + gamma) * p / z, -(1.0 - gamma) * p};
}

InterfaceHats interface_hat(double z_minus, double v_minus, double t_minus,
                            double z_plus, double v_plus, double t_plus) {
  const double q_plus = 0.5 * (z_plus * v_plus + t_plus);    // outgoing at side 0
  const double p_minus = 0.5 * (z_minus * v_minus - t_minus);  // outgoing at side 1
  const double alpha = z_plus * z_minus / (z_plus + z_minus);
  const double phi = alpha * (2.0 * q_plus / z_plus - 2.0 * p_minus / z_minus);
  InterfaceHats h;
  h.minus.t = h.plus.t = phi;
  h.plus.v = (2.0 * p_minus + phi) / z_minus;
  h.minus.v = (2.0 * q_plus - phi) / z_plus;
  return h;
}

double fluctuation(int side, double z, double v, double t, double v_hat,
                   double t_hat) {
  const double dv = 0.5 * z * (v - v_hat);
  const double dt = 0.5 * (t - t_hat);
  return side ? dv + dt : dv - dt;
}

std::array<double, 9> assemble_fluctuation_vector(
    int side, const std::array<double, 3>& n, const std::array<double, 3>& g,
    const std::array<double, 3>& gt) {
  const double s = side ? 1.0 : -1.0;
  return {g[0],
          g[1],
          g[2],
          s * n[0] * gt[0],
          s * n[1] * gt[1],
          s * n[2] * gt[2],
          s * (n[1] * gt[0] + n[0] * gt[1]),
          s * (n[2] * gt[0] + n[0] * gt[2]),
          s * (n[2] * gt[1] + n[1] * gt[2])};
}

}  // namespace elastodg
