#include "elastodg/specops.hpp"

#include <cmath>
#include <cstddef>

#include "elastodg/errors.hpp"

namespace elastodg {

namespace {

// Legendre P_n and P_n' on [-1,1] by the three-term recurrence. The derivative
// formula is valid away from x = +-1, which is all the Newton iterations need.
void legendre(int n, long double x, long double& p, long double& dp) {
  long double p0 = 1.0L;
  long double p1 = x;
  if (n == 0) {
    p = p0;
    dp = 0.0L;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    long double pk = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0L);
}

// Interior Gauss-Lobatto nodes are the roots of P_N'; refine with Newton on
// f = P_N', f' = P_N'' obtained from the Legendre ODE.
long double lobatto_root(int N, long double guess) {
  long double x = guess;
  for (int it = 0; it < 100; ++it) {
    long double p, dp;
    legendre(N, x, p, dp);
    long double d2p = (2.0L * x * dp - (long double)N * (N + 1) * p) /
                      (1.0L - x * x);
    long double dx = dp / d2p;
    x -= dx;
    if (std::fabs(dx) < 1e-19L) break;
  }
  return x;
}

long double gauss_root(int N, long double guess) {
  long double x = guess;
  for (int it = 0; it < 100; ++it) {
    long double p, dp;
    legendre(N, x, p, dp);
    long double dx = p / dp;
    x -= dx;
    if (std::fabs(dx) < 1e-19L) break;
  }
  return x;
}

void check_degree(int degree) {
  if (degree < 1 || degree > kMaxDegree)
    throw ConfigError("polynomial degree must be in [1, " +
                      std::to_string(kMaxDegree) + "], got " +
                      std::to_string(degree));
}

}  // namespace

Quadrature1D build_quadrature(QuadratureRule rule, int degree) {
  check_degree(degree);
  const int n = degree + 1;
  std::vector<long double> x(n), w(n);

  if (rule == QuadratureRule::GaussLobatto) {
    const int N = degree;
    x[0] = -1.0L;
    x[n - 1] = 1.0L;
    for (int i = 1; i < n - 1; ++i)
      x[i] = lobatto_root(N, -std::cos((long double)M_PI * i / N));
    for (int i = 0; i < n; ++i) {
      long double p;
      if (i == 0 || i == n - 1) {
        p = (i == 0 && (N % 2)) ? -1.0L : 1.0L;  // P_N(+-1) = (+-1)^N
      } else {
        long double dp;
        legendre(N, x[i], p, dp);
      }
      w[i] = 2.0L / ((long double)N * (N + 1) * p * p);
    }
  } else {
    const int N = degree + 1;  // roots of P_{degree+1}
    for (int i = 0; i < n; ++i) {
      long double guess =
          -std::cos((long double)M_PI * (4.0L * i + 3.0L) / (4.0L * N + 2.0L));
      x[i] = gauss_root(N, guess);
    }
    for (int i = 0; i < n; ++i) {
      long double p, dp;
      legendre(N, x[i], p, dp);
      w[i] = 2.0L / ((1.0L - x[i] * x[i]) * dp * dp);
    }
  }

  // Enforce the symmetry of the node set exactly; kills asymmetric round-off
  // from independent Newton solves.
  for (int i = 0; i < n / 2; ++i) {
    long double m = 0.5L * (x[i] - x[n - 1 - i]);
    x[i] = m;
    x[n - 1 - i] = -m;
    long double mw = 0.5L * (w[i] + w[n - 1 - i]);
    w[i] = mw;
    w[n - 1 - i] = mw;
  }
  if (n % 2) x[n / 2] = 0.0L;

  Quadrature1D q;
  q.rule = rule;
  q.degree = degree;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    q.nodes[i] = (double)(0.5L * (x[i] + 1.0L));  // map to [0,1]
    q.weights[i] = (double)(0.5L * w[i]);
  }
  return q;
}

SbpOperator1D build_sbp(QuadratureRule rule, int degree) {
  SbpOperator1D op;
  op.quad = build_quadrature(rule, degree);
  op.conditioning_warning = degree > 12;
  const int n = degree + 1;

  // Barycentric weights and the derivative matrix are assembled in extended
  // precision from the stored double nodes, so D is the exact collocation
  // derivative of that node set to double round-off.
  std::vector<long double> xl(n), lam(n);
  for (int i = 0; i < n; ++i) xl[i] = (long double)op.quad.nodes[i];
  for (int j = 0; j < n; ++j) {
    long double prod = 1.0L;
    for (int k = 0; k < n; ++k)
      if (k != j) prod *= (xl[j] - xl[k]);
    lam[j] = 1.0L / prod;
  }
  op.bary.resize(n);
  for (int j = 0; j < n; ++j) op.bary[j] = (double)lam[j];

  op.diff.resize(n, n);
  for (int i = 0; i < n; ++i) {
    long double diag = 0.0L;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      long double dij = (lam[j] / lam[i]) / (xl[i] - xl[j]);
      op.diff(i, j) = (double)dij;
      diag -= dij;
    }
    op.diff(i, i) = (double)diag;
  }

  auto endpoint = [&](long double x, Eigen::VectorXd& e) {
    e.resize(n);
    for (int j = 0; j < n; ++j) {
      if (xl[j] == x) {  // Lobatto endpoints hit exactly
        e.setZero();
        e[j] = 1.0;
        return;
      }
    }
    long double denom = 0.0L;
    for (int j = 0; j < n; ++j) denom += lam[j] / (x - xl[j]);
    for (int j = 0; j < n; ++j)
      e[j] = (double)((lam[j] / (x - xl[j])) / denom);
  };
  endpoint(0.0L, op.e0);
  endpoint(1.0L, op.e1);
  return op;
}

void apply_derivative_3d(const SbpOperator1D& op, int axis, const double* in,
                         double* out) {
  const int n = op.n();
  using Mat = Eigen::MatrixXd;
  using MapC = Eigen::Map<const Mat>;
  using MapM = Eigen::Map<Mat>;
  if (axis == 0) {
    MapC f(in, n, n * n);
    MapM g(out, n, n * n);
    g.noalias() = op.diff * f;
  } else if (axis == 1) {
    for (int k = 0; k < n; ++k) {
      MapC f(in + (std::size_t)k * n * n, n, n);
      MapM g(out + (std::size_t)k * n * n, n, n);
      g.noalias() = f * op.diff.transpose();
    }
  } else {
    MapC f(in, n * n, n);
    MapM g(out, n * n, n);
    g.noalias() = f * op.diff.transpose();
  }
}

void extract_face_3d(const SbpOperator1D& op, int axis, int side,
                     const double* vol, double* face) {
  const int n = op.n();
  const Eigen::VectorXd& e = side ? op.e1 : op.e0;
  using MapC = Eigen::Map<const Eigen::MatrixXd>;
  if (axis == 0) {
    MapC f(vol, n, n * n);
    Eigen::Map<Eigen::VectorXd>(face, n * n).noalias() = f.transpose() * e;
  } else if (axis == 1) {
    for (int k = 0; k < n; ++k) {
      MapC f(vol + (std::size_t)k * n * n, n, n);
      Eigen::Map<Eigen::VectorXd>(face + (std::size_t)k * n, n).noalias() =
          f * e;
    }
  } else {
    MapC f(vol, n * n, n);
    Eigen::Map<Eigen::VectorXd>(face, n * n).noalias() = f * e;
  }
}

void accumulate_face_3d(const SbpOperator1D& op, int axis, int side,
                        const double* face, double* vol) {
  const int n = op.n();
  const Eigen::VectorXd& e = side ? op.e1 : op.e0;
  Eigen::VectorXd eh(n);
  for (int i = 0; i < n; ++i) eh[i] = e[i] / op.quad.weights[i];
  using MapC = Eigen::Map<const Eigen::VectorXd>;
  using MapM = Eigen::Map<Eigen::MatrixXd>;
  if (axis == 0) {
    MapM g(vol, n, n * n);
    g.noalias() += eh * MapC(face, n * n).transpose();
  } else if (axis == 1) {
    for (int k = 0; k < n; ++k) {
      MapM g(vol + (std::size_t)k * n * n, n, n);
      g.noalias() += MapC(face + (std::size_t)k * n, n) * eh.transpose();
    }
  } else {
    MapM g(vol, n * n, n);
    g.noalias() += MapC(face, n * n) * eh.transpose();
  }
}

void basis_values(const SbpOperator1D& op, double x, double* out) {
  const int n = op.n();
  for (int j = 0; j < n; ++j) {
    if (x == op.quad.nodes[j]) {
      for (int k = 0; k < n; ++k) out[k] = 0.0;
      out[j] = 1.0;
      return;
    }
  }
  double denom = 0.0;
  for (int j = 0; j < n; ++j) denom += op.bary[j] / (x - op.quad.nodes[j]);
  for (int j = 0; j < n; ++j)
    out[j] = (op.bary[j] / (x - op.quad.nodes[j])) / denom;
}

}  // namespace elastodg
