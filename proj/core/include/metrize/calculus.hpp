#pragma once

#include <array>
#include <span>

#include "metrize/fields.hpp"

namespace metrize {

/// Small dense containers for pointwise tensor values, n <= 4.
struct VecN {
  int n = 0;
  std::array<double, 4> c{};
  double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
};

struct MatN {
  int n = 0;
  std::array<double, 16> c{};
  double& at(int i, int j) { return c[static_cast<std::size_t>(i * 4 + j)]; }
  double at(int i, int j) const { return c[static_cast<std::size_t>(i * 4 + j)]; }
};

struct TenN {
  int n = 0;
  std::array<double, 64> c{};
  double& at(int i, int j, int k) {
    return c[static_cast<std::size_t>((i * 4 + j) * 4 + k)];
  }
  double at(int i, int j, int k) const {
    return c[static_cast<std::size_t>((i * 4 + j) * 4 + k)];
  }
};

double det(const MatN& m);

/// Inverse by Gaussian elimination with partial pivoting; throws
/// SingularMetric when |det| <= 1e-12.
MatN invert(const MatN& m);

/// Christoffel symbols of `g` at `point`:
///   Gamma^i_jk = (1/2) g^{is} (d_j g_sk + d_k g_sj - d_s g_jk).
/// Symmetric in the lower indices exactly. Throws SingularMetric.
TenN christoffel(const MetricField& g, std::span<const double> point);

/// Max-abs residual of the defining decomposition
///   d_k g_ij - g_is Gamma^s_jk - g_js Gamma^s_ik
/// at `point` (zero to roundoff for exact jets).
double christoffel_residual(const MetricField& g, std::span<const double> point);

/// Lie derivative of a (0,2)-tensor field along xi:
///   (d_p g_kl) xi^p + g_il d_k xi^i + g_kj d_l xi^j.
MatN lie_derivative_metric(const MetricField& g, const VectorField& xi,
                           std::span<const double> point);

/// Lie derivative of a connection along lam, the (1,2)-tensor with
/// components
///   -(d_s lam^i) G^s_jk + (d_j lam^s) G^i_sk + (d_k lam^m) G^i_jm
///   + (d_q G^i_jk) lam^q + dd_jk lam^i.
TenN lie_derivative_connection(const ConnectionField& conn, const VectorField& lam,
                               std::span<const double> point);

/// Covariant derivative (nabla_xi zeta)^i = xi^k (d_k zeta^i + G^i_kl zeta^l).
VecN covariant_derivative(const ConnectionField& conn, const VectorField& xi,
                          const VectorField& zeta, std::span<const double> point);

/// Commutator [xi, zeta]^i = xi^k d_k zeta^i - zeta^k d_k xi^i.
VecN lie_bracket(const VectorField& xi, const VectorField& zeta,
                 std::span<const double> point);

/// Components of the connection associated with `conn` by the
/// diffeomorphism `alpha`, evaluated at a domain-chart point:
///   G'^k_ij(y) = Jinv^k_s ( J^a_i J^b_j G^s_ab(alpha(y)) + H^s_ij )
/// with J the Jacobian of alpha.forward, H its second derivatives and
/// Jinv the Jacobian of alpha.inverse at alpha(y). Throws NonInvertible
/// when |det J| <= 1e-12.
TenN transform_connection(const ConnectionField& conn, const Diffeo& alpha,
                          std::span<const double> point);

/// Pullback (Dalpha)^T g(alpha(p)) (Dalpha) at a domain-chart point.
MatN pullback_metric(const MetricField& g, const Diffeo& alpha,
                     std::span<const double> point);

/// Pushforward of a codomain-chart vector field to the domain chart:
/// components Jinv^i_a xi^a, both evaluated at alpha.forward(point).
VecN pushforward(const VectorField& xi, const Diffeo& alpha,
                 std::span<const double> point);

/// Connection field whose components are the Christoffel symbols of `g`.
/// Component fields have exact_order one less than the metric's.
ConnectionField christoffel_field(const MetricField& g);

namespace detail {

/// Lie-derivative cores on pre-evaluated jets, shared by the pointwise
/// operations and the grid sweeps. `conn_jets` is i-major with the lower
/// pair packed (j <= k); `g_jets` is packed (i <= j).
TenN lie_connection_from_jets(const Jet2* conn_jets, const Jet2* lam_jets, int n);
MatN lie_metric_from_jets(const Jet2* g_jets, const Jet2* xi_jets, int n);

}  // namespace detail

/// Pullback of `g` by `alpha` as a field on the domain chart
/// (exact_order 1: values and first derivatives).
MetricField pullback_metric_field(const MetricField& g, const Diffeo& alpha);

}  // namespace metrize
