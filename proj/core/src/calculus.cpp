#include "metrize/calculus.hpp"

#include <cmath>
#include <limits>

#include "metrize/errors.hpp"

namespace metrize {

namespace {

constexpr double kDegenerate = 1e-12;

struct LU {
  int n;
  std::array<std::array<double, 4>, 4> a;
};

// Jets of all unique metric components at a point.
struct MetricJets {
  int n;
  std::array<Jet2, 10> comp;  // packed (i <= j)
  const Jet2& at(int i, int j) const {
    return comp[static_cast<std::size_t>(Jet2::tri_index(i, j))];
  }
};

MetricJets eval_metric(const MetricField& g, std::span<const double> p) {
  MetricJets m;
  m.n = g.dim();
  for (int j = 0; j < m.n; ++j)
    for (int i = 0; i <= j; ++i)
      m.comp[static_cast<std::size_t>(Jet2::tri_index(i, j))] = g.at(i, j).jet(p);
  return m;
}

// Gamma^i_jk and, if `grad` non-null, d_q Gamma^i_jk. Requires metric jets;
// the gradient path additionally uses the metric Hessians.
void christoffel_impl(const MetricJets& m, TenN& gamma,
                      std::array<TenN, 4>* grad = nullptr) {
  const int n = m.n;
  MatN gv;
  gv.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gv.at(i, j) = m.at(i, j).value();
  const MatN ginv = invert(gv);

  gamma.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        double sum = 0;
        for (int s = 0; s < n; ++s)
          sum += ginv.at(i, s) *
                 (m.at(s, k).d(j) + m.at(s, j).d(k) - m.at(j, k).d(s));
        gamma.at(i, j, k) = 0.5 * sum;
        gamma.at(i, k, j) = gamma.at(i, j, k);
      }

  if (!grad) return;

  // d_q g^{is} = -g^{ia} (d_q g_ab) g^{bs}
  std::array<MatN, 4> dginv;
  for (int q = 0; q < n; ++q) {
    dginv[static_cast<std::size_t>(q)].n = n;
    for (int i = 0; i < n; ++i)
      for (int s = 0; s < n; ++s) {
        double sum = 0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            sum -= ginv.at(i, a) * m.at(a, b).d(q) * ginv.at(b, s);
        dginv[static_cast<std::size_t>(q)].at(i, s) = sum;
      }
  }
  for (int q = 0; q < n; ++q) {
    TenN* out = &(*grad)[static_cast<std::size_t>(q)];
    out->n = n;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) {
          double sum = 0;
          for (int s = 0; s < n; ++s) {
            sum += dginv[static_cast<std::size_t>(q)].at(i, s) *
                   (m.at(s, k).d(j) + m.at(s, j).d(k) - m.at(j, k).d(s));
            sum += ginv.at(i, s) *
                   (m.at(s, k).dd(j, q) + m.at(s, j).dd(k, q) - m.at(j, k).dd(s, q));
          }
          out->at(i, j, k) = 0.5 * sum;
          out->at(i, k, j) = out->at(i, j, k);
        }
  }
}

}  // namespace

double det(const MatN& m) {
  const int n = m.n;
  if (n < 1 || n > 4) throw InvalidArgument("det: dimension out of range");
  std::array<std::array<double, 4>, 4> a{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m.at(i, j);
  double d = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int row = col + 1; row < n; ++row)
      if (std::abs(a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]) >
          std::abs(a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]))
        piv = row;
    if (a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)] == 0.0) return 0.0;
    if (piv != col) {
      std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(col)]);
      d = -d;
    }
    d *= a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    for (int row = col + 1; row < n; ++row) {
      const double f = a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] /
                       a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
      for (int j = col; j < n; ++j)
        a[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] -=
            f * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
    }
  }
  return d;
}

MatN invert(const MatN& m) {
  const int n = m.n;
  if (n < 1 || n > 4) throw InvalidArgument("invert: dimension out of range");
  if (std::abs(det(m)) <= kDegenerate)
    throw SingularMetric("matrix is singular (|det| <= 1e-12)");
  // Gauss-Jordan with partial pivoting on [A | I]
  std::array<std::array<double, 8>, 4> a{};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m.at(i, j);
    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + i)] = 1.0;
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int row = col + 1; row < n; ++row)
      if (std::abs(a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]) >
          std::abs(a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]))
        piv = row;
    if (piv != col) std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(col)]);
    const double p = a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    for (int j = 0; j < 2 * n; ++j) a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)] /= p;
    for (int row = 0; row < n; ++row) {
      if (row == col) continue;
      const double f = a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
      if (f == 0.0) continue;
      for (int j = 0; j < 2 * n; ++j)
        a[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] -=
            f * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
    }
  }
  MatN out;
  out.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.at(i, j) = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + j)];
  return out;
}

TenN christoffel(const MetricField& g, std::span<const double> point) {
  if (g.exact_order() < 1)
    throw InvalidArgument("christoffel needs first derivatives of the metric");
  const MetricJets m = eval_metric(g, point);
  TenN gamma;
  christoffel_impl(m, gamma);
  return gamma;
}

double christoffel_residual(const MetricField& g, std::span<const double> point) {
  const MetricJets m = eval_metric(g, point);
  TenN gamma;
  christoffel_impl(m, gamma);
  const int n = m.n;
  double worst = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double r = m.at(i, j).d(k);
        for (int s = 0; s < n; ++s)
          r -= m.at(i, s).value() * gamma.at(s, j, k) +
               m.at(j, s).value() * gamma.at(s, i, k);
        worst = std::max(worst, std::abs(r));
      }
  return worst;
}

namespace detail {

MatN lie_metric_from_jets(const Jet2* g_jets, const Jet2* xi_jets, int n) {
  auto gj = [&](int i, int j) -> const Jet2& { return g_jets[Jet2::tri_index(i, j)]; };
  MatN out;
  out.n = n;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      double sum = 0;
      for (int p = 0; p < n; ++p) sum += gj(k, l).d(p) * xi_jets[p].value();
      for (int i = 0; i < n; ++i) sum += gj(i, l).value() * xi_jets[i].d(k);
      for (int j = 0; j < n; ++j) sum += gj(k, j).value() * xi_jets[j].d(l);
      out.at(k, l) = sum;
    }
  return out;
}

TenN lie_connection_from_jets(const Jet2* conn_jets, const Jet2* lam_jets, int n) {
  const int tri = Jet2::tri_count(n);
  auto cv = [&](int i, int j, int k) -> const Jet2& {
    return conn_jets[i * tri + Jet2::tri_index(j, k)];
  };
  TenN out;
  out.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        double sum = lam_jets[i].dd(j, k);
        for (int s = 0; s < n; ++s) {
          sum -= lam_jets[i].d(s) * cv(s, j, k).value();
          sum += lam_jets[s].d(j) * cv(i, s, k).value();
          sum += lam_jets[s].d(k) * cv(i, j, s).value();
          sum += cv(i, j, k).d(s) * lam_jets[s].value();
        }
        out.at(i, j, k) = sum;
        out.at(i, k, j) = sum;
      }
  return out;
}

}  // namespace detail

MatN lie_derivative_metric(const MetricField& g, const VectorField& xi,
                           std::span<const double> point) {
  const int n = g.dim();
  const MetricJets m = eval_metric(g, point);
  std::array<Jet2, 4> x;
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = xi.at(i).jet(point);
  return detail::lie_metric_from_jets(m.comp.data(), x.data(), n);
}

TenN lie_derivative_connection(const ConnectionField& conn, const VectorField& lam,
                               std::span<const double> point) {
  if (conn.exact_order() < 1)
    throw InvalidArgument("lie_derivative_connection needs connection first derivatives");
  const int n = conn.dim();
  const int tri = Jet2::tri_count(n);
  std::array<Jet2, 4> l;
  for (int i = 0; i < n; ++i) l[static_cast<std::size_t>(i)] = lam.at(i).jet(point);
  std::array<Jet2, 40> c;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k)
        c[static_cast<std::size_t>(i * tri + Jet2::tri_index(j, k))] =
            conn.at(i, j, k).jet(point);
  return detail::lie_connection_from_jets(c.data(), l.data(), n);
}

VecN covariant_derivative(const ConnectionField& conn, const VectorField& xi,
                          const VectorField& zeta, std::span<const double> point) {
  const int n = conn.dim();
  VecN out;
  out.n = n;
  std::array<double, 4> xv{};
  std::array<Jet2, 4> z;
  for (int i = 0; i < n; ++i) {
    xv[static_cast<std::size_t>(i)] = xi.at(i).value(point);
    z[static_cast<std::size_t>(i)] = zeta.at(i).jet(point);
  }
  for (int i = 0; i < n; ++i) {
    double sum = 0;
    for (int k = 0; k < n; ++k) {
      double inner = z[static_cast<std::size_t>(i)].d(k);
      for (int l = 0; l < n; ++l)
        inner += conn.at(i, k, l).value(point) * z[static_cast<std::size_t>(l)].value();
      sum += xv[static_cast<std::size_t>(k)] * inner;
    }
    out[i] = sum;
  }
  return out;
}

VecN lie_bracket(const VectorField& xi, const VectorField& zeta,
                 std::span<const double> point) {
  const int n = xi.dim();
  std::array<Jet2, 4> x, z;
  for (int i = 0; i < n; ++i) {
    x[static_cast<std::size_t>(i)] = xi.at(i).jet(point);
    z[static_cast<std::size_t>(i)] = zeta.at(i).jet(point);
  }
  VecN out;
  out.n = n;
  for (int i = 0; i < n; ++i) {
    double sum = 0;
    for (int k = 0; k < n; ++k)
      sum += x[static_cast<std::size_t>(k)].value() * z[static_cast<std::size_t>(i)].d(k) -
             z[static_cast<std::size_t>(k)].value() * x[static_cast<std::size_t>(i)].d(k);
    out[i] = sum;
  }
  return out;
}

namespace {

struct ForwardJets {
  int n;
  std::array<Jet2, 4> f;     // codomain coords as jets of domain coords
  std::array<double, 4> x;   // codomain point values
};

ForwardJets eval_forward(const Diffeo& alpha, std::span<const double> point) {
  ForwardJets fw;
  fw.n = alpha.dim();
  for (int a = 0; a < fw.n; ++a) {
    fw.f[static_cast<std::size_t>(a)] = alpha.forward[static_cast<std::size_t>(a)].jet(point);
    fw.x[static_cast<std::size_t>(a)] = fw.f[static_cast<std::size_t>(a)].value();
  }
  return fw;
}

MatN forward_jacobian(const ForwardJets& fw) {
  MatN j;
  j.n = fw.n;
  for (int a = 0; a < fw.n; ++a)
    for (int i = 0; i < fw.n; ++i) j.at(a, i) = fw.f[static_cast<std::size_t>(a)].d(i);
  return j;
}

MatN inverse_jacobian_at(const Diffeo& alpha, std::span<const double> x) {
  MatN j;
  j.n = alpha.dim();
  for (int k = 0; k < j.n; ++k) {
    const Jet2 inv = alpha.inverse[static_cast<std::size_t>(k)].jet(x);
    for (int s = 0; s < j.n; ++s) j.at(k, s) = inv.d(s);
  }
  return j;
}

}  // namespace

TenN transform_connection(const ConnectionField& conn, const Diffeo& alpha,
                          std::span<const double> point) {
  const int n = alpha.dim();
  const ForwardJets fw = eval_forward(alpha, point);
  const MatN jac = forward_jacobian(fw);
  if (std::abs(det(jac)) <= kDegenerate)
    throw NonInvertible("diffeomorphism Jacobian is singular at the point");
  const std::span<const double> x(fw.x.data(), static_cast<std::size_t>(n));
  const MatN jinv = inverse_jacobian_at(alpha, x);

  TenN src;
  src.n = n;
  for (int s = 0; s < n; ++s)
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        src.at(s, a, b) = conn.at(s, a, b).value(x);
        src.at(s, b, a) = src.at(s, a, b);
      }

  TenN out;
  out.n = n;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double sum = 0;
        for (int s = 0; s < n; ++s) {
          double inner = fw.f[static_cast<std::size_t>(s)].dd(i, j);
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
              inner += jac.at(a, i) * jac.at(b, j) * src.at(s, a, b);
          sum += jinv.at(k, s) * inner;
        }
        out.at(k, i, j) = sum;
        out.at(k, j, i) = sum;
      }
  return out;
}

MatN pullback_metric(const MetricField& g, const Diffeo& alpha,
                     std::span<const double> point) {
  const int n = alpha.dim();
  const ForwardJets fw = eval_forward(alpha, point);
  const MatN jac = forward_jacobian(fw);
  const std::span<const double> x(fw.x.data(), static_cast<std::size_t>(n));
  MatN gx;
  gx.n = n;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      gx.at(a, b) = g.at(a, b).value(x);
      gx.at(b, a) = gx.at(a, b);
    }
  MatN out;
  out.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double sum = 0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) sum += jac.at(a, i) * gx.at(a, b) * jac.at(b, j);
      out.at(i, j) = sum;
    }
  return out;
}

VecN pushforward(const VectorField& xi, const Diffeo& alpha,
                 std::span<const double> point) {
  const int n = alpha.dim();
  const ForwardJets fw = eval_forward(alpha, point);
  const std::span<const double> x(fw.x.data(), static_cast<std::size_t>(n));
  const MatN jinv = inverse_jacobian_at(alpha, x);
  VecN out;
  out.n = n;
  for (int i = 0; i < n; ++i) {
    double sum = 0;
    for (int a = 0; a < n; ++a) sum += jinv.at(i, a) * xi.at(a).value(x);
    out[i] = sum;
  }
  return out;
}

ConnectionField christoffel_field(const MetricField& g) {
  const int n = g.dim();
  if (g.exact_order() < 1)
    throw InvalidArgument("christoffel_field needs first derivatives of the metric");
  const int order = g.exact_order() >= 2 ? 1 : 0;
  ConnectionField conn(g.chart_id(), n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        auto fn = [g, i, j, k, n, order](std::span<const Jet2> args) {
          std::array<double, 4> pt{};
          for (int q = 0; q < n; ++q) {
            if (args[static_cast<std::size_t>(q)].dim() > 0 &&
                !args[static_cast<std::size_t>(q)].is_seed(q))
              throw InvalidArgument("christoffel fields support direct evaluation only");
            pt[static_cast<std::size_t>(q)] = args[static_cast<std::size_t>(q)].value();
          }
          const std::span<const double> p(pt.data(), static_cast<std::size_t>(n));
          const int jdim = args[0].dim();
          const MetricJets m = eval_metric(g, p);
          TenN gamma;
          Jet2 out = Jet2::constant(0.0, jdim);
          const double nan = std::numeric_limits<double>::quiet_NaN();
          if (jdim == 0 || order == 0) {
            christoffel_impl(m, gamma);
            out.set_value(gamma.at(i, j, k));
            if (jdim > 0 && order == 0)
              for (int q = 0; q < jdim; ++q) out.mutable_d(q) = nan;
          } else {
            std::array<TenN, 4> grad;
            christoffel_impl(m, gamma, &grad);
            out.set_value(gamma.at(i, j, k));
            for (int q = 0; q < n; ++q)
              out.mutable_d(q) = grad[static_cast<std::size_t>(q)].at(i, j, k);
          }
          if (jdim > 0)
            for (int q = 0; q < jdim; ++q)
              for (int w = q; w < jdim; ++w) out.mutable_dd(q, w) = nan;
          return out;
        };
        ScalarField f = ScalarField::native(g.chart_id(), fn, order);
        conn.set(i, j, k, f);
      }
  return conn;
}

MetricField pullback_metric_field(const MetricField& g, const Diffeo& alpha) {
  const int n = alpha.dim();
  MetricField out(alpha.domain, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      auto fn = [g, alpha, i, j, n](std::span<const Jet2> args) {
        std::array<double, 4> pt{};
        for (int q = 0; q < n; ++q) {
          if (args[static_cast<std::size_t>(q)].dim() > 0 &&
              !args[static_cast<std::size_t>(q)].is_seed(q))
            throw InvalidArgument("pullback fields support direct evaluation only");
          pt[static_cast<std::size_t>(q)] = args[static_cast<std::size_t>(q)].value();
        }
        const std::span<const double> p(pt.data(), static_cast<std::size_t>(n));
        const int jdim = args[0].dim();
        const ForwardJets fw = eval_forward(alpha, p);
        const std::span<const double> x(fw.x.data(), static_cast<std::size_t>(n));
        const MetricJets m = eval_metric(g, x);
        const auto& f = fw.f;
        // value: J^a_i g_ab J^b_j
        double val = 0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            val += f[static_cast<std::size_t>(a)].d(i) * m.at(a, b).value() *
                   f[static_cast<std::size_t>(b)].d(j);
        Jet2 out_jet = Jet2::constant(val, jdim);
        const double nan = std::numeric_limits<double>::quiet_NaN();
        if (jdim > 0) {
          for (int k = 0; k < n; ++k) {
            double dk = 0;
            for (int a = 0; a < n; ++a)
              for (int b = 0; b < n; ++b) {
                dk += f[static_cast<std::size_t>(a)].dd(i, k) * m.at(a, b).value() *
                      f[static_cast<std::size_t>(b)].d(j);
                dk += f[static_cast<std::size_t>(a)].d(i) * m.at(a, b).value() *
                      f[static_cast<std::size_t>(b)].dd(j, k);
                double dgk = 0;
                for (int c = 0; c < n; ++c)
                  dgk += m.at(a, b).d(c) * f[static_cast<std::size_t>(c)].d(k);
                dk += f[static_cast<std::size_t>(a)].d(i) * dgk *
                      f[static_cast<std::size_t>(b)].d(j);
              }
            out_jet.mutable_d(k) = dk;
          }
          for (int q = 0; q < jdim; ++q)
            for (int w = q; w < jdim; ++w) out_jet.mutable_dd(q, w) = nan;
        }
        return out_jet;
      };
      out.set(i, j, ScalarField::native(alpha.domain, fn, 1));
    }
  return out;
}

}  // namespace metrize
