#include "identities.hpp"

#include <cmath>
#include <random>

#include "metrize/calculus.hpp"
#include "metrize/errors.hpp"
#include "metrize/metrizability.hpp"
#include "metrize/so3.hpp"

namespace metrize::cli {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Worst {
  double value = -1;
  std::array<double, 4> point{};
  int dim = 0;
  std::string detail;

  void feed(double v, std::span<const double> p, const std::string& what) {
    if (std::abs(v) <= value) return;
    value = std::abs(v);
    dim = static_cast<int>(p.size());
    for (int i = 0; i < dim; ++i) point[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i)];
    detail = what;
  }
};

CheckEntry finish(const std::string& name, const Worst& w, double tol) {
  CheckEntry e;
  e.name = name;
  e.max_residual = w.value < 0 ? 0 : w.value;
  e.tolerance = tol;
  e.pass = e.max_residual <= tol;
  e.witness = w.point;
  e.witness_dim = w.dim;
  e.detail = w.detail;
  return e;
}

std::array<double, 3> random_sph_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ur(0.6, 2.8);
  std::uniform_real_distribution<double> ut(0.3, kPi - 0.3);
  std::uniform_real_distribution<double> up(0.2, 2.0 * kPi - 0.2);
  return {ur(rng), ut(rng), up(rng)};
}

std::vector<VectorField> field_corpus() {
  const ChartId ch = ChartId::Sph3First;
  auto vf = [&](const char* a, const char* b, const char* c) {
    VectorField v(ch, 3);
    v.set(0, ScalarField::from_expr(ch, a));
    v.set(1, ScalarField::from_expr(ch, b));
    v.set(2, ScalarField::from_expr(ch, c));
    return v;
  };
  std::vector<VectorField> out;
  out.push_back(vf("r", "0", "0"));
  out.push_back(vf("r^2", "sin(theta)", "cos(phi)"));
  out.push_back(vf("sin(r)", "theta*phi/10", "1/r"));
  out.push_back(vf("0", "-sin(phi)", "-cot(theta)*cos(phi)"));
  out.push_back(vf("exp(r/3)", "cos(theta)*r", "theta/2"));
  out.push_back(vf("log(r+1)", "phi/5", "r*sin(theta)"));
  return out;
}

std::vector<ConnectionField> connection_corpus() {
  std::vector<ConnectionField> out;
  {
    Profile3D p;
    p.a111 = ScalarField::zero(ChartId::Radial);
    p.a122 = ScalarField::from_expr(ChartId::Radial, "-r");
    p.a212 = ScalarField::from_expr(ChartId::Radial, "1/r");
    p.a = ScalarField::zero(ChartId::Radial);
    out.push_back(make_invariant_connection_3d(p));
  }
  {
    Profile3D p;
    p.a111 = ScalarField::from_expr(ChartId::Radial, "sin(r)/4");
    p.a122 = ScalarField::from_expr(ChartId::Radial, "r^2");
    p.a212 = ScalarField::from_expr(ChartId::Radial, "1/(2*r)");
    p.a = ScalarField::from_expr(ChartId::Radial, "2/r");
    out.push_back(make_invariant_connection_3d(p));
  }
  {
    // not invariant; the identity holds for any symmetric connection
    const ChartId ch = ChartId::Sph3First;
    ConnectionField c(ch, 3);
    c.set(0, 0, 0, ScalarField::from_expr(ch, "r*sin(theta)"));
    c.set(0, 1, 2, ScalarField::from_expr(ch, "cos(phi)/r"));
    c.set(1, 0, 1, ScalarField::from_expr(ch, "theta"));
    c.set(2, 1, 2, ScalarField::from_expr(ch, "r + phi/10"));
    c.set(1, 2, 2, ScalarField::from_expr(ch, "sin(theta)*cos(theta)"));
    out.push_back(c);
  }
  return out;
}

// value and first derivatives of a vector field at a point
struct FieldJets {
  std::array<Jet2, 4> c;
  double v(int i) const { return c[static_cast<std::size_t>(i)].value(); }
  double d(int i, int q) const { return c[static_cast<std::size_t>(i)].d(q); }
  double dd(int i, int q, int w) const { return c[static_cast<std::size_t>(i)].dd(q, w); }
};

FieldJets eval_field(const VectorField& f, std::span<const double> p) {
  FieldJets out;
  for (int i = 0; i < f.dim(); ++i) out.c[static_cast<std::size_t>(i)] = f.at(i).jet(p);
  return out;
}

// The global identity evaluated from the right-hand side:
//   d_xi(nabla(zeta, lam)) - nabla(d_xi zeta, lam) - nabla(zeta, d_xi lam),
// assembled from jets of the three fields and first derivatives of the
// connection, independently of the closed-form Lie-derivative coefficient.
std::array<double, 4> lemma1_rhs(const ConnectionField& conn, const FieldJets& xi,
                                 const FieldJets& zeta, const FieldJets& lam,
                                 std::span<const double> p) {
  const int n = conn.dim();
  // connection jets
  double G[4][4][4];
  double dG[4][4][4][4];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Jet2 cj = conn.at(i, j, k).jet(p);
        G[i][j][k] = cj.value();
        for (int q = 0; q < n; ++q) dG[i][j][k][q] = cj.d(q);
      }
  // W = nabla_zeta(lam), with first derivatives
  double w[4], dw[4][4];
  for (int i = 0; i < n; ++i) {
    w[i] = 0;
    for (int k = 0; k < n; ++k) {
      double inner = lam.d(i, k);
      for (int l = 0; l < n; ++l) inner += G[i][k][l] * lam.v(l);
      w[i] += zeta.v(k) * inner;
    }
    for (int q = 0; q < n; ++q) {
      double s = 0;
      for (int k = 0; k < n; ++k) {
        double inner = lam.d(i, k);
        for (int l = 0; l < n; ++l) inner += G[i][k][l] * lam.v(l);
        s += zeta.d(k, q) * inner;
        double dinner = lam.dd(i, k, q);
        for (int l = 0; l < n; ++l)
          dinner += dG[i][k][l][q] * lam.v(l) + G[i][k][l] * lam.d(l, q);
        s += zeta.v(k) * dinner;
      }
      dw[i][q] = s;
    }
  }
  // brackets with first derivatives where needed
  double bz[4];   // [xi, zeta]
  double bl[4];   // [xi, lam]
  double dbl[4][4];
  for (int i = 0; i < n; ++i) {
    bz[i] = 0;
    bl[i] = 0;
    for (int k = 0; k < n; ++k) {
      bz[i] += xi.v(k) * zeta.d(i, k) - zeta.v(k) * xi.d(i, k);
      bl[i] += xi.v(k) * lam.d(i, k) - lam.v(k) * xi.d(i, k);
    }
    for (int q = 0; q < n; ++q) {
      double s = 0;
      for (int k = 0; k < n; ++k)
        s += xi.d(k, q) * lam.d(i, k) + xi.v(k) * lam.dd(i, k, q) -
             lam.d(k, q) * xi.d(i, k) - lam.v(k) * xi.dd(i, k, q);
      dbl[i][q] = s;
    }
  }
  std::array<double, 4> rhs{};
  for (int i = 0; i < n; ++i) {
    // [xi, W]
    double t1 = 0;
    for (int q = 0; q < n; ++q) t1 += xi.v(q) * dw[i][q] - w[q] * xi.d(i, q);
    // nabla_{[xi,zeta]}(lam)
    double t2 = 0;
    for (int k = 0; k < n; ++k) {
      double inner = lam.d(i, k);
      for (int l = 0; l < n; ++l) inner += G[i][k][l] * lam.v(l);
      t2 += bz[k] * inner;
    }
    // nabla_zeta([xi, lam])
    double t3 = 0;
    for (int k = 0; k < n; ++k) {
      double inner = dbl[i][k];
      for (int l = 0; l < n; ++l) inner += G[i][k][l] * bl[l];
      t3 += zeta.v(k) * inner;
    }
    rhs[static_cast<std::size_t>(i)] = t1 - t2 - t3;
  }
  return rhs;
}

CheckEntry suite_lemma1(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 2654435761u + 1);
  const auto fields = field_corpus();
  const auto conns = connection_corpus();
  std::uniform_int_distribution<std::size_t> pick(0, fields.size() - 1);
  std::uniform_int_distribution<std::size_t> pickc(0, conns.size() - 1);
  Worst w;
  for (int trial = 0; trial < 100; ++trial) {
    const auto& xi = fields[pick(rng)];
    const auto& zeta = fields[pick(rng)];
    const auto& lam = fields[pick(rng)];
    const auto& conn = conns[pickc(rng)];
    const auto p = random_sph_point(rng);
    const std::span<const double> pt(p.data(), 3);
    const FieldJets xj = eval_field(xi, pt);
    const FieldJets zj = eval_field(zeta, pt);
    const FieldJets lj = eval_field(lam, pt);
    const TenN lie = lie_derivative_connection(conn, xi, pt);
    const auto rhs = lemma1_rhs(conn, xj, zj, lj, pt);
    for (int i = 0; i < 3; ++i) {
      double lhs = 0;
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) lhs += lie.at(i, j, k) * zj.v(j) * lj.v(k);
      w.feed(lhs - rhs[static_cast<std::size_t>(i)], pt, "component " + std::to_string(i));
    }
  }
  return finish("lemma1-identity", w, 1e-9);
}

CheckEntry suite_lemma3(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 2654435761u + 2);
  // fixed rotation: z-axis by 0.7 composed with x-axis by 0.4
  const double cz = std::cos(0.7), sz = std::sin(0.7);
  const double cx = std::cos(0.4), sx = std::sin(0.4);
  const Mat3 rz = {{{cz, -sz, 0}, {sz, cz, 0}, {0, 0, 1}}};
  const Mat3 rx = {{{1, 0, 0}, {0, cx, -sx}, {0, sx, cx}}};
  Mat3 rot{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0;
      for (int k = 0; k < 3; ++k) s += rz[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * rx[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      rot[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
    }
  const Diffeo alpha = rotation_sph3_first(rot);
  const auto g = make_invariant_metric_3d(ScalarField::from_expr(ChartId::Radial, "1 + r^2"),
                                          ScalarField::from_expr(ChartId::Radial, "r^2 + r^4/8"));
  const ConnectionField lc = christoffel_field(g);
  const MetricField pulled = pullback_metric_field(g, alpha);
  Worst w;
  int accepted = 0;
  while (accepted < 25) {
    const auto p = random_sph_point(rng);
    const std::span<const double> pt(p.data(), 3);
    try {
      const TenN left = transform_connection(lc, alpha, pt);
      const TenN right = christoffel(pulled, pt);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k) w.feed(left.at(i, j, k) - right.at(i, j, k), pt, "");
      ++accepted;
    } catch (const DomainError&) {
      // rotated image fell on the excluded half-plane; draw again
    }
  }
  return finish("lemma3-commuting-square", w, 1e-8);
}

CheckEntry suite_chart_consistency(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 2654435761u + 3);
  const auto P = ScalarField::from_expr(ChartId::Radial, "exp(r/4)");
  const auto Q = ScalarField::from_expr(ChartId::Radial, "r^2 + 1");
  const auto g1 = make_invariant_metric_3d(P, Q);
  // same (P, Q) read in the second chart
  MetricField g2(ChartId::Sph3Second, 3);
  g2.set(0, 0, ScalarField::from_expr(ChartId::Sph3Second, "exp(r/4)"));
  g2.set(1, 1, ScalarField::from_expr(ChartId::Sph3Second, "r^2 + 1"));
  g2.set(2, 2, ScalarField::from_expr(ChartId::Sph3Second, "(r^2 + 1)*sin(theta)^2"));
  std::vector<std::array<double, 3>> pts;
  while (pts.size() < 50) {
    const auto p = random_sph_point(rng);
    try {
      (void)transition_first_to_second(p);
      pts.push_back(p);
    } catch (const DomainError&) {
    }
  }
  const double worst = chart_consistency_check(g1, g2, pts);
  Worst w;
  const double dummy[3] = {0, 0, 0};
  w.feed(worst, std::span<const double>(dummy, 0), "max over 50 overlap points");
  return finish("chart-consistency", w, 1e-12);
}

CheckEntry suite_generator_brackets(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 2654435761u + 4);
  Worst w;
  for (ChartId ch : {ChartId::Cartesian3, ChartId::Sph3First}) {
    const auto gen = generators(ch);
    for (int trial = 0; trial < 40; ++trial) {
      std::array<double, 3> p{};
      if (ch == ChartId::Cartesian3) {
        std::uniform_real_distribution<double> u(0.3, 1.9);
        p = {u(rng), u(rng), u(rng)};
      } else {
        p = random_sph_point(rng);
      }
      const std::span<const double> pt(p.data(), 3);
      // [xi,zeta] = -lambda, [zeta,lambda] = -xi, [lambda,xi] = -zeta
      const int pairs[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
      for (const auto& pr : pairs) {
        const VecN br = lie_bracket(gen[static_cast<std::size_t>(pr[0])], gen[static_cast<std::size_t>(pr[1])], pt);
        for (int i = 0; i < 3; ++i) {
          const double want = -gen[static_cast<std::size_t>(pr[2])].at(i).value(pt);
          w.feed(br[i] - want, pt, "so(3) bracket relation");
        }
      }
    }
  }
  // pushforward of the Cartesian generators reproduces the spherical ones
  const Diffeo d = sph3_first_to_cart();
  const auto cart = generators(ChartId::Cartesian3);
  const auto sph = generators(ChartId::Sph3First);
  for (int trial = 0; trial < 40; ++trial) {
    const auto p = random_sph_point(rng);
    const std::span<const double> pt(p.data(), 3);
    for (int gidx = 0; gidx < 3; ++gidx) {
      const VecN pushed = pushforward(cart[static_cast<std::size_t>(gidx)], d, pt);
      for (int i = 0; i < 3; ++i)
        w.feed(pushed[i] - sph[static_cast<std::size_t>(gidx)].at(i).value(pt), pt,
               "pushforward vs closed form");
    }
  }
  return finish("generator-brackets", w, 1e-10);
}

CheckEntry suite_jet_fd(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 2654435761u + 5);
  struct Case {
    const char* src;
    std::vector<std::string> vars;
    std::array<double, 2> lo, hi;
  };
  const std::vector<Case> corpus = {
      {"r^2", {"r"}, {0.5, 0}, {3.0, 0}},
      {"sin(r)/4", {"r"}, {0.5, 0}, {3.0, 0}},
      {"1/r + 1/(1+r^2)", {"r"}, {0.5, 0}, {3.0, 0}},
      {"r/(1+r^2)", {"r"}, {0.5, 0}, {3.0, 0}},
      {"exp(2*r)", {"r"}, {0.2, 0}, {1.5, 0}},
      {"log(r+1)*sqrt(r)", {"r"}, {0.5, 0}, {3.0, 0}},
      {"cot(theta)*cos(phi)", {"theta", "phi"}, {0.4, 0.3}, {2.7, 6.0}},
      {"sin(theta)*cos(phi)", {"theta", "phi"}, {0.4, 0.3}, {2.7, 6.0}},
      {"u/(1+u^2)", {"u"}, {-1.0, 0}, {1.0, 0}},
      {"exp(u*0.5)*sin(u)", {"u"}, {-1.0, 0}, {1.0, 0}},
      {"v^2*log(v)", {"v"}, {0.5, 0}, {3.0, 0}},
      {"2^r", {"r"}, {0.5, 0}, {2.5, 0}},
  };
  const double h = 1e-5;
  Worst wg, wh;
  for (const auto& c : corpus) {
    const Expr e = Expr::parse(c.src, c.vars);
    const int n = static_cast<int>(c.vars.size());
    for (int trial = 0; trial < 12; ++trial) {
      std::array<double, 4> p{};
      for (int i = 0; i < n; ++i) {
        std::uniform_real_distribution<double> u(c.lo[static_cast<std::size_t>(i)] + 2 * h,
                                                 c.hi[static_cast<std::size_t>(i)] - 2 * h);
        p[static_cast<std::size_t>(i)] = u(rng);
      }
      const std::span<const double> pt(p.data(), static_cast<std::size_t>(n));
      const Jet2 j = e.eval_jet(pt);
      auto feval = [&](std::array<double, 4> q) {
        return e.eval(std::span<const double>(q.data(), static_cast<std::size_t>(n)));
      };
      for (int i = 0; i < n; ++i) {
        auto pp = p, pm = p;
        pp[static_cast<std::size_t>(i)] += h;
        pm[static_cast<std::size_t>(i)] -= h;
        const double fd = (feval(pp) - feval(pm)) / (2 * h);
        const double rel = std::abs(j.d(i) - fd) / std::max({1.0, std::abs(j.d(i)), std::abs(fd)});
        wg.feed(rel, pt, std::string("grad of ") + c.src);
      }
      for (int i = 0; i < n; ++i)
        for (int k = i; k < n; ++k) {
          double fd;
          if (i == k) {
            auto pp = p, pm = p;
            pp[static_cast<std::size_t>(i)] += h;
            pm[static_cast<std::size_t>(i)] -= h;
            fd = (feval(pp) - 2 * feval(p) + feval(pm)) / (h * h);
          } else {
            auto a = p, b = p, cq = p, dq = p;
            a[static_cast<std::size_t>(i)] += h;
            a[static_cast<std::size_t>(k)] += h;
            b[static_cast<std::size_t>(i)] += h;
            b[static_cast<std::size_t>(k)] -= h;
            cq[static_cast<std::size_t>(i)] -= h;
            cq[static_cast<std::size_t>(k)] += h;
            dq[static_cast<std::size_t>(i)] -= h;
            dq[static_cast<std::size_t>(k)] -= h;
            fd = (feval(a) - feval(b) - feval(cq) + feval(dq)) / (4 * h * h);
          }
          const double rel =
              std::abs(j.dd(i, k) - fd) / std::max({1.0, std::abs(j.dd(i, k)), std::abs(fd)});
          wh.feed(rel, pt, std::string("hess of ") + c.src);
        }
    }
  }
  CheckEntry grad = finish("jet-finite-difference", wg, 1e-6);
  CheckEntry hess = finish("jet-finite-difference", wh, 1e-4);
  // report the binding side: whichever is closer to its tolerance
  const double gslack = grad.max_residual / grad.tolerance;
  const double hslack = hess.max_residual / hess.tolerance;
  CheckEntry out = gslack >= hslack ? grad : hess;
  out.pass = grad.pass && hess.pass;
  out.detail += gslack >= hslack ? " (gradient, rel tol 1e-6)" : " (hessian, rel tol 1e-4)";
  return out;
}

}  // namespace

std::vector<CheckEntry> run_identity_suites(std::uint64_t seed) {
  std::vector<CheckEntry> out;
  out.push_back(suite_lemma1(seed));
  out.push_back(suite_lemma3(seed));
  out.push_back(suite_chart_consistency(seed));
  out.push_back(suite_generator_brackets(seed));
  out.push_back(suite_jet_fd(seed));
  return out;
}

}  // namespace metrize::cli
