#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "corpus.hpp"
#include "metrize/calculus.hpp"
#include "metrize/errors.hpp"
#include "metrize/quadrature.hpp"

using namespace metrize;
using namespace metrize::testing;

namespace {

MetricField euclid_cart3() {
  MetricField g(ChartId::Cartesian3, 3);
  for (int i = 0; i < 3; ++i) g.set(i, i, ScalarField::constant(ChartId::Cartesian3, 1.0));
  return g;
}

MetricField euclid_sph3() {
  return make_invariant_metric_3d(radial("1"), radial("r^2"));
}

VectorField vf1(const char* c0) {
  VectorField v(ChartId::Cartesian1, 1);
  v.set(0, ScalarField::from_expr(ChartId::Cartesian1, c0));
  return v;
}

VectorField vf3(ChartId ch, const char* a, const char* b, const char* c) {
  VectorField v(ch, 3);
  v.set(0, ScalarField::from_expr(ch, a));
  v.set(1, ScalarField::from_expr(ch, b));
  v.set(2, ScalarField::from_expr(ch, c));
  return v;
}

}  // namespace

TEST_CASE("christoffel symbols of the flat Cartesian metric vanish") {
  const auto g = euclid_cart3();
  const double p[3] = {0.7, -0.3, 1.2};
  const TenN gamma = christoffel(g, std::span<const double>(p, 3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) CHECK(gamma.at(i, j, k) == doctest::Approx(0.0));
}

TEST_CASE("christoffel symbols of the spherical Euclidean metric") {
  const auto g = euclid_sph3();
  const double p[3] = {2.0, kPi / 3, 1.0};
  const TenN gamma = christoffel(g, std::span<const double>(p, 3));
  // closed-form oracle: Gamma^r_theta,theta = -r, Gamma^theta_r,theta = 1/r,
  // Gamma^phi_theta,phi = cot(theta), Gamma^r_phi,phi = -r sin^2,
  // Gamma^theta_phi,phi = -sin cos
  CHECK(gamma.at(0, 1, 1) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(gamma.at(1, 0, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(gamma.at(2, 1, 2) == doctest::Approx(0.57735026918962576).epsilon(1e-10));
  CHECK(gamma.at(0, 2, 2) == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(gamma.at(1, 2, 2) == doctest::Approx(-std::sin(kPi / 3) * std::cos(kPi / 3)));
  // lower-index symmetry holds exactly
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) CHECK(gamma.at(i, j, k) == gamma.at(i, k, j));
}

TEST_CASE("the defining decomposition residual stays at roundoff") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ur(0.6, 2.8), ut(0.4, kPi - 0.4), up(0.3, 6.0);
  for (const auto& mp : metric_pairs_3d()) {
    const auto g = make_invariant_metric_3d(radial(mp.P), radial(mp.Q));
    for (int i = 0; i < 10; ++i) {
      const double p[3] = {ur(rng), ut(rng), up(rng)};
      CHECK(christoffel_residual(g, std::span<const double>(p, 3)) <= 1e-10);
    }
  }
}

TEST_CASE("singular metrics are rejected") {
  MetricField g(ChartId::Cartesian3, 3);  // identically zero
  const double p[3] = {1.0, 1.0, 1.0};
  CHECK_THROWS_AS(christoffel(g, std::span<const double>(p, 3)), SingularMetric);
}

TEST_CASE("lie derivative of a metric") {
  const double p3[3] = {0.8, 0.5, 1.1};
  const std::span<const double> pt3(p3, 3);
  SUBCASE("rotations are Euclidean isometries") {
    const auto g = euclid_cart3();
    const auto xi = vf3(ChartId::Cartesian3, "-y", "x", "0");
    const MatN lie = lie_derivative_metric(g, xi, pt3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(lie.at(i, j) == doctest::Approx(0.0));
  }
  SUBCASE("1D scaling field doubles dx(x)dx") {
    MetricField g(ChartId::Cartesian1, 1);
    g.set(0, 0, ScalarField::constant(ChartId::Cartesian1, 1.0));
    const auto xi = vf1("x");
    const double p[1] = {0.4};
    const MatN lie = lie_derivative_metric(g, xi, std::span<const double>(p, 1));
    CHECK(lie.at(0, 0) == doctest::Approx(2.0));
  }
  SUBCASE("the invariant family metric has no phi dependence") {
    const auto g = euclid_sph3();
    const auto xi = vf3(ChartId::Sph3First, "0", "0", "1");
    const double p[3] = {1.4, 0.9, 2.2};
    const MatN lie = lie_derivative_metric(g, xi, std::span<const double>(p, 3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(lie.at(i, j) == doctest::Approx(0.0));
  }
}

TEST_CASE("lie derivative of a connection") {
  SUBCASE("flat connection and a linear rotation generator") {
    ConnectionField flat(ChartId::Cartesian3, 3);
    const auto lam = vf3(ChartId::Cartesian3, "z", "0", "-x");
    const double p[3] = {0.6, 1.1, -0.7};
    const TenN lie = lie_derivative_connection(flat, lam, std::span<const double>(p, 3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) CHECK(lie.at(i, j, k) == doctest::Approx(0.0));
  }
  SUBCASE("1D flat connection and a quadratic field") {
    ConnectionField flat(ChartId::Cartesian1, 1);
    const auto lam = vf1("x^2");
    const double p[1] = {0.3};
    const TenN lie = lie_derivative_connection(flat, lam, std::span<const double>(p, 1));
    CHECK(lie.at(0, 0, 0) == doctest::Approx(2.0));
  }
  SUBCASE("the Euclidean spherical connection is rotation invariant") {
    auto profiles = connection_profiles_3d()[0];
    const auto conn = make_invariant_connection_3d(profiles);
    const auto zeta = vf3(ChartId::Sph3First, "0", "-sin(phi)", "-cot(theta)*cos(phi)");
    const double p[3] = {1.5, 1.0, 0.7};
    const TenN lie = lie_derivative_connection(conn, zeta, std::span<const double>(p, 3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) CHECK(std::abs(lie.at(i, j, k)) <= 1e-10);
  }
}

TEST_CASE("covariant derivative") {
  ConnectionField flat(ChartId::Cartesian3, 3);
  const double p[3] = {0.5, 0.8, 1.3};
  const std::span<const double> pt(p, 3);
  SUBCASE("constant fields, zero connection") {
    const VecN out = covariant_derivative(flat, vf3(ChartId::Cartesian3, "1", "0", "0"),
                                          vf3(ChartId::Cartesian3, "0", "1", "0"), pt);
    for (int i = 0; i < 3; ++i) CHECK(out[i] == doctest::Approx(0.0));
  }
  SUBCASE("plain directional derivative") {
    const VecN out = covariant_derivative(flat, vf3(ChartId::Cartesian3, "1", "0", "0"),
                                          vf3(ChartId::Cartesian3, "0", "x", "0"), pt);
    CHECK(out[0] == doctest::Approx(0.0));
    CHECK(out[1] == doctest::Approx(1.0));
    CHECK(out[2] == doctest::Approx(0.0));
  }
  SUBCASE("spherical connection contracts to its theta,theta column") {
    const auto conn = make_invariant_connection_3d(connection_profiles_3d()[0]);
    const auto e_theta = vf3(ChartId::Sph3First, "0", "1", "0");
    const double q[3] = {2.0, kPi / 2, 0.3};
    const VecN out = covariant_derivative(conn, e_theta, e_theta, std::span<const double>(q, 3));
    CHECK(out[0] == doctest::Approx(-2.0));
    CHECK(out[1] == doctest::Approx(0.0));
    CHECK(out[2] == doctest::Approx(0.0));
  }
}

TEST_CASE("lie bracket") {
  const double p[3] = {1.0, 1.0, 1.0};
  const std::span<const double> pt(p, 3);
  const auto xi = vf3(ChartId::Cartesian3, "-y", "x", "0");
  const auto zeta = vf3(ChartId::Cartesian3, "0", "-z", "y");
  SUBCASE("antisymmetry") {
    const VecN out = lie_bracket(xi, xi, pt);
    for (int i = 0; i < 3; ++i) CHECK(out[i] == doctest::Approx(0.0));
  }
  SUBCASE("so(3) relation at (1,1,1)") {
    const VecN out = lie_bracket(xi, zeta, pt);
    CHECK(out[0] == doctest::Approx(-1.0));
    CHECK(out[1] == doctest::Approx(0.0));
    CHECK(out[2] == doctest::Approx(1.0));
  }
  SUBCASE("textbook 1D bracket") {
    const double q[1] = {0.7};
    const VecN out = lie_bracket(vf1("1"), vf1("x"), std::span<const double>(q, 1));
    CHECK(out[0] == doctest::Approx(1.0));
  }
}

TEST_CASE("transforming a connection by a diffeomorphism") {
  SUBCASE("identity leaves components unchanged") {
    const auto conn = make_invariant_connection_3d(connection_profiles_3d()[1]);
    const Diffeo id = Diffeo::identity(ChartId::Sph3First);
    const double p[3] = {1.2, 0.8, 2.0};
    const std::span<const double> pt(p, 3);
    const TenN out = transform_connection(conn, id, pt);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          CHECK(out.at(i, j, k) == doctest::Approx(conn.at(i, j, k).value(pt)).epsilon(1e-12));
  }
  SUBCASE("a rotation preserves the flat connection") {
    ConnectionField flat(ChartId::Cartesian3, 3);
    const double c = std::cos(0.9), s = std::sin(0.9);
    const Mat3 rot = {{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}};
    const Diffeo alpha = rotation_cart3(rot);
    const double p[3] = {0.4, -1.0, 0.8};
    const TenN out = transform_connection(flat, alpha, std::span<const double>(p, 3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) CHECK(out.at(i, j, k) == doctest::Approx(0.0));
  }
  SUBCASE("flat Cartesian transported to the spherical chart") {
    ConnectionField flat(ChartId::Cartesian3, 3);
    const Diffeo d = sph3_first_to_cart();
    const double p[3] = {2.0, kPi / 3, 1.0};
    const std::span<const double> pt(p, 3);
    const TenN got = transform_connection(flat, d, pt);
    const TenN want = christoffel(euclid_sph3(), pt);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          CHECK(got.at(i, j, k) == doctest::Approx(want.at(i, j, k)).epsilon(1e-10));
  }
  SUBCASE("singular Jacobians are rejected") {
    Diffeo bad;
    bad.domain = ChartId::Cartesian1;
    bad.codomain = ChartId::Cartesian1;
    bad.forward.push_back(ScalarField::from_expr(ChartId::Cartesian1, "x^2"));
    bad.inverse.push_back(ScalarField::from_expr(ChartId::Cartesian1, "sqrt(x)"));
    ConnectionField flat(ChartId::Cartesian1, 1);
    const double p[1] = {0.0};
    CHECK_THROWS_AS(transform_connection(flat, bad, std::span<const double>(p, 1)),
                    NonInvertible);
  }
}

TEST_CASE("pullback of a metric") {
  SUBCASE("identity") {
    const auto g = euclid_sph3();
    const Diffeo id = Diffeo::identity(ChartId::Sph3First);
    const double p[3] = {1.7, 1.1, 0.4};
    const std::span<const double> pt(p, 3);
    const MatN out = pullback_metric(g, id, pt);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(out.at(i, j) == doctest::Approx(g.at(i, j).value(pt)).epsilon(1e-13));
  }
  SUBCASE("rotations are isometries of the flat metric") {
    const double c = std::cos(0.35), s = std::sin(0.35);
    const Mat3 rot = {{{1, 0, 0}, {0, c, -s}, {0, s, c}}};
    const Diffeo alpha = rotation_cart3(rot);
    const double p[3] = {0.9, 0.2, -0.6};
    const MatN out = pullback_metric(euclid_cart3(), alpha, std::span<const double>(p, 3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(out.at(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));
  }
  SUBCASE("1D scaling x = 2y") {
    MetricField g(ChartId::Cartesian1, 1);
    g.set(0, 0, ScalarField::constant(ChartId::Cartesian1, 1.0));
    Diffeo alpha;
    alpha.domain = ChartId::Cartesian1;
    alpha.codomain = ChartId::Cartesian1;
    alpha.forward.push_back(ScalarField::from_expr(ChartId::Cartesian1, "2*x"));
    alpha.inverse.push_back(ScalarField::from_expr(ChartId::Cartesian1, "x/2"));
    const double p[1] = {0.3};
    const MatN out = pullback_metric(g, alpha, std::span<const double>(p, 1));
    CHECK(out.at(0, 0) == doctest::Approx(4.0));
  }
}

TEST_CASE("adaptive quadrature") {
  CHECK(quadrature([](double t) { return 1.0 / t; }, 1.0, std::exp(1.0), 1e-12) ==
        doctest::Approx(1.0).epsilon(1e-11));
  CHECK(quadrature([](double) { return 0.0; }, 1.0, 2.0, 1e-12) == 0.0);
  CHECK(quadrature([](double t) { return 2.0 * t; }, 1.0, 3.0, 1e-12) ==
        doctest::Approx(8.0).epsilon(1e-12));
  SUBCASE("antisymmetric in swapped bounds") {
    const double a = quadrature([](double t) { return std::sin(t) / t; }, 0.5, 2.5, 1e-11);
    const double b = quadrature([](double t) { return std::sin(t) / t; }, 2.5, 0.5, 1e-11);
    CHECK(a == -b);
  }
  SUBCASE("interval additivity") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.3, 2.9);
    auto f = [](double t) { return std::exp(-t) * std::cos(3 * t) + 1.0 / (1.0 + t * t); };
    for (int i = 0; i < 15; ++i) {
      double x[3] = {u(rng), u(rng), u(rng)};
      const double tol = 1e-11;
      const double ab = quadrature(f, x[0], x[1], tol);
      const double bc = quadrature(f, x[1], x[2], tol);
      const double ac = quadrature(f, x[0], x[2], tol);
      CHECK(std::abs(ab + bc - ac) <= 2 * tol);
    }
  }
  SUBCASE("non-integrable singularities fail loudly") {
    CHECK_THROWS_AS(
        quadrature([](double t) { return 1.0 / ((t - 0.5) * (t - 0.5)); }, 0.0, 1.0, 1e-10),
        QuadratureFailure);
  }
  SUBCASE("tolerance must be positive") {
    CHECK_THROWS_AS(quadrature([](double) { return 1.0; }, 0.0, 1.0, 0.0), InvalidArgument);
  }
}

// ---------------------------------------------------------------------------
// the product-rule identity for Lie derivatives of connections, with the
// right-hand side assembled from covariant_derivative and lie_bracket
// ---------------------------------------------------------------------------

namespace {

// [a, b] as an order-1 vector field (value and first derivatives exact)
VectorField bracket_field(const VectorField& a, const VectorField& b) {
  const ChartId ch = a.chart_id();
  const int n = a.dim();
  VectorField out(ch, n);
  for (int i = 0; i < n; ++i) {
    auto fn = [a, b, i, n](std::span<const Jet2> args) {
      const int jdim = args[0].dim();
      std::array<double, 4> pv{};
      for (int q = 0; q < n && q < 4; ++q) pv[static_cast<std::size_t>(q)] = args[static_cast<std::size_t>(q)].value();
      const std::span<const double> p(pv.data(), static_cast<std::size_t>(n));
      std::array<Jet2, 4> aj, bj;
      for (int q = 0; q < n; ++q) {
        aj[static_cast<std::size_t>(q)] = a.at(q).jet(p);
        bj[static_cast<std::size_t>(q)] = b.at(q).jet(p);
      }
      double val = 0;
      for (int k = 0; k < n; ++k)
        val += aj[static_cast<std::size_t>(k)].value() * bj[static_cast<std::size_t>(i)].d(k) -
               bj[static_cast<std::size_t>(k)].value() * aj[static_cast<std::size_t>(i)].d(k);
      Jet2 r = Jet2::constant(val, jdim);
      for (int q = 0; q < jdim; ++q) {
        double dq = 0;
        for (int k = 0; k < n; ++k)
          dq += aj[static_cast<std::size_t>(k)].d(q) * bj[static_cast<std::size_t>(i)].d(k) +
                aj[static_cast<std::size_t>(k)].value() * bj[static_cast<std::size_t>(i)].dd(k, q) -
                bj[static_cast<std::size_t>(k)].d(q) * aj[static_cast<std::size_t>(i)].d(k) -
                bj[static_cast<std::size_t>(k)].value() * aj[static_cast<std::size_t>(i)].dd(k, q);
        r.mutable_d(q) = dq;
      }
      const double nan = std::numeric_limits<double>::quiet_NaN();
      for (int q = 0; q < jdim; ++q)
        for (int w = q; w < jdim; ++w) r.mutable_dd(q, w) = nan;
      return r;
    };
    out.set(i, ScalarField::native(ch, fn, 1));
  }
  return out;
}

// nabla_zeta(lam) as an order-1 vector field
VectorField covariant_field(const ConnectionField& conn, const VectorField& zeta,
                            const VectorField& lam) {
  const ChartId ch = conn.chart_id();
  const int n = conn.dim();
  VectorField out(ch, n);
  for (int i = 0; i < n; ++i) {
    auto fn = [conn, zeta, lam, i, n](std::span<const Jet2> args) {
      const int jdim = args[0].dim();
      std::array<double, 4> pv{};
      for (int q = 0; q < n && q < 4; ++q) pv[static_cast<std::size_t>(q)] = args[static_cast<std::size_t>(q)].value();
      const std::span<const double> p(pv.data(), static_cast<std::size_t>(n));
      std::array<Jet2, 4> zj, lj;
      std::array<std::array<Jet2, 4>, 4> G;
      for (int q = 0; q < n; ++q) {
        zj[static_cast<std::size_t>(q)] = zeta.at(q).jet(p);
        lj[static_cast<std::size_t>(q)] = lam.at(q).jet(p);
      }
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          G[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] = conn.at(i, k, l).jet(p);
      double val = 0;
      for (int k = 0; k < n; ++k) {
        double inner = lj[static_cast<std::size_t>(i)].d(k);
        for (int l = 0; l < n; ++l)
          inner += G[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)].value() *
                   lj[static_cast<std::size_t>(l)].value();
        val += zj[static_cast<std::size_t>(k)].value() * inner;
      }
      Jet2 r = Jet2::constant(val, jdim);
      for (int q = 0; q < jdim; ++q) {
        double dq = 0;
        for (int k = 0; k < n; ++k) {
          double inner = lj[static_cast<std::size_t>(i)].d(k);
          for (int l = 0; l < n; ++l)
            inner += G[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)].value() *
                     lj[static_cast<std::size_t>(l)].value();
          dq += zj[static_cast<std::size_t>(k)].d(q) * inner;
          double dinner = lj[static_cast<std::size_t>(i)].dd(k, q);
          for (int l = 0; l < n; ++l)
            dinner += G[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)].d(q) *
                          lj[static_cast<std::size_t>(l)].value() +
                      G[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)].value() *
                          lj[static_cast<std::size_t>(l)].d(q);
          dq += zj[static_cast<std::size_t>(k)].value() * dinner;
        }
        r.mutable_d(q) = dq;
      }
      const double nan = std::numeric_limits<double>::quiet_NaN();
      for (int q = 0; q < jdim; ++q)
        for (int w = q; w < jdim; ++w) r.mutable_dd(q, w) = nan;
      return r;
    };
    out.set(i, ScalarField::native(ch, fn, 1));
  }
  return out;
}

VectorField constant_vf(ChartId ch, const VecN& v) {
  VectorField out(ch, v.n);
  for (int i = 0; i < v.n; ++i) out.set(i, ScalarField::constant(ch, v[i]));
  return out;
}

}  // namespace

TEST_CASE("lie derivative of a connection obeys the product identity") {
  const ChartId ch = ChartId::Sph3First;
  std::vector<VectorField> fields;
  fields.push_back(vf3(ch, "r", "0", "0"));
  fields.push_back(vf3(ch, "r^2", "sin(theta)", "cos(phi)"));
  fields.push_back(vf3(ch, "sin(r)", "theta*phi/10", "1/r"));
  fields.push_back(vf3(ch, "0", "-sin(phi)", "-cot(theta)*cos(phi)"));
  fields.push_back(vf3(ch, "exp(r/3)", "cos(theta)*r", "theta/2"));

  std::vector<ConnectionField> conns;
  conns.push_back(make_invariant_connection_3d(connection_profiles_3d()[0]));
  conns.push_back(make_invariant_connection_3d(connection_profiles_3d()[1]));
  {
    ConnectionField c(ch, 3);
    c.set(0, 0, 0, ScalarField::from_expr(ch, "r*sin(theta)"));
    c.set(0, 1, 2, ScalarField::from_expr(ch, "cos(phi)/r"));
    c.set(1, 0, 1, ScalarField::from_expr(ch, "theta"));
    c.set(1, 2, 2, ScalarField::from_expr(ch, "sin(theta)*cos(theta)"));
    c.set(2, 1, 2, ScalarField::from_expr(ch, "r + phi/10"));
    conns.push_back(c);
  }

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ur(0.6, 2.8), ut(0.4, kPi - 0.4), up(0.3, 6.0);
  std::uniform_int_distribution<std::size_t> pick(0, fields.size() - 1);
  std::uniform_int_distribution<std::size_t> pickc(0, conns.size() - 1);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto& xi = fields[pick(rng)];
    const auto& zeta = fields[pick(rng)];
    const auto& lam = fields[pick(rng)];
    const auto& conn = conns[pickc(rng)];
    const double p[3] = {ur(rng), ut(rng), up(rng)};
    const std::span<const double> pt(p, 3);

    const TenN lie = lie_derivative_connection(conn, xi, pt);
    std::array<double, 3> lhs{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          lhs[static_cast<std::size_t>(i)] +=
              lie.at(i, j, k) * zeta.at(j).value(pt) * lam.at(k).value(pt);

    const VectorField w = covariant_field(conn, zeta, lam);
    const VecN t1 = lie_bracket(xi, w, pt);
    const VecN bz = lie_bracket(xi, zeta, pt);
    const VecN t2 = covariant_derivative(conn, constant_vf(ch, bz), lam, pt);
    const VectorField bl = bracket_field(xi, lam);
    const VecN t3 = covariant_derivative(conn, zeta, bl, pt);
    for (int i = 0; i < 3; ++i)
      worst = std::max(worst, std::abs(lhs[static_cast<std::size_t>(i)] - (t1[i] - t2[i] - t3[i])));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("symmetric connections satisfy the torsion-free identity") {
  const ChartId ch = ChartId::Sph3First;
  const auto conn = make_invariant_connection_3d(connection_profiles_3d()[1]);
  const auto xi = vf3(ch, "r^2", "sin(theta)", "cos(phi)");
  const auto zeta = vf3(ch, "sin(r)", "theta*phi/10", "1/r");
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> ur(0.6, 2.8), ut(0.4, kPi - 0.4), up(0.3, 6.0);
  for (int trial = 0; trial < 30; ++trial) {
    const double p[3] = {ur(rng), ut(rng), up(rng)};
    const std::span<const double> pt(p, 3);
    const VecN a = covariant_derivative(conn, xi, zeta, pt);
    const VecN b = covariant_derivative(conn, zeta, xi, pt);
    const VecN br = lie_bracket(xi, zeta, pt);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(a[i] - b[i] - br[i]) <= 1e-9);
  }
}

TEST_CASE("levi-civita transport commutes with pullback for a fixed rotation") {
  const double cz = std::cos(0.7), sz = std::sin(0.7);
  const double cx = std::cos(0.4), sx = std::sin(0.4);
  const Mat3 rz = {{{cz, -sz, 0}, {sz, cz, 0}, {0, 0, 1}}};
  const Mat3 rx = {{{1, 0, 0}, {0, cx, -sx}, {0, sx, cx}}};
  Mat3 rot{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0;
      for (int k = 0; k < 3; ++k)
        s += rz[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
             rx[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      rot[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
    }
  const Diffeo alpha = rotation_sph3_first(rot);
  const auto g = make_invariant_metric_3d(radial("1 + r^2"), radial("r^2 + r^4/8"));
  const ConnectionField lc = christoffel_field(g);
  const MetricField pulled = pullback_metric_field(g, alpha);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ur(0.6, 2.8), ut(0.4, kPi - 0.4), up(0.3, 6.0);
  int accepted = 0;
  double worst = 0;
  while (accepted < 20) {
    const double p[3] = {ur(rng), ut(rng), up(rng)};
    const std::span<const double> pt(p, 3);
    try {
      const TenN left = transform_connection(lc, alpha, pt);
      const TenN right = christoffel(pulled, pt);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k)
            worst = std::max(worst, std::abs(left.at(i, j, k) - right.at(i, j, k)));
      ++accepted;
    } catch (const DomainError&) {
      // image fell on an excluded half-plane
    }
  }
  CHECK(worst <= 1e-8);
}
