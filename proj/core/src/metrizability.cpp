#include "metrize/metrizability.hpp"

#include <cmath>
#include <limits>

#include "metrize/calculus.hpp"
#include "metrize/errors.hpp"
#include "metrize/quadrature.hpp"

namespace metrize {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

void record(Residual& worst, double value, std::span<const double> p, int gen, int i,
            int j, int k) {
  if (std::abs(value) <= worst.value) return;
  worst.value = std::abs(value);
  worst.dim = static_cast<int>(p.size());
  for (int q = 0; q < worst.dim; ++q) worst.point[static_cast<std::size_t>(q)] = p[static_cast<std::size_t>(q)];
  worst.generator = gen;
  worst.component = {i, j, k};
}

double profile_value(const ScalarField& f, double s) {
  return f.value(std::span<const double>(&s, 1));
}

double profile_value2(const ScalarField& f, double a, double b) {
  const double p[2] = {a, b};
  return f.value(std::span<const double>(p, 2));
}

/// f restricted to theta = theta0, phi = phi0 as a function of r.
ScalarField slice_to_radial(const ScalarField& f3, double theta0, double phi0) {
  return ScalarField::native(
      ChartId::Radial,
      [f3, theta0, phi0](std::span<const Jet2> a) {
        const int d = a[0].dim();
        const std::array<Jet2, 3> full = {a[0], Jet2::constant(theta0, d),
                                          Jet2::constant(phi0, d)};
        return f3.jet(std::span<const Jet2>(full.data(), 3));
      },
      f3.exact_order());
}

/// Two-variable field restricted to one variable, the other held at `other`.
ScalarField slice_pair(const ScalarField& f2, int keep, double other, ChartId one_chart) {
  return ScalarField::native(
      one_chart,
      [f2, keep, other](std::span<const Jet2> a) {
        const int d = a[0].dim();
        std::array<Jet2, 2> full;
        full[static_cast<std::size_t>(keep)] = a[0];
        full[static_cast<std::size_t>(1 - keep)] = Jet2::constant(other, d);
        return f2.jet(std::span<const Jet2>(full.data(), 2));
      },
      f2.exact_order());
}

ScalarField field_product(const ScalarField& f, const ScalarField& g, ChartId ch) {
  return ScalarField::native(ch, [f, g](std::span<const Jet2> a) { return f.jet(a) * g.jet(a); });
}

ScalarField field_scaled(const ScalarField& f, double c, ChartId ch) {
  return ScalarField::native(ch, [f, c](std::span<const Jet2> a) { return c * f.jet(a); });
}

ScalarField field_difference_1var(const ScalarField& f, const ScalarField& g, ChartId ch) {
  return ScalarField::native(ch, [f, g](std::span<const Jet2> a) { return f.jet(a) - g.jet(a); });
}

void require_one_var(const ScalarField& f, const char* name) {
  if (!f.valid() || f.dim() != 1)
    throw InvalidArgument(std::string(name) + " must be a profile of one variable");
}

}  // namespace

Residual invariance_residual(const ConnectionField& conn, const GridSpec& grid,
                             int only_generator) {
  const int n = conn.dim();
  const int tri = Jet2::tri_count(n);
  const auto gens = generators(conn.chart_id());
  const int g_lo = only_generator < 0 ? 0 : only_generator;
  const int g_hi = only_generator < 0 ? 3 : only_generator + 1;
  Residual worst;
  worst.dim = n;
  std::array<Jet2, 40> cjets;
  std::array<Jet2, 4> gjets;
  grid.for_each([&](std::span<const double> p) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k)
          cjets[static_cast<std::size_t>(i * tri + Jet2::tri_index(j, k))] =
              conn.at(i, j, k).jet(p);
    for (int g = g_lo; g < g_hi; ++g) {
      for (int i = 0; i < n; ++i)
        gjets[static_cast<std::size_t>(i)] = gens[static_cast<std::size_t>(g)].at(i).jet(p);
      const TenN lie = detail::lie_connection_from_jets(cjets.data(), gjets.data(), n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = j; k < n; ++k) record(worst, lie.at(i, j, k), p, g, i, j, k);
    }
  });
  return worst;
}

Residual killing_residual(const MetricField& g, const GridSpec& grid, int only_generator) {
  const int n = g.dim();
  const auto gens = generators(g.chart_id());
  const int g_lo = only_generator < 0 ? 0 : only_generator;
  const int g_hi = only_generator < 0 ? 3 : only_generator + 1;
  Residual worst;
  worst.dim = n;
  std::array<Jet2, 10> mjets;
  std::array<Jet2, 4> gjets;
  grid.for_each([&](std::span<const double> p) {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i <= j; ++i)
        mjets[static_cast<std::size_t>(Jet2::tri_index(i, j))] = g.at(i, j).jet(p);
    for (int q = g_lo; q < g_hi; ++q) {
      for (int i = 0; i < n; ++i)
        gjets[static_cast<std::size_t>(i)] = gens[static_cast<std::size_t>(q)].at(i).jet(p);
      const MatN lie = detail::lie_metric_from_jets(mjets.data(), gjets.data(), n);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) record(worst, lie.at(i, j), p, q, i, j, -1);
    }
  });
  return worst;
}

Residual verify_levi_civita(const ConnectionField& conn, const MetricField& g,
                            const GridSpec& grid) {
  if (conn.chart_id() != g.chart_id())
    throw InvalidArgument("connection and metric must live on the same chart");
  const int n = conn.dim();
  Residual worst;
  worst.dim = n;
  grid.for_each([&](std::span<const double> p) {
    const TenN gamma = christoffel(g, p);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) {
          const double diff = conn.at(i, j, k).value(p) - gamma.at(i, j, k);
          record(worst, diff, p, -1, i, j, k);
        }
  });
  return worst;
}

Classification3D classify_connection_3d(const ConnectionField& conn, const GridSpec& grid) {
  if (conn.chart_id() != ChartId::Sph3First || conn.dim() != 3)
    throw InvalidArgument("classification expects a connection on the first spherical chart");
  const double theta0 = kPi / 2;  // sin(theta0) rounds to exactly 1
  const double phi0 = 0.5 * (grid.axes[2].lo + grid.axes[2].hi);
  Classification3D out;
  out.profiles.a111 = slice_to_radial(conn.at(0, 0, 0), theta0, phi0);
  out.profiles.a122 = slice_to_radial(conn.at(0, 1, 1), theta0, phi0);
  out.profiles.a212 = slice_to_radial(conn.at(1, 0, 1), theta0, phi0);
  out.profiles.a = slice_to_radial(conn.at(1, 0, 2), theta0, phi0);
  const ConnectionField rebuilt = make_invariant_connection_3d(out.profiles);
  double worst = -1;
  grid.for_each([&](std::span<const double> p) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = j; k < 3; ++k) {
          const double diff =
              std::abs(conn.at(i, j, k).value(p) - rebuilt.at(i, j, k).value(p));
          if (diff > worst) {
            worst = diff;
            for (int q = 0; q < 3; ++q) out.witness[static_cast<std::size_t>(q)] = p[static_cast<std::size_t>(q)];
          }
        }
  });
  out.residual = worst;
  out.in_family = worst <= grid.tol.residual;
  return out;
}

Classification4D classify_connection_4d(const ConnectionField& conn, const GridSpec& grid) {
  const ChartId ch = conn.chart_id();
  if ((ch != ChartId::Isothermal4First && ch != ChartId::Spacetime4First) || conn.dim() != 4)
    throw InvalidArgument("classification expects a connection on a 4D first spherical chart");
  const ChartId pair_chart =
      ch == ChartId::Isothermal4First ? ChartId::HalfPlaneUV : ChartId::HalfPlaneTR;
  const double theta0 = kPi / 2;
  const double phi0 = 0.5 * (grid.axes[3].lo + grid.axes[3].hi);
  auto slice = [&](int i, int j, int k) {
    const ScalarField f4 = conn.at(i, j, k);
    return ScalarField::native(
        pair_chart,
        [f4, theta0, phi0](std::span<const Jet2> a) {
          const int d = a[0].dim();
          const std::array<Jet2, 4> full = {a[0], a[1], Jet2::constant(theta0, d),
                                            Jet2::constant(phi0, d)};
          return f4.jet(std::span<const Jet2>(full.data(), 4));
        },
        f4.exact_order());
  };
  Classification4D out;
  out.profiles.b000 = slice(0, 0, 0);
  out.profiles.b010 = slice(0, 0, 1);
  out.profiles.b110 = slice(0, 1, 1);
  out.profiles.b220 = slice(0, 2, 2);
  out.profiles.b001 = slice(1, 0, 0);
  out.profiles.b011 = slice(1, 0, 1);
  out.profiles.b111 = slice(1, 1, 1);
  out.profiles.b221 = slice(1, 2, 2);
  out.profiles.b022 = slice(2, 0, 2);
  out.profiles.b032 = slice(2, 0, 3);  // sin(theta0) = 1
  out.profiles.b122 = slice(2, 1, 2);
  out.profiles.b132 = slice(2, 1, 3);
  const ConnectionField rebuilt = make_invariant_connection_4d(out.profiles, ch);
  double worst = -1;
  grid.for_each([&](std::span<const double> p) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = j; k < 4; ++k) {
          const double diff =
              std::abs(conn.at(i, j, k).value(p) - rebuilt.at(i, j, k).value(p));
          if (diff > worst) {
            worst = diff;
            for (int q = 0; q < 4; ++q) out.witness[static_cast<std::size_t>(q)] = p[static_cast<std::size_t>(q)];
          }
        }
  });
  out.residual = worst;
  out.in_family = worst <= grid.tol.residual;
  return out;
}

Verdict metrizability_check_3d(const Profile3D& profiles, const GridSpec& grid) {
  require_one_var(profiles.a111, "A111");
  require_one_var(profiles.a122, "A122");
  require_one_var(profiles.a212, "A212");
  require_one_var(profiles.a, "A");
  Verdict v;
  const Tolerances& tol = grid.tol;
  const auto rs = grid.axes[0].points();
  try {
    // nabla^2_13 = 0, i.e. A == 0 on the r-grid
    double worst_a = 0, wit_a = rs[0];
    for (const double r : rs) {
      const double a = std::abs(profile_value(profiles.a, r));
      if (a > worst_a) {
        worst_a = a;
        wit_a = r;
      }
    }
    if (worst_a > tol.residual)
      v.violated.push_back({kCondA3d, worst_a, {wit_a}, 1});

    double max_a212 = 0;
    for (const double r : rs) max_a212 = std::max(max_a212, std::abs(profile_value(profiles.a212, r)));

    if (max_a212 <= tol.residual) {
      // degenerate branch: nabla^1_22 must vanish, constants unconstrained
      double worst122 = 0, wit122 = rs[0];
      for (const double r : rs) {
        const double a = std::abs(profile_value(profiles.a122, r));
        if (a > worst122) {
          worst122 = a;
          wit122 = r;
        }
      }
      if (worst122 > tol.residual)
        v.violated.push_back({kCondDegenerate3d, worst122, {wit122}, 1});
      else
        v.ratio_unconstrained = true;
    } else {
      auto wval = [&](double t) {
        return profile_value(profiles.a212, t) - profile_value(profiles.a111, t);
      };
      auto rho_at = [&](double r) {
        const double env = std::exp(2.0 * quadrature(wval, 1.0, r, tol.quadrature));
        return -profile_value(profiles.a122, r) / (profile_value(profiles.a212, r) * env);
      };
      const double rho1 = rho_at(1.0);
      bool nonfinite = !std::isfinite(rho1);
      double wit_nf = 1.0;
      v.has_ratio = true;
      v.ratio_constant = rho1;
      for (const double r : rs) {
        const double rho = rho_at(r);
        v.ratio_samples.push_back({{r, 0}, 1, rho});
        if (!std::isfinite(rho) && !nonfinite) {
          nonfinite = true;
          wit_nf = r;
        }
      }
      if (nonfinite) {
        v.violated.push_back({kCondRatioConstancy, kInf, {wit_nf}, 1});
      } else {
        double dev = 0, wit_dev = rs[0];
        for (const auto& s : v.ratio_samples) {
          const double d = std::abs(s.rho - rho1);
          if (d > dev) {
            dev = d;
            wit_dev = s.point[0];
          }
        }
        v.ratio_residual = dev;
        if (std::abs(rho1) <= tol.ratio)
          v.violated.push_back({kCondRatioNonzero, std::abs(rho1), {1.0}, 1});
        if (dev > tol.ratio * std::max(1.0, std::abs(rho1)))
          v.violated.push_back({kCondRatioConstancy, dev, {wit_dev}, 1});
      }
    }
    v.status = v.violated.empty() ? MetrizStatus::Metrizable : MetrizStatus::NonMetrizable;
  } catch (const QuadratureFailure& e) {
    v.status = MetrizStatus::Inconclusive;
    v.note = e.what();
  } catch (const DomainError& e) {
    v.status = MetrizStatus::Inconclusive;
    v.note = e.what();
  }
  return v;
}

ScalarField exp2int_field(const ScalarField& w, double scale, double quad_tol, double base) {
  require_one_var(w, "integrand profile");
  return ScalarField::native(w.chart_id(), [w, scale, quad_tol, base](std::span<const Jet2> args) {
    const Jet2& s = args[0];
    const double s0 = s.value();
    const double integral = quadrature(
        [&w](double t) { return w.value(std::span<const double>(&t, 1)); }, base, s0,
        quad_tol);
    const double f = scale * std::exp(2.0 * integral);
    const Jet2 wj = w.jet(std::span<const double>(&s0, 1));
    const double wv = wj.value();
    return s.chain(f, 2.0 * wv * f, (2.0 * wj.d(0) + 4.0 * wv * wv) * f);
  });
}

ConnectionField make_metrizable_connection_3d(const ScalarField& a111,
                                              const ScalarField& a212, double L_over_K,
                                              const Tolerances& tol) {
  require_one_var(a111, "A111");
  require_one_var(a212, "A212");
  const ScalarField env =
      exp2int_field(field_difference_1var(a212, a111, ChartId::Radial), -L_over_K,
                    tol.quadrature);
  Profile3D p;
  p.a111 = a111;
  p.a122 = field_product(a212, env, ChartId::Radial);
  p.a212 = a212;
  p.a = ScalarField::zero(ChartId::Radial);
  p.L = L_over_K;
  return make_invariant_connection_3d(p);
}

MetricField reconstruct_metric_3d(const ScalarField& a111, const ScalarField& a212,
                                  double K, double L, const Tolerances& tol) {
  if (K == 0.0 || L == 0.0)
    throw InvalidArgument("reconstruction constants K and L must be nonzero");
  require_one_var(a111, "A111");
  require_one_var(a212, "A212");
  const ScalarField P = exp2int_field(a111, K, tol.quadrature);
  const ScalarField Q = exp2int_field(a212, L, tol.quadrature);
  return make_invariant_metric_3d(P, Q);
}

namespace {

struct Cond4d {
  const char* tag;
  const ScalarField* field;
};

}  // namespace

Verdict metrizability_check_4d(const Profile4D& pr, const GridSpec& grid, Signature sig) {
  Verdict v;
  const Tolerances& tol = grid.tol;
  const auto us = grid.axes[0].points();
  const auto vs = grid.axes[1].points();
  const double sgn = (sig == Signature::Riemann) ? -1.0 : 1.0;
  try {
    auto sweep_max = [&](auto&& fn) {
      double worst = 0;
      std::array<double, 2> wit{us[0], vs[0]};
      for (const double u : us)
        for (const double vv : vs) {
          const double a = std::abs(fn(u, vv));
          if (a > worst) {
            worst = a;
            wit = {u, vv};
          }
        }
      return std::pair<double, std::array<double, 2>>(worst, wit);
    };
    auto check_zero = [&](const char* tag, const ScalarField& f) {
      const auto [worst, wit] = sweep_max([&](double u, double vv) { return profile_value2(f, u, vv); });
      if (worst > tol.residual) v.violated.push_back({tag, worst, {wit[0], wit[1]}, 2});
    };
    // (i) components of the general family absent from the metrizable one
    check_zero("zero-pattern nabla^0_22", pr.b220);
    check_zero("zero-pattern nabla^2_02", pr.b022);
    check_zero("zero-pattern nabla^2_03", pr.b032);
    check_zero("zero-pattern nabla^2_13", pr.b132);

    // (ii) cross-relations with the signature sign
    auto check_rel = [&](const char* tag, auto&& fn) {
      const auto [worst, wit] = sweep_max(fn);
      if (worst > tol.residual) v.violated.push_back({tag, worst, {wit[0], wit[1]}, 2});
    };
    check_rel("cross-relation nabla^0_11 vs nabla^0_00", [&](double u, double vv) {
      return sgn * profile_value2(pr.b110, u, vv) - profile_value2(pr.b000, u, vv);
    });
    check_rel("cross-relation nabla^1_01 vs nabla^0_00", [&](double u, double vv) {
      return profile_value2(pr.b011, u, vv) - profile_value2(pr.b000, u, vv);
    });
    check_rel("cross-relation nabla^1_00 vs nabla^1_11", [&](double u, double vv) {
      return sgn * profile_value2(pr.b001, u, vv) - profile_value2(pr.b111, u, vv);
    });
    check_rel("cross-relation nabla^0_01 vs nabla^1_11", [&](double u, double vv) {
      return profile_value2(pr.b010, u, vv) - profile_value2(pr.b111, u, vv);
    });

    // (iii) separability against the base-point slices
    check_rel("separability A^0_00(u)", [&](double u, double vv) {
      return profile_value2(pr.b000, u, vv) - profile_value2(pr.b000, u, 1.0);
    });
    check_rel("separability A^1_11(v)", [&](double u, double vv) {
      return profile_value2(pr.b111, u, vv) - profile_value2(pr.b111, 1.0, vv);
    });
    check_rel("separability A^2_12(v)", [&](double u, double vv) {
      return profile_value2(pr.b122, u, vv) - profile_value2(pr.b122, 1.0, vv);
    });

    const ScalarField a000 = slice_pair(pr.b000, 0, 1.0, ChartId::IsoU);
    const ScalarField a111 = slice_pair(pr.b111, 1, 1.0, ChartId::IsoV);
    const ScalarField a212 = slice_pair(pr.b122, 1, 1.0, ChartId::IsoV);

    double max_a212 = 0;
    for (const double vv : vs) max_a212 = std::max(max_a212, std::abs(profile_value(a212, vv)));

    if (max_a212 <= tol.residual) {
      const auto [worst, wit] =
          sweep_max([&](double u, double vv) { return profile_value2(pr.b221, u, vv); });
      if (worst > tol.residual)
        v.violated.push_back({kCondDegenerate3d, worst, {wit[0], wit[1]}, 2});
      else
        v.ratio_unconstrained = true;
    } else {
      // (iv) the nabla^1_22 formula with a single constant -+ C2/C1
      auto wv = [&](double t) { return profile_value(a212, t) - profile_value(a111, t); };
      auto a000v = [&](double t) { return profile_value(a000, t); };
      auto ratio_at = [&](double u, double vv) {
        const double env_v = std::exp(2.0 * quadrature(wv, 1.0, vv, tol.quadrature));
        const double env_u = std::exp(-2.0 * quadrature(a000v, 1.0, u, tol.quadrature));
        const double denom = profile_value(a212, vv) * env_v * env_u;
        return sgn * profile_value2(pr.b221, u, vv) / denom;
      };
      const double c_base = ratio_at(1.0, 1.0);
      bool nonfinite = !std::isfinite(c_base);
      std::array<double, 2> wit_nf{1.0, 1.0};
      v.has_ratio = true;
      v.ratio_constant = c_base;
      for (const double u : us)
        for (const double vv : vs) {
          const double c = ratio_at(u, vv);
          v.ratio_samples.push_back({{u, vv}, 2, c});
          if (!std::isfinite(c) && !nonfinite) {
            nonfinite = true;
            wit_nf = {u, vv};
          }
        }
      if (nonfinite) {
        v.violated.push_back({kCondRatioConstancy, kInf, {wit_nf[0], wit_nf[1]}, 2});
      } else {
        double dev = 0;
        std::array<double, 2> wit_dev{us[0], vs[0]};
        for (const auto& s : v.ratio_samples) {
          const double d = std::abs(s.rho - c_base);
          if (d > dev) {
            dev = d;
            wit_dev = s.point;
          }
        }
        v.ratio_residual = dev;
        if (std::abs(c_base) <= tol.ratio)
          v.violated.push_back({kCondRatioNonzero, std::abs(c_base), {1.0, 1.0}, 2});
        if (dev > tol.ratio * std::max(1.0, std::abs(c_base)))
          v.violated.push_back({kCondRatioConstancy, dev, {wit_dev[0], wit_dev[1]}, 2});
      }
    }
    v.status = v.violated.empty() ? MetrizStatus::Metrizable : MetrizStatus::NonMetrizable;
  } catch (const QuadratureFailure& e) {
    v.status = MetrizStatus::Inconclusive;
    v.note = e.what();
  } catch (const DomainError& e) {
    v.status = MetrizStatus::Inconclusive;
    v.note = e.what();
  }
  return v;
}

ConnectionField make_metrizable_connection_4d(const ScalarField& a000,
                                              const ScalarField& a111,
                                              const ScalarField& a212,
                                              double C2_over_C1, Signature sig,
                                              const Tolerances& tol) {
  require_one_var(a000, "A000");
  require_one_var(a111, "A111");
  require_one_var(a212, "A212");
  const double sgn = (sig == Signature::Riemann) ? -1.0 : 1.0;
  const ChartId uv = ChartId::HalfPlaneUV;
  const int map_u[1] = {0};
  const int map_v[1] = {1};
  auto lift_u = [&](const ScalarField& f) { return lift_to_chart(f, uv, std::span<const int>(map_u, 1)); };
  auto lift_v = [&](const ScalarField& f) { return lift_to_chart(f, uv, std::span<const int>(map_v, 1)); };

  const ScalarField env_v =
      exp2int_field(field_difference_1var(a212, a111, ChartId::IsoV), 1.0, tol.quadrature);
  const ScalarField neg_a000 = field_scaled(a000, -1.0, ChartId::IsoU);
  const ScalarField env_u = exp2int_field(neg_a000, 1.0, tol.quadrature);

  Profile4D p;
  p.b000 = lift_u(a000);
  p.b010 = lift_v(a111);
  p.b110 = field_scaled(lift_u(a000), sgn, uv);
  p.b220 = ScalarField::zero(uv);
  p.b001 = field_scaled(lift_v(a111), sgn, uv);
  p.b011 = lift_u(a000);
  p.b111 = lift_v(a111);
  p.b221 = field_scaled(
      field_product(field_product(lift_v(a212), lift_v(env_v), uv), lift_u(env_u), uv),
      sgn * C2_over_C1, uv);
  p.b022 = ScalarField::zero(uv);
  p.b032 = ScalarField::zero(uv);
  p.b122 = lift_v(a212);
  p.b132 = ScalarField::zero(uv);
  return make_invariant_connection_4d(p, ChartId::Isothermal4First);
}

MetricField reconstruct_metric_4d(const ScalarField& a000, const ScalarField& a111,
                                  const ScalarField& a212, double C1, double C2,
                                  Signature sig, const Tolerances& tol) {
  if (C1 == 0.0 || C2 == 0.0)
    throw InvalidArgument("reconstruction constants C1 and C2 must be nonzero");
  require_one_var(a000, "A000");
  require_one_var(a111, "A111");
  require_one_var(a212, "A212");
  const ChartId uv = ChartId::HalfPlaneUV;
  const int map_u[1] = {0};
  const int map_v[1] = {1};
  const ScalarField pu = lift_to_chart(exp2int_field(a000, C1, tol.quadrature), uv,
                                       std::span<const int>(map_u, 1));
  const ScalarField pv = lift_to_chart(exp2int_field(a111, 1.0, tol.quadrature), uv,
                                       std::span<const int>(map_v, 1));
  const ScalarField P = field_product(pu, pv, uv);
  const ScalarField Q = exp2int_field(a212, C2, tol.quadrature);
  const ScalarField gtt = P;
  const ScalarField gtr = ScalarField::zero(uv);
  const ScalarField grr = (sig == Signature::Riemann) ? P : field_scaled(P, -1.0, uv);
  return make_invariant_metric_4d(gtt, gtr, grr, Q, ChartId::Isothermal4First);
}

}  // namespace metrize
