#include "metrize/so3.hpp"

#include <cmath>

#include "metrize/errors.hpp"

namespace metrize {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

void check_sph_box(const std::array<double, 3>& rtp) {
  if (!(rtp[0] > 0.0)) throw DomainError("sph_to_cart: r", rtp[0]);
  if (rtp[1] < 0.0 || rtp[1] > kPi) throw DomainError("sph_to_cart: theta", rtp[1]);
  if (rtp[2] < 0.0 || rtp[2] > kTwoPi) throw DomainError("sph_to_cart: phi", rtp[2]);
}

std::array<Jet2, 3> apply_nu(const std::array<Jet2, 3>& p) {
  // nu: (x, y, z) -> (-x, -z, -y); an involution in SO(3)
  return {-p[0], -p[2], -p[1]};
}

std::array<Jet2, 3> cart_to_sph_first_jets(std::span<const Jet2> c) {
  const double x = c[0].value(), y = c[1].value(), z = c[2].value();
  if (y == 0.0 && x >= 0.0)
    throw DomainError("cart_to_sph(first): point on excluded half-plane {x >= 0, y = 0}");
  const Jet2 r = sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
  const Jet2 rho = sqrt(c[0] * c[0] + c[1] * c[1]);
  const Jet2 theta = atan2(rho, c[2]);
  Jet2 phi = atan2(c[1], c[0]);
  if (phi.value() <= 0.0) phi = phi + kTwoPi;
  (void)z;
  return {r, theta, phi};
}

}  // namespace

std::array<Jet2, 3> sph_to_cart_jets(std::span<const Jet2> rtp) {
  const Jet2 st = sin(rtp[1]);
  const Jet2 ct = cos(rtp[1]);
  const Jet2 sp = sin(rtp[2]);
  const Jet2 cp = cos(rtp[2]);
  return {rtp[0] * st * cp, rtp[0] * st * sp, rtp[0] * ct};
}

std::array<Jet2, 3> cart_to_sph_jets(std::span<const Jet2> xyz, SphChart which) {
  if (which == SphChart::First) return cart_to_sph_first_jets(xyz);
  const double x = xyz[0].value(), z = xyz[2].value();
  if (z == 0.0 && x <= 0.0)
    throw DomainError("cart_to_sph(second): point on excluded half-plane {x <= 0, z = 0}");
  const std::array<Jet2, 3> moved = apply_nu({xyz[0], xyz[1], xyz[2]});
  return cart_to_sph_first_jets(std::span<const Jet2>(moved.data(), 3));
}

std::array<double, 3> sph_to_cart(const std::array<double, 3>& rtp) {
  check_sph_box(rtp);
  std::array<Jet2, 3> seeds;
  for (int i = 0; i < 3; ++i) seeds[static_cast<std::size_t>(i)] = Jet2::constant(rtp[static_cast<std::size_t>(i)], 0);
  const auto c = sph_to_cart_jets(std::span<const Jet2>(seeds.data(), 3));
  return {c[0].value(), c[1].value(), c[2].value()};
}

std::array<double, 3> cart_to_sph(const std::array<double, 3>& xyz, SphChart which) {
  std::array<Jet2, 3> seeds;
  for (int i = 0; i < 3; ++i) seeds[static_cast<std::size_t>(i)] = Jet2::constant(xyz[static_cast<std::size_t>(i)], 0);
  const auto s = cart_to_sph_jets(std::span<const Jet2>(seeds.data(), 3), which);
  return {s[0].value(), s[1].value(), s[2].value()};
}

std::array<double, 3> transition_first_to_second(const std::array<double, 3>& rtp) {
  return cart_to_sph(sph_to_cart(rtp), SphChart::Second);
}

std::array<double, 3> transition_second_to_first(const std::array<double, 3>& rtp) {
  // second-chart inverse is nu composed with the first-chart map
  check_sph_box(rtp);
  std::array<Jet2, 3> seeds;
  for (int i = 0; i < 3; ++i) seeds[static_cast<std::size_t>(i)] = Jet2::constant(rtp[static_cast<std::size_t>(i)], 0);
  const auto c = apply_nu(sph_to_cart_jets(std::span<const Jet2>(seeds.data(), 3)));
  return cart_to_sph({c[0].value(), c[1].value(), c[2].value()}, SphChart::First);
}

namespace {

ScalarField sph_to_cart_component(ChartId domain, int i) {
  return ScalarField::native(domain, [i](std::span<const Jet2> a) {
    return sph_to_cart_jets(a)[static_cast<std::size_t>(i)];
  });
}

ScalarField cart_to_sph_component(ChartId domain, SphChart which, int i) {
  return ScalarField::native(domain, [i, which](std::span<const Jet2> a) {
    return cart_to_sph_jets(a, which)[static_cast<std::size_t>(i)];
  });
}

std::array<Jet2, 3> second_to_cart_jets(std::span<const Jet2> rtp) {
  return apply_nu(sph_to_cart_jets(rtp));
}

}  // namespace

Diffeo sph3_first_to_cart() {
  Diffeo d;
  d.domain = ChartId::Sph3First;
  d.codomain = ChartId::Cartesian3;
  for (int i = 0; i < 3; ++i) {
    d.forward.push_back(sph_to_cart_component(ChartId::Sph3First, i));
    d.inverse.push_back(cart_to_sph_component(ChartId::Cartesian3, SphChart::First, i));
  }
  return d;
}

Diffeo sph3_second_to_cart() {
  Diffeo d;
  d.domain = ChartId::Sph3Second;
  d.codomain = ChartId::Cartesian3;
  for (int i = 0; i < 3; ++i) {
    d.forward.push_back(ScalarField::native(ChartId::Sph3Second, [i](std::span<const Jet2> a) {
      return second_to_cart_jets(a)[static_cast<std::size_t>(i)];
    }));
    d.inverse.push_back(cart_to_sph_component(ChartId::Cartesian3, SphChart::Second, i));
  }
  return d;
}

Diffeo transition_3d() {
  Diffeo d;
  d.domain = ChartId::Sph3First;
  d.codomain = ChartId::Sph3Second;
  for (int i = 0; i < 3; ++i) {
    d.forward.push_back(ScalarField::native(ChartId::Sph3First, [i](std::span<const Jet2> a) {
      const auto c = sph_to_cart_jets(a);
      return cart_to_sph_jets(std::span<const Jet2>(c.data(), 3), SphChart::Second)[static_cast<std::size_t>(i)];
    }));
    d.inverse.push_back(ScalarField::native(ChartId::Sph3Second, [i](std::span<const Jet2> a) {
      const auto c = second_to_cart_jets(a);
      return cart_to_sph_jets(std::span<const Jet2>(c.data(), 3), SphChart::First)[static_cast<std::size_t>(i)];
    }));
  }
  return d;
}

Diffeo rotation_cart3(const Mat3& rot) {
  auto apply = [](const Mat3& m, std::span<const Jet2> a, int i) {
    return m[static_cast<std::size_t>(i)][0] * a[0] + m[static_cast<std::size_t>(i)][1] * a[1] +
           m[static_cast<std::size_t>(i)][2] * a[2];
  };
  Mat3 rt;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) rt[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = rot[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  Diffeo d;
  d.domain = ChartId::Cartesian3;
  d.codomain = ChartId::Cartesian3;
  for (int i = 0; i < 3; ++i) {
    d.forward.push_back(ScalarField::native(
        ChartId::Cartesian3, [rot, i, apply](std::span<const Jet2> a) { return apply(rot, a, i); }));
    d.inverse.push_back(ScalarField::native(
        ChartId::Cartesian3, [rt, i, apply](std::span<const Jet2> a) { return apply(rt, a, i); }));
  }
  return d;
}

Diffeo rotation_sph3_first(const Mat3& rot) {
  auto conjugated = [](const Mat3& m, int i) {
    return [m, i](std::span<const Jet2> a) {
      const auto c = sph_to_cart_jets(a);
      std::array<Jet2, 3> rc;
      for (int q = 0; q < 3; ++q)
        rc[static_cast<std::size_t>(q)] = m[static_cast<std::size_t>(q)][0] * c[0] +
                                          m[static_cast<std::size_t>(q)][1] * c[1] +
                                          m[static_cast<std::size_t>(q)][2] * c[2];
      return cart_to_sph_jets(std::span<const Jet2>(rc.data(), 3), SphChart::First)[static_cast<std::size_t>(i)];
    };
  };
  Mat3 rt;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) rt[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = rot[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  Diffeo d;
  d.domain = ChartId::Sph3First;
  d.codomain = ChartId::Sph3First;
  for (int i = 0; i < 3; ++i) {
    d.forward.push_back(ScalarField::native(ChartId::Sph3First, conjugated(rot, i)));
    d.inverse.push_back(ScalarField::native(ChartId::Sph3First, conjugated(rt, i)));
  }
  return d;
}

std::array<VectorField, 3> generators(ChartId id) {
  auto from_exprs = [id](const std::array<const char*, 4>& comps, int n) {
    VectorField v(id, n);
    for (int i = 0; i < n; ++i) v.set(i, ScalarField::from_expr(id, comps[static_cast<std::size_t>(i)]));
    return v;
  };
  switch (id) {
    case ChartId::Cartesian3:
      return {from_exprs({"-y", "x", "0"}, 3), from_exprs({"0", "-z", "y"}, 3),
              from_exprs({"z", "0", "-x"}, 3)};
    case ChartId::Cartesian4:
      return {from_exprs({"0", "-y", "x", "0"}, 4), from_exprs({"0", "0", "-z", "y"}, 4),
              from_exprs({"0", "z", "0", "-x"}, 4)};
    case ChartId::Sph3First:
    case ChartId::Sph3Second:
      return {from_exprs({"0", "0", "1"}, 3),
              from_exprs({"0", "-sin(phi)", "-cot(theta)*cos(phi)"}, 3),
              from_exprs({"0", "cos(phi)", "-cot(theta)*sin(phi)"}, 3)};
    case ChartId::Spacetime4First:
    case ChartId::Isothermal4First:
      return {from_exprs({"0", "0", "0", "1"}, 4),
              from_exprs({"0", "0", "-sin(phi)", "-cot(theta)*cos(phi)"}, 4),
              from_exprs({"0", "0", "cos(phi)", "-cot(theta)*sin(phi)"}, 4)};
    default:
      throw InvalidArgument("no rotation generators on this chart");
  }
}

ScalarField lift_to_chart(const ScalarField& f, ChartId chart_id_,
                          std::span<const int> coord_map) {
  if (f.chart_id() == chart_id_) return f;
  if (static_cast<int>(coord_map.size()) != f.dim())
    throw InvalidArgument("coordinate map does not match field arity");
  std::array<int, 4> map{};
  for (std::size_t i = 0; i < coord_map.size() && i < 4; ++i) map[i] = coord_map[i];
  const int k = std::min(f.dim(), 4);
  return ScalarField::native(chart_id_, [f, map, k](std::span<const Jet2> args) {
    std::array<Jet2, 4> sub;
    for (int i = 0; i < k && i < 4; ++i)
      sub[static_cast<std::size_t>(i)] = args[static_cast<std::size_t>(map[static_cast<std::size_t>(i)])];
    return f.jet(std::span<const Jet2>(sub.data(), static_cast<std::size_t>(k)));
  });
}

namespace {

// first-two-coordinates lift for 4D profiles, radial lift for 3D profiles
ScalarField lift_profile(const ScalarField& f, ChartId chart_id_) {
  if (f.chart_id() == chart_id_) return f;
  if (f.dim() == 1) {
    const int radial_index = (chart(chart_id_).dim == 4) ? 1 : 0;
    const int map1[1] = {f.chart_id() == ChartId::IsoU ? 0 : radial_index};
    return lift_to_chart(f, chart_id_, std::span<const int>(map1, 1));
  }
  if (f.dim() == 2) {
    const int map2[2] = {0, 1};
    return lift_to_chart(f, chart_id_, std::span<const int>(map2, 2));
  }
  throw InvalidArgument("profile field has unexpected arity");
}

ScalarField times_sin2_theta(const ScalarField& f, ChartId ch, int theta_idx) {
  if (f.is_structural_zero()) return ScalarField::zero(ch);
  return ScalarField::native(ch, [f, theta_idx](std::span<const Jet2> a) {
    const Jet2 s = sin(a[static_cast<std::size_t>(theta_idx)]);
    return f.jet(a) * s * s;
  });
}

ScalarField times_sin_theta(const ScalarField& f, ChartId ch, int theta_idx) {
  if (f.is_structural_zero()) return ScalarField::zero(ch);
  return ScalarField::native(ch, [f, theta_idx](std::span<const Jet2> a) {
    return f.jet(a) * sin(a[static_cast<std::size_t>(theta_idx)]);
  });
}

ScalarField minus_over_sin_theta(const ScalarField& f, ChartId ch, int theta_idx) {
  if (f.is_structural_zero()) return ScalarField::zero(ch);
  return ScalarField::native(ch, [f, theta_idx](std::span<const Jet2> a) {
    return -(f.jet(a) / sin(a[static_cast<std::size_t>(theta_idx)]));
  });
}

ScalarField minus_sin_cos_theta(ChartId ch, int theta_idx) {
  return ScalarField::native(ch, [theta_idx](std::span<const Jet2> a) {
    const Jet2& t = a[static_cast<std::size_t>(theta_idx)];
    return -(sin(t) * cos(t));
  });
}

ScalarField cot_theta(ChartId ch, int theta_idx) {
  return ScalarField::native(ch, [theta_idx](std::span<const Jet2> a) {
    return cot(a[static_cast<std::size_t>(theta_idx)]);
  });
}

void check_nonzero(const ScalarField& f, const GridSpec& grid, const char* name) {
  grid.for_each([&](std::span<const double> p) {
    if (std::abs(f.value(p)) <= 1e-12)
      throw DegenerateProfile(std::string(name) + " vanishes at a grid point");
  });
}

}  // namespace

MetricField make_invariant_metric_3d(const ScalarField& P, const ScalarField& Q,
                                     const GridSpec* check) {
  const ChartId ch = ChartId::Sph3First;
  const ScalarField p = lift_profile(P, ch);
  const ScalarField q = lift_profile(Q, ch);
  MetricField g(ch, 3);
  g.set(0, 0, p);
  g.set(1, 1, q);
  g.set(2, 2, times_sin2_theta(q, ch, 1));
  if (check) {
    check_nonzero(p, *check, "P");
    check_nonzero(q, *check, "Q");
  }
  return g;
}

ConnectionField make_invariant_connection_3d(const Profile3D& profiles) {
  const ChartId ch = ChartId::Sph3First;
  const ScalarField a111 = lift_profile(profiles.a111, ch);
  const ScalarField a122 = lift_profile(profiles.a122, ch);
  const ScalarField a212 = lift_profile(profiles.a212, ch);
  const ScalarField a = lift_profile(profiles.a, ch);
  ConnectionField conn(ch, 3);
  conn.set(0, 0, 0, a111);
  conn.set(0, 1, 1, a122);
  conn.set(0, 2, 2, times_sin2_theta(a122, ch, 1));
  conn.set(1, 0, 1, a212);
  conn.set(1, 0, 2, times_sin_theta(a, ch, 1));
  conn.set(1, 2, 2, minus_sin_cos_theta(ch, 1));
  conn.set(2, 0, 1, minus_over_sin_theta(a, ch, 1));
  conn.set(2, 0, 2, a212);
  conn.set(2, 1, 2, cot_theta(ch, 1));
  return conn;
}

MetricField make_invariant_metric_4d(const ScalarField& gtt, const ScalarField& gtr,
                                     const ScalarField& grr, const ScalarField& Q,
                                     ChartId chart4, const GridSpec* check) {
  if (chart4 != ChartId::Spacetime4First && chart4 != ChartId::Isothermal4First)
    throw InvalidArgument("4D metric must live on a 4D first spherical chart");
  const ScalarField g00 = lift_profile(gtt, chart4);
  const ScalarField g01 = lift_profile(gtr, chart4);
  const ScalarField g11 = lift_profile(grr, chart4);
  const ScalarField q = lift_profile(Q, chart4);
  MetricField g(chart4, 4);
  g.set(0, 0, g00);
  g.set(0, 1, g01);
  g.set(1, 1, g11);
  g.set(2, 2, q);
  g.set(3, 3, times_sin2_theta(q, chart4, 2));
  if (check) {
    // gtt grr - gtr^2 != 0 and Q != 0 on the grid
    check->for_each([&](std::span<const double> p) {
      const double block = g00.value(p) * g11.value(p) - g01.value(p) * g01.value(p);
      if (std::abs(block) <= 1e-12)
        throw DegenerateProfile("gtt*grr - gtr^2 vanishes at a grid point");
      if (std::abs(q.value(p)) <= 1e-12)
        throw DegenerateProfile("Q vanishes at a grid point");
    });
  }
  return g;
}

ConnectionField make_invariant_connection_4d(const Profile4D& profiles, ChartId chart4) {
  if (chart4 != ChartId::Spacetime4First && chart4 != ChartId::Isothermal4First)
    throw InvalidArgument("4D connection must live on a 4D first spherical chart");
  auto lift = [&](const ScalarField& f) { return lift_profile(f, chart4); };
  const ScalarField b000 = lift(profiles.b000), b010 = lift(profiles.b010);
  const ScalarField b110 = lift(profiles.b110), b220 = lift(profiles.b220);
  const ScalarField b001 = lift(profiles.b001), b011 = lift(profiles.b011);
  const ScalarField b111 = lift(profiles.b111), b221 = lift(profiles.b221);
  const ScalarField b022 = lift(profiles.b022), b032 = lift(profiles.b032);
  const ScalarField b122 = lift(profiles.b122), b132 = lift(profiles.b132);
  ConnectionField conn(chart4, 4);
  conn.set(0, 0, 0, b000);
  conn.set(0, 0, 1, b010);
  conn.set(0, 1, 1, b110);
  conn.set(0, 2, 2, b220);
  conn.set(0, 3, 3, times_sin2_theta(b220, chart4, 2));
  conn.set(1, 0, 0, b001);
  conn.set(1, 0, 1, b011);
  conn.set(1, 1, 1, b111);
  conn.set(1, 2, 2, b221);
  conn.set(1, 3, 3, times_sin2_theta(b221, chart4, 2));
  conn.set(2, 0, 2, b022);
  conn.set(2, 0, 3, times_sin_theta(b032, chart4, 2));
  conn.set(2, 1, 2, b122);
  conn.set(2, 1, 3, times_sin_theta(b132, chart4, 2));
  conn.set(2, 3, 3, minus_sin_cos_theta(chart4, 2));
  conn.set(3, 0, 2, minus_over_sin_theta(b032, chart4, 2));
  conn.set(3, 0, 3, b022);
  conn.set(3, 1, 2, minus_over_sin_theta(b132, chart4, 2));
  conn.set(3, 1, 3, b122);
  conn.set(3, 2, 3, cot_theta(chart4, 2));
  return conn;
}

double chart_consistency_check(const MetricField& g_first, const MetricField& g_second,
                               std::span<const std::array<double, 3>> points) {
  const Diffeo trans = transition_3d();
  double worst = 0;
  for (const auto& p : points) {
    const std::span<const double> pt(p.data(), 3);
    const MatN pulled = pullback_metric(g_second, trans, pt);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double diff = pulled.at(i, j) - g_first.at(i, j).value(pt);
        worst = std::max(worst, std::abs(diff));
      }
  }
  return worst;
}

}  // namespace metrize
