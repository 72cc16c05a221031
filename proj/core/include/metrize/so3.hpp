#pragma once

#include <array>
#include <span>

#include "metrize/calculus.hpp"
#include "metrize/fields.hpp"
#include "metrize/grid.hpp"

namespace metrize {

enum class SphChart { First, Second };
enum class Signature { Riemann, Lorentz };

using Mat3 = std::array<std::array<double, 3>, 3>;

/// First spherical chart map, (r, theta, phi) -> (x, y, z):
///   x = r sin(theta) cos(phi), y = r sin(theta) sin(phi), z = r cos(theta).
/// The formula is total on the closed coordinate box; DomainError outside it.
std::array<double, 3> sph_to_cart(const std::array<double, 3>& rtp);

/// Inverse chart maps. First chart excludes the half-plane {x >= 0, y = 0},
/// second chart (the first composed with the rotation nu: (x,y,z) ->
/// (-x,-z,-y)) excludes {x <= 0, z = 0}. Round-trips to 1e-12.
std::array<double, 3> cart_to_sph(const std::array<double, 3>& xyz, SphChart which);

/// Coordinate transition between the spherical charts, via the Cartesian
/// composition. r is preserved exactly.
std::array<double, 3> transition_first_to_second(const std::array<double, 3>& rtp);
std::array<double, 3> transition_second_to_first(const std::array<double, 3>& rtp);

/// Jet-level atlas maps for composition through other maps.
std::array<Jet2, 3> sph_to_cart_jets(std::span<const Jet2> rtp);
std::array<Jet2, 3> cart_to_sph_jets(std::span<const Jet2> xyz, SphChart which);

Diffeo sph3_first_to_cart();   // domain Sph3First, codomain Cartesian3
Diffeo sph3_second_to_cart();  // domain Sph3Second, codomain Cartesian3
Diffeo transition_3d();        // domain Sph3First, codomain Sph3Second
Diffeo rotation_cart3(const Mat3& rot);
Diffeo rotation_sph3_first(const Mat3& rot);  // chart-conjugated rotation

/// The three rotation generators on the given chart, ordered (xi, zeta,
/// lambda): xi = x d_y - y d_x, zeta = y d_z - z d_y, lambda = z d_x - x d_z
/// in Cartesian coordinates; on spherical charts xi = d_phi,
/// zeta = -sin(phi) d_theta - cot(theta) cos(phi) d_phi,
/// lambda = cos(phi) d_theta - cot(theta) sin(phi) d_phi.
std::array<VectorField, 3> generators(ChartId chart);

/// Profile functions of an invariant 3D family. Fields live on the Radial
/// chart (functions of r) or directly on Sph3First; constructors lift
/// radial profiles automatically. K, L are the reconstruction constants.
struct Profile3D {
  ScalarField a111, a122, a212, a;
  double K = 1.0;
  double L = 1.0;
};

/// The twelve profile functions of the general invariant 4D family,
/// functions of the first two coordinates.
struct Profile4D {
  ScalarField b000, b010, b110, b220;
  ScalarField b001, b011, b111, b221;
  ScalarField b022, b032, b122, b132;
};

/// g = P dr(x)dr + Q (dtheta(x)dtheta + sin^2(theta) dphi(x)dphi).
/// When `check` is given, throws DegenerateProfile if P or Q vanishes at a
/// grid point.
MetricField make_invariant_metric_3d(const ScalarField& P, const ScalarField& Q,
                                     const GridSpec* check = nullptr);

/// The invariant connection family on the first spherical chart, with the
/// fixed trigonometric factors filled in and lower-index symmetry applied.
ConnectionField make_invariant_connection_3d(const Profile3D& profiles);

/// g = gtt dt(x)dt + gtr (dt(x)dr + dr(x)dt) + grr dr(x)dr + Q dOmega^2 on a
/// 4D first spherical chart. Nondegeneracy (gtt grr - gtr^2 != 0, Q != 0)
/// checked on the grid when given.
MetricField make_invariant_metric_4d(const ScalarField& gtt, const ScalarField& gtr,
                                     const ScalarField& grr, const ScalarField& Q,
                                     ChartId chart4 = ChartId::Spacetime4First,
                                     const GridSpec* check = nullptr);

ConnectionField make_invariant_connection_4d(const Profile4D& profiles,
                                             ChartId chart4 = ChartId::Spacetime4First);

/// Pulls the second-chart metric back through the transition map and
/// returns the max-abs componentwise difference against the first-chart
/// metric over the given overlap points.
double chart_consistency_check(const MetricField& g_first, const MetricField& g_second,
                               std::span<const std::array<double, 3>> points);

/// Reinterprets a field of k variables as a chart field depending on the
/// chart coordinates selected by `coord_map`.
ScalarField lift_to_chart(const ScalarField& f, ChartId chart,
                          std::span<const int> coord_map);

}  // namespace metrize
