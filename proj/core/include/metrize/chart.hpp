#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace metrize {

/// Charts used by the atlas, the profile parameter spaces and the toy
/// test spaces. Coordinate order is fixed as (r, theta, phi) in 3D and
/// (t|u, r|v, theta, phi) in 4D.
enum class ChartId : std::uint8_t {
  Cartesian1,       // (x)
  Cartesian3,       // (x, y, z), origin removed
  Cartesian4,       // (t, x, y, z), spatial origin removed
  Sph3First,        // (r, theta, phi)
  Sph3Second,       // (r, theta, phi) of the rotated chart
  Spacetime4First,  // (t, r, theta, phi)
  Isothermal4First, // (u, v, theta, phi)
  Radial,           // (r), r > 0
  IsoU,             // (u)
  IsoV,             // (v), v > 0
  HalfPlaneTR,      // (t, r), r > 0
  HalfPlaneUV,      // (u, v), v > 0
};

struct Chart {
  ChartId id;
  int dim;
  std::array<std::string_view, 4> coords;

  /// Open-domain membership (box bounds plus excluded loci).
  bool contains(std::span<const double> p) const;
};

const Chart& chart(ChartId id);

}  // namespace metrize
