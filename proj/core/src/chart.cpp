#include "metrize/chart.hpp"

#include <cmath>

#include "metrize/errors.hpp"

namespace metrize {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

constexpr Chart kCharts[] = {
    {ChartId::Cartesian1, 1, {"x"}},
    {ChartId::Cartesian3, 3, {"x", "y", "z"}},
    {ChartId::Cartesian4, 4, {"t", "x", "y", "z"}},
    {ChartId::Sph3First, 3, {"r", "theta", "phi"}},
    {ChartId::Sph3Second, 3, {"r", "theta", "phi"}},
    {ChartId::Spacetime4First, 4, {"t", "r", "theta", "phi"}},
    {ChartId::Isothermal4First, 4, {"u", "v", "theta", "phi"}},
    {ChartId::Radial, 1, {"r"}},
    {ChartId::IsoU, 1, {"u"}},
    {ChartId::IsoV, 1, {"v"}},
    {ChartId::HalfPlaneTR, 2, {"t", "r"}},
    {ChartId::HalfPlaneUV, 2, {"u", "v"}},
};

bool spherical_box(double r, double theta, double phi) {
  return r > 0.0 && theta > 0.0 && theta < kPi && phi > 0.0 && phi < kTwoPi;
}

}  // namespace

const Chart& chart(ChartId id) { return kCharts[static_cast<std::size_t>(id)]; }

bool Chart::contains(std::span<const double> p) const {
  if (static_cast<int>(p.size()) != dim) return false;
  switch (id) {
    case ChartId::Cartesian1:
      return true;
    case ChartId::Cartesian3:
      return p[0] * p[0] + p[1] * p[1] + p[2] * p[2] > 0.0;
    case ChartId::Cartesian4:
      return p[1] * p[1] + p[2] * p[2] + p[3] * p[3] > 0.0;
    case ChartId::Sph3First:
    case ChartId::Sph3Second:
      return spherical_box(p[0], p[1], p[2]);
    case ChartId::Spacetime4First:
      return p[1] > 0.0 && spherical_box(1.0, p[2], p[3]);
    case ChartId::Isothermal4First:
      return p[1] > 0.0 && spherical_box(1.0, p[2], p[3]);
    case ChartId::Radial:
      return p[0] > 0.0;
    case ChartId::IsoU:
      return true;
    case ChartId::IsoV:
      return p[0] > 0.0;
    case ChartId::HalfPlaneTR:
    case ChartId::HalfPlaneUV:
      return p[1] > 0.0;
  }
  return false;
}

}  // namespace metrize
