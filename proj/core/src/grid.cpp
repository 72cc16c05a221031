#include "metrize/grid.hpp"

#include <cmath>

#include "metrize/errors.hpp"

namespace metrize {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<double> GridAxis::points() const {
  std::vector<double> p;
  p.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    p.push_back(lo);
    return p;
  }
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) p.push_back(lo + step * i);
  return p;
}

GridSpec GridSpec::defaults(ChartId id) {
  GridSpec g;
  g.chart_id = id;
  const GridAxis radial{0.5, 3.0, 20};
  const GridAxis polar{0.2, kPi - 0.2, 20};
  const GridAxis azimuth{0.1, 2.0 * kPi - 0.1, 20};
  const GridAxis line{-1.0, 1.0, 20};
  const GridAxis box{0.3, 1.9, 20};
  switch (id) {
    case ChartId::Sph3First:
    case ChartId::Sph3Second:
      g.axes = {radial, polar, azimuth};
      break;
    case ChartId::Spacetime4First:
      g.axes = {line, radial, polar, azimuth};
      break;
    case ChartId::Isothermal4First:
      g.axes = {line, radial, polar, azimuth};
      break;
    case ChartId::Radial:
      g.axes = {radial};
      break;
    case ChartId::IsoU:
      g.axes = {line};
      break;
    case ChartId::IsoV:
      g.axes = {radial};
      break;
    case ChartId::HalfPlaneTR:
    case ChartId::HalfPlaneUV:
      g.axes = {line, radial};
      break;
    case ChartId::Cartesian1:
      g.axes = {line};
      break;
    case ChartId::Cartesian3:
      g.axes = {box, box, box};
      break;
    case ChartId::Cartesian4:
      g.axes = {line, box, box, box};
      break;
  }
  return g;
}

void GridSpec::for_each(const std::function<void(std::span<const double>)>& visit) const {
  const int n = dim();
  std::array<std::vector<double>, 4> pts;
  for (int i = 0; i < n; ++i) pts[static_cast<std::size_t>(i)] = axes[static_cast<std::size_t>(i)].points();
  std::array<double, 4> p{};
  std::array<int, 4> idx{};
  for (;;) {
    for (int i = 0; i < n; ++i)
      p[static_cast<std::size_t>(i)] =
          pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    visit(std::span<const double>(p.data(), static_cast<std::size_t>(n)));
    int i = n - 1;
    while (i >= 0) {
      if (++idx[static_cast<std::size_t>(i)] <
          static_cast<int>(pts[static_cast<std::size_t>(i)].size()))
        break;
      idx[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
}

void GridSpec::validate() const {
  const Chart& c = chart(chart_id);
  if (dim() != c.dim) throw InvalidArgument("grid axis count does not match chart dimension");
  for (const auto& ax : axes) {
    if (ax.count < 2) throw InvalidArgument("grid axis needs at least 2 points");
    if (!(ax.lo < ax.hi)) throw InvalidArgument("grid axis bounds must satisfy lo < hi");
  }
  std::array<double, 4> lo{}, hi{};
  for (int i = 0; i < dim(); ++i) {
    lo[static_cast<std::size_t>(i)] = axes[static_cast<std::size_t>(i)].lo;
    hi[static_cast<std::size_t>(i)] = axes[static_cast<std::size_t>(i)].hi;
  }
  if (!c.contains(std::span<const double>(lo.data(), static_cast<std::size_t>(dim()))) ||
      !c.contains(std::span<const double>(hi.data(), static_cast<std::size_t>(dim()))))
    throw InvalidArgument("grid bounds leave the chart domain");
}

}  // namespace metrize
