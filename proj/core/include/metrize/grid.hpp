#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "metrize/chart.hpp"

namespace metrize {

struct GridAxis {
  double lo = 0;
  double hi = 1;
  int count = 20;

  std::vector<double> points() const;
};

struct Tolerances {
  double residual = 1e-8;
  double ratio = 1e-7;
  double quadrature = 1e-11;
};

/// Uniform tensor-product evaluation grid over a chart, plus the working
/// tolerance set. Default bounds stay clear of the coordinate
/// singularities sin(theta) = 0 and r = 0.
struct GridSpec {
  ChartId chart_id = ChartId::Sph3First;
  std::vector<GridAxis> axes;
  Tolerances tol;

  static GridSpec defaults(ChartId chart);

  int dim() const { return static_cast<int>(axes.size()); }

  /// Visits every grid point in row-major coordinate order.
  void for_each(const std::function<void(std::span<const double>)>& visit) const;

  /// Throws InvalidArgument when bounds touch excluded loci or counts < 2.
  void validate() const;
};

}  // namespace metrize
