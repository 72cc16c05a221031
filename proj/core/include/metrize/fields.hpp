#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "metrize/chart.hpp"
#include "metrize/expr.hpp"
#include "metrize/jet.hpp"

namespace metrize {

/// A scalar field on a chart: evaluates to a second-order jet at any
/// in-domain point. Backed by a parsed expression or by a native rule
/// (quadrature-backed value with analytic derivatives, composed maps, ...).
///
/// `exact_order` records how many derivative levels are trustworthy:
/// 2 for full jets, 1 when the Hessian is not available (derived fields
/// such as pointwise Christoffel fields), 0 for value-only fields.
/// Evaluation at the same point is reproducible bit-for-bit.
class ScalarField {
 public:
  using Fn = std::function<Jet2(std::span<const Jet2>)>;

  ScalarField() = default;

  static ScalarField from_expr(ChartId chart, Expr e);
  static ScalarField from_expr(ChartId chart, std::string_view src);
  static ScalarField constant(ChartId chart, double c);
  static ScalarField zero(ChartId chart) { return constant(chart, 0.0); }
  static ScalarField native(ChartId chart, Fn fn, int exact_order = 2);

  Jet2 jet(std::span<const double> pt) const;
  Jet2 jet(std::span<const Jet2> args) const;
  double value(std::span<const double> pt) const;

  ChartId chart_id() const { return chart_; }
  int dim() const { return dim_; }
  int exact_order() const { return exact_order_; }
  bool valid() const { return dim_ > 0; }

  /// True for fields constructed by `constant` with value 0 (lets sweeps
  /// skip structurally-zero components).
  bool is_structural_zero() const { return structural_zero_; }

 private:
  ChartId chart_ = ChartId::Radial;
  int dim_ = 0;
  int exact_order_ = 2;
  bool structural_zero_ = false;
  std::shared_ptr<const Expr> expr_;
  Fn fn_;
};

/// Symmetric (0,2)-tensor field: chart plus an n x n array of scalar
/// fields stored packed, so components (i,j) and (j,i) are the same field.
class MetricField {
 public:
  MetricField() = default;
  MetricField(ChartId chart, int n);

  const ScalarField& at(int i, int j) const { return comp_[Jet2::tri_index(i, j)]; }
  void set(int i, int j, ScalarField f) { comp_[Jet2::tri_index(i, j)] = std::move(f); }

  ChartId chart_id() const { return chart_; }
  int dim() const { return n_; }
  int exact_order() const;

 private:
  ChartId chart_ = ChartId::Radial;
  int n_ = 0;
  std::vector<ScalarField> comp_;
};

/// Symmetric affine connection components: n x n x n array of scalar
/// fields with the lower index pair stored packed, so (i,j,k) and (i,k,j)
/// are the same field.
class ConnectionField {
 public:
  ConnectionField() = default;
  ConnectionField(ChartId chart, int n);

  const ScalarField& at(int i, int j, int k) const {
    return comp_[static_cast<std::size_t>(i) * tri_ + Jet2::tri_index(j, k)];
  }
  void set(int i, int j, int k, ScalarField f) {
    comp_[static_cast<std::size_t>(i) * tri_ + Jet2::tri_index(j, k)] = std::move(f);
  }

  ChartId chart_id() const { return chart_; }
  int dim() const { return n_; }
  int exact_order() const;

 private:
  ChartId chart_ = ChartId::Radial;
  int n_ = 0;
  std::size_t tri_ = 0;
  std::vector<ScalarField> comp_;
};

/// Vector field: chart plus n component scalar fields.
class VectorField {
 public:
  VectorField() = default;
  VectorField(ChartId chart, int n);

  const ScalarField& at(int i) const { return comp_[static_cast<std::size_t>(i)]; }
  void set(int i, ScalarField f) { comp_[static_cast<std::size_t>(i)] = std::move(f); }

  ChartId chart_id() const { return chart_; }
  int dim() const { return n_; }

 private:
  ChartId chart_ = ChartId::Radial;
  int n_ = 0;
  std::vector<ScalarField> comp_;
};

/// Coordinate form of a diffeomorphism between two charts.
/// `forward` maps domain-chart coordinates to codomain-chart coordinates
/// (the codomain is where transported tensors are read from), `inverse`
/// the other way around; forward o inverse = id to 1e-10 at sampled points.
struct Diffeo {
  ChartId domain = ChartId::Radial;
  ChartId codomain = ChartId::Radial;
  std::vector<ScalarField> forward;  // fields on `domain`
  std::vector<ScalarField> inverse;  // fields on `codomain`

  int dim() const { return static_cast<int>(forward.size()); }

  static Diffeo identity(ChartId chart);
};

}  // namespace metrize
