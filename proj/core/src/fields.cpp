#include "metrize/fields.hpp"

#include <algorithm>

#include "metrize/errors.hpp"

namespace metrize {

namespace {

std::vector<std::string> coord_names(ChartId id) {
  const Chart& c = chart(id);
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(c.dim));
  for (int i = 0; i < c.dim; ++i) names.emplace_back(c.coords[static_cast<std::size_t>(i)]);
  return names;
}

}  // namespace

ScalarField ScalarField::from_expr(ChartId chart_id_, Expr e) {
  const Chart& c = chart(chart_id_);
  if (static_cast<int>(e.variables().size()) != c.dim)
    throw InvalidArgument("expression variable list does not match chart dimension");
  ScalarField f;
  f.chart_ = chart_id_;
  f.dim_ = c.dim;
  f.exact_order_ = 2;
  f.expr_ = std::make_shared<const Expr>(std::move(e));
  return f;
}

ScalarField ScalarField::from_expr(ChartId chart_id_, std::string_view src) {
  const auto names = coord_names(chart_id_);
  return from_expr(chart_id_, Expr::parse(src, names));
}

ScalarField ScalarField::constant(ChartId chart_id_, double c) {
  ScalarField f;
  f.chart_ = chart_id_;
  f.dim_ = chart(chart_id_).dim;
  f.exact_order_ = 2;
  f.structural_zero_ = (c == 0.0);
  f.fn_ = [c](std::span<const Jet2> args) {
    return Jet2::constant(c, args.empty() ? 0 : args[0].dim());
  };
  return f;
}

ScalarField ScalarField::native(ChartId chart_id_, Fn fn, int exact_order) {
  ScalarField f;
  f.chart_ = chart_id_;
  f.dim_ = chart(chart_id_).dim;
  f.exact_order_ = exact_order;
  f.fn_ = std::move(fn);
  return f;
}

Jet2 ScalarField::jet(std::span<const double> pt) const {
  if (static_cast<int>(pt.size()) != dim_ || dim_ > Jet2::kMaxDim)
    throw InvalidArgument("point dimension mismatch");
  if (expr_) return expr_->eval_jet(pt);
  std::array<Jet2, Jet2::kMaxDim> seeds;
  for (int i = 0; i < dim_; ++i) seeds[i] = Jet2::variable(pt[i], i, dim_);
  return fn_(std::span<const Jet2>(seeds.data(), static_cast<std::size_t>(dim_)));
}

Jet2 ScalarField::jet(std::span<const Jet2> args) const {
  if (static_cast<int>(args.size()) != dim_) throw InvalidArgument("argument count mismatch");
  if (expr_) return expr_->eval_jet(args);
  return fn_(args);
}

double ScalarField::value(std::span<const double> pt) const {
  if (static_cast<int>(pt.size()) != dim_ || dim_ > Jet2::kMaxDim)
    throw InvalidArgument("point dimension mismatch");
  if (expr_) return expr_->eval(pt);
  std::array<Jet2, Jet2::kMaxDim> seeds;
  for (int i = 0; i < dim_; ++i) seeds[i] = Jet2::constant(pt[i], 0);
  return fn_(std::span<const Jet2>(seeds.data(), static_cast<std::size_t>(dim_))).value();
}

MetricField::MetricField(ChartId chart_id_, int n) : chart_(chart_id_), n_(n) {
  comp_.resize(static_cast<std::size_t>(Jet2::tri_count(n)));
  for (auto& f : comp_) f = ScalarField::zero(chart_id_);
}

int MetricField::exact_order() const {
  int order = 2;
  for (const auto& f : comp_) order = std::min(order, f.exact_order());
  return order;
}

ConnectionField::ConnectionField(ChartId chart_id_, int n)
    : chart_(chart_id_), n_(n), tri_(static_cast<std::size_t>(Jet2::tri_count(n))) {
  comp_.resize(static_cast<std::size_t>(n) * tri_);
  for (auto& f : comp_) f = ScalarField::zero(chart_id_);
}

int ConnectionField::exact_order() const {
  int order = 2;
  for (const auto& f : comp_) order = std::min(order, f.exact_order());
  return order;
}

VectorField::VectorField(ChartId chart_id_, int n) : chart_(chart_id_), n_(n) {
  comp_.resize(static_cast<std::size_t>(n));
  for (auto& f : comp_) f = ScalarField::zero(chart_id_);
}

Diffeo Diffeo::identity(ChartId chart_id_) {
  const Chart& c = chart(chart_id_);
  Diffeo d;
  d.domain = chart_id_;
  d.codomain = chart_id_;
  for (int i = 0; i < c.dim; ++i) {
    auto pick = [i](std::span<const Jet2> args) { return args[static_cast<std::size_t>(i)]; };
    d.forward.push_back(ScalarField::native(chart_id_, pick));
    d.inverse.push_back(ScalarField::native(chart_id_, pick));
  }
  return d;
}

}  // namespace metrize
