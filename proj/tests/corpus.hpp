#pragma once

#include <array>
#include <string>
#include <vector>

#include "metrize/metrizability.hpp"
#include "metrize/so3.hpp"

namespace metrize::testing {

inline constexpr double kPi = 3.14159265358979323846;

inline ScalarField radial(const char* src) {
  return ScalarField::from_expr(ChartId::Radial, src);
}
inline ScalarField iso_u(const char* src) { return ScalarField::from_expr(ChartId::IsoU, src); }
inline ScalarField iso_v(const char* src) { return ScalarField::from_expr(ChartId::IsoV, src); }
inline ScalarField pair_tr(const char* src) {
  return ScalarField::from_expr(ChartId::HalfPlaneTR, src);
}

struct ProfilePair3D {
  const char* a111;
  const char* a212;
};

/// The fixed 3D profile corpus used by the round-trip suites.
inline const std::vector<ProfilePair3D>& profile_pairs_3d() {
  static const std::vector<ProfilePair3D> pairs = {
      {"0", "1/r"},
      {"1/r", "1/r"},
      {"r/(1+r^2)", "1/(2*r)"},
      {"sin(r)/4", "1/r + 1/(1+r^2)"},
  };
  return pairs;
}

inline const std::vector<std::array<double, 2>>& constants_3d() {
  static const std::vector<std::array<double, 2>> kl = {{1, 1}, {2, 0.5}, {-1, 3}};
  return kl;
}

struct ProfileTriple4D {
  const char* a000;
  const char* a111;
  const char* a212;
};

inline const std::vector<ProfileTriple4D>& profile_triples_4d() {
  static const std::vector<ProfileTriple4D> triples = {
      {"0", "0", "1/v"},
      {"u/(1+u^2)", "1/v", "1/v"},
  };
  return triples;
}

inline const std::vector<std::array<double, 2>>& constants_4d() {
  static const std::vector<std::array<double, 2>> cc = {{1, 1}, {0.5, 2}};
  return cc;
}

/// Invariant 3D connection instances (profiles of Lemma-style families).
inline std::vector<Profile3D> connection_profiles_3d() {
  std::vector<Profile3D> out;
  {
    Profile3D p;  // Euclidean
    p.a111 = radial("0");
    p.a122 = radial("-r");
    p.a212 = radial("1/r");
    p.a = radial("0");
    out.push_back(p);
  }
  {
    Profile3D p;  // generic, with a non-metrizable A part
    p.a111 = radial("sin(r)/4");
    p.a122 = radial("r^2");
    p.a212 = radial("1/(2*r)");
    p.a = radial("2/r");
    out.push_back(p);
  }
  {
    Profile3D p;
    p.a111 = radial("1/r");
    p.a122 = radial("-r");
    p.a212 = radial("1/r");
    p.a = radial("1");
    out.push_back(p);
  }
  return out;
}

/// Invariant 4D connection instances on the (t, r) chart.
inline std::vector<Profile4D> connection_profiles_4d() {
  std::vector<Profile4D> out;
  {
    Profile4D p;  // spatially flat, zero time rows
    p.b000 = pair_tr("0");
    p.b010 = pair_tr("0");
    p.b110 = pair_tr("0");
    p.b220 = pair_tr("0");
    p.b001 = pair_tr("0");
    p.b011 = pair_tr("0");
    p.b111 = pair_tr("0");
    p.b221 = pair_tr("-r");
    p.b022 = pair_tr("0");
    p.b032 = pair_tr("0");
    p.b122 = pair_tr("1/r");
    p.b132 = pair_tr("0");
    out.push_back(p);
  }
  {
    Profile4D p;  // all twelve profiles nonzero
    p.b000 = pair_tr("t*r");
    p.b010 = pair_tr("1/r");
    p.b110 = pair_tr("sin(t)");
    p.b220 = pair_tr("r");
    p.b001 = pair_tr("t+r");
    p.b011 = pair_tr("cos(r)");
    p.b111 = pair_tr("r^2");
    p.b221 = pair_tr("-r");
    p.b022 = pair_tr("t");
    p.b032 = pair_tr("r/2");
    p.b122 = pair_tr("1/r");
    p.b132 = pair_tr("t*t");
    out.push_back(p);
  }
  return out;
}

struct MetricPair3D {
  const char* P;
  const char* Q;
};

inline const std::vector<MetricPair3D>& metric_pairs_3d() {
  static const std::vector<MetricPair3D> pairs = {
      {"1", "r^2"},
      {"1", "1"},  // cylinder-like
      {"exp(r/2)", "1 + r^4/8"},
  };
  return pairs;
}

struct MetricQuad4D {
  const char* gtt;
  const char* gtr;
  const char* grr;
  const char* Q;
};

inline const std::vector<MetricQuad4D>& metric_quads_4d() {
  static const std::vector<MetricQuad4D> quads = {
      {"1", "0", "1", "r^2"},
      {"-1", "0", "1", "r^2"},
      {"-exp(t/2)", "t*r/10", "1+r^2", "r^2"},
  };
  return quads;
}

inline GridSpec small_grid(ChartId ch, int count) {
  GridSpec g = GridSpec::defaults(ch);
  for (auto& ax : g.axes) ax.count = count;
  return g;
}

}  // namespace metrize::testing
