#pragma once

#include <optional>
#include <string>
#include <vector>

#include "metrize/grid.hpp"
#include "metrize/so3.hpp"

namespace metrize {

/// Maximum absolute residual of a grid sweep, with the witness point, the
/// generator index (when applicable) and the component where it occurred.
struct Residual {
  double value = 0;
  std::array<double, 4> point{};
  int dim = 0;
  int generator = -1;  // 0 = xi, 1 = zeta, 2 = lambda
  std::array<int, 3> component{{-1, -1, -1}};
};

enum class MetrizStatus { Metrizable, NonMetrizable, Inconclusive };

struct Violation {
  std::string condition;
  double residual = 0;
  std::array<double, 4> witness{};
  int witness_dim = 0;
};

struct RatioSample {
  std::array<double, 2> point{};
  int point_dim = 1;  // (r) in 3D, (u, v) in 4D
  double rho = 0;
};

/// Outcome of a metrizability check. Metrizable implies no violations and
/// all residuals within the configured tolerances; Inconclusive is
/// reserved for quadrature non-convergence or grid/domain violations.
struct Verdict {
  MetrizStatus status = MetrizStatus::Inconclusive;
  std::vector<Violation> violated;
  bool has_ratio = false;
  double ratio_constant = 0;  // L/K in 3D, C2/C1 in 4D
  double ratio_residual = 0;  // max |rho - rho(base)| over the grid
  bool ratio_unconstrained = false;
  std::vector<RatioSample> ratio_samples;
  std::string note;

  bool metrizable() const { return status == MetrizStatus::Metrizable; }
};

/// Max-abs residual of the invariance equation for a connection against
/// the rotation generators over the grid (all three, or just
/// `only_generator` when it is 0, 1 or 2).
Residual invariance_residual(const ConnectionField& conn, const GridSpec& grid,
                             int only_generator = -1);

/// Max-abs residual of the Killing equations for a (0,2)-tensor field
/// against the rotation generators over the grid.
Residual killing_residual(const MetricField& g, const GridSpec& grid,
                          int only_generator = -1);

/// Profile extraction at theta = pi/2 plus a full-grid residual against
/// the rebuilt family template. `in_family` is false when the residual
/// exceeds tol_residual (the input is then not of the invariant family).
struct Classification3D {
  bool in_family = false;
  double residual = 0;
  std::array<double, 4> witness{};
  Profile3D profiles;  // radial slices, evaluable anywhere in r
};
Classification3D classify_connection_3d(const ConnectionField& conn, const GridSpec& grid);

/// Same extraction for a 4D connection: the twelve profiles are sliced at
/// theta = pi/2 as functions of the first two coordinates.
struct Classification4D {
  bool in_family = false;
  double residual = 0;
  std::array<double, 4> witness{};
  Profile4D profiles;
};
Classification4D classify_connection_4d(const ConnectionField& conn, const GridSpec& grid);

/// Decides metrizability of an invariant-family connection. Profiles must
/// be radial (functions of r alone).
Verdict metrizability_check_3d(const Profile3D& profiles, const GridSpec& grid);

/// Builds the metrizable-family connection with
///   nabla^1_22 = -(L/K) A212 exp(2 int_1^r (A212 - A111) dt)
/// and the fixed angular components.
ConnectionField make_metrizable_connection_3d(const ScalarField& a111,
                                              const ScalarField& a212, double L_over_K,
                                              const Tolerances& tol);

/// Reconstructs g with P = K exp(2 int_1^r A111), Q = L exp(2 int_1^r A212);
/// quadrature-backed values with analytic derivatives.
MetricField reconstruct_metric_3d(const ScalarField& a111, const ScalarField& a212,
                                  double K, double L, const Tolerances& tol);

/// Decides metrizability of a 4D invariant family given in isothermal
/// coordinates (u, v). Profiles are functions of (u, v); the first two
/// grid axes are the (u, v) axes.
Verdict metrizability_check_4d(const Profile4D& profiles, const GridSpec& grid,
                               Signature sig);

ConnectionField make_metrizable_connection_4d(const ScalarField& a000,
                                              const ScalarField& a111,
                                              const ScalarField& a212,
                                              double C2_over_C1, Signature sig,
                                              const Tolerances& tol);

/// Reconstructs g = P(u,v)(du(x)du +- dv(x)dv) + Q(v) dOmega^2 with
///   P = C1 exp(2 int_1^u A000) exp(2 int_1^v A111),
///   Q = C2 exp(2 int_1^v A212).
MetricField reconstruct_metric_4d(const ScalarField& a000, const ScalarField& a111,
                                  const ScalarField& a212, double C1, double C2,
                                  Signature sig, const Tolerances& tol);

/// Max componentwise |conn - christoffel(g)| over the grid.
Residual verify_levi_civita(const ConnectionField& conn, const MetricField& g,
                            const GridSpec& grid);

/// Scalar field scale * exp(2 int_base^s w(t) dt) of one variable, with
/// derivatives supplied analytically from the jet of w.
ScalarField exp2int_field(const ScalarField& w, double scale, double quad_tol,
                          double base = 1.0);

// condition tags used by Verdict::violated
inline constexpr const char* kCondA3d = "nabla^2_13 = 0";
inline constexpr const char* kCondDegenerate3d = "nabla^1_22 = 0 (degenerate A212 = 0 branch)";
inline constexpr const char* kCondRatioConstancy = "ratio-constancy";
inline constexpr const char* kCondRatioNonzero = "ratio-nonzero";

}  // namespace metrize
