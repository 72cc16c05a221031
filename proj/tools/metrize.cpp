#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "identities.hpp"
#include "metrize/calculus.hpp"
#include "metrize/config.hpp"
#include "metrize/errors.hpp"
#include "metrize/metrizability.hpp"
#include "metrize/report.hpp"
#include "metrize/so3.hpp"

namespace metrize::cli {

namespace {

// exit-code contract: 0 pass, 1 check failed, 2 input/config error,
// 3 numerical inconclusiveness
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInconclusive = 3;

struct Options {
  std::string config_path;
  std::string report_path;
  std::uint64_t seed = 0;
  std::vector<std::string> grid_overrides;
};

std::vector<std::string> chart_vars(ChartId id) {
  const Chart& c = chart(id);
  std::vector<std::string> names;
  for (int i = 0; i < c.dim; ++i) names.emplace_back(c.coords[static_cast<std::size_t>(i)]);
  return names;
}

ScalarField parse_field(const RunConfig& cfg, const std::string& key, ChartId ch,
                        const std::vector<std::string>& vars) {
  const auto it = cfg.exprs.find(key);
  if (it == cfg.exprs.end()) return ScalarField::zero(ch);
  try {
    return ScalarField::from_expr(ch, Expr::parse(it->second, vars));
  } catch (const Error& e) {
    throw ConfigError("key '" + key + "': " + e.what());
  }
}

ScalarField require_field(const RunConfig& cfg, const std::string& key, ChartId ch,
                          const std::vector<std::string>& vars) {
  if (cfg.exprs.find(key) == cfg.exprs.end())
    throw ConfigError("missing required expression '" + key + "'");
  return parse_field(cfg, key, ch, vars);
}

std::string coord_name(ChartId ch, int i) {
  return std::string(chart(ch).coords[static_cast<std::size_t>(i)]);
}

std::string component_name(ChartId ch, const std::array<int, 3>& comp, bool metric) {
  if (comp[0] < 0) return "";
  if (metric)
    return "g_(" + coord_name(ch, comp[0]) + "," + coord_name(ch, comp[1]) + ")";
  return "nabla^" + coord_name(ch, comp[0]) + "_(" + coord_name(ch, comp[1]) + "," +
         coord_name(ch, comp[2]) + ")";
}

const char* generator_name(int g) {
  switch (g) {
    case 0: return "xi";
    case 1: return "zeta";
    case 2: return "lambda";
  }
  return "";
}

CheckEntry entry_from_residual(const std::string& name, const Residual& r, double tol,
                               ChartId ch, bool metric) {
  CheckEntry e;
  e.name = name;
  e.max_residual = r.value;
  e.tolerance = tol;
  e.pass = r.value <= tol;
  e.witness = r.point;
  e.witness_dim = r.dim;
  std::string detail;
  if (r.generator >= 0) detail = std::string("generator ") + generator_name(r.generator);
  const std::string comp = component_name(ch, r.component, metric);
  if (!comp.empty()) detail += (detail.empty() ? "" : ", ") + ("component " + comp);
  e.detail = detail;
  return e;
}

// ---- input builders --------------------------------------------------------

MetricField build_metric(const RunConfig& cfg) {
  const ChartId ch = input_chart(cfg);
  const auto vars = chart_vars(ch);
  if (cfg.dimension == 3) {
    const ScalarField P = require_field(cfg, "P", ch, vars);
    const ScalarField Q = require_field(cfg, "Q", ch, vars);
    return make_invariant_metric_3d(P, Q);
  }
  const ScalarField gtt = require_field(cfg, "g_tt", ch, vars);
  const ScalarField gtr = parse_field(cfg, "g_tr", ch, vars);
  const ScalarField grr = require_field(cfg, "g_rr", ch, vars);
  const ScalarField q = require_field(cfg, "Q", ch, vars);
  return make_invariant_metric_4d(gtt, gtr, grr, q, ch);
}

ConnectionField build_connection_family(const RunConfig& cfg) {
  const ChartId ch = input_chart(cfg);
  const auto vars = chart_vars(ch);
  if (cfg.dimension == 3) {
    Profile3D p;
    p.a111 = parse_field(cfg, "A111", ch, vars);
    p.a122 = parse_field(cfg, "A122", ch, vars);
    p.a212 = parse_field(cfg, "A212", ch, vars);
    p.a = parse_field(cfg, "A", ch, vars);
    return make_invariant_connection_3d(p);
  }
  Profile4D p;
  p.b000 = parse_field(cfg, "B000", ch, vars);
  p.b010 = parse_field(cfg, "B010", ch, vars);
  p.b110 = parse_field(cfg, "B110", ch, vars);
  p.b220 = parse_field(cfg, "B220", ch, vars);
  p.b001 = parse_field(cfg, "B001", ch, vars);
  p.b011 = parse_field(cfg, "B011", ch, vars);
  p.b111 = parse_field(cfg, "B111", ch, vars);
  p.b221 = parse_field(cfg, "B221", ch, vars);
  p.b022 = parse_field(cfg, "B022", ch, vars);
  p.b032 = parse_field(cfg, "B032", ch, vars);
  p.b122 = parse_field(cfg, "B122", ch, vars);
  p.b132 = parse_field(cfg, "B132", ch, vars);
  return make_invariant_connection_4d(p, ch);
}

ConnectionField build_connection_full(const RunConfig& cfg) {
  const ChartId ch = input_chart(cfg);
  const auto vars = chart_vars(ch);
  const int n = cfg.dimension;
  ConnectionField conn(ch, n);
  const int lo = n == 3 ? 1 : 0;
  for (const auto& [key, value] : cfg.exprs) {
    (void)value;
    const int i = key[4] - '0' - lo;
    const int j = key[5] - '0' - lo;
    const int k = key[6] - '0' - lo;
    conn.set(i, j, k, parse_field(cfg, key, ch, vars));
  }
  return conn;
}

ConnectionField build_connection(const RunConfig& cfg) {
  if (cfg.kind == InputKind::Metric)
    throw ConfigError("this command needs a connection input, got kind = metric");
  return cfg.kind == InputKind::ConnectionFamily ? build_connection_family(cfg)
                                                 : build_connection_full(cfg);
}

// ---- commands --------------------------------------------------------------

Report cmd_invariance(const RunConfig& cfg) {
  Report rep;
  rep.dimension = cfg.dimension;
  const ConnectionField conn = build_connection(cfg);
  const GridSpec grid = build_grid(cfg);
  for (int g = 0; g < 3; ++g) {
    const Residual worst = invariance_residual(conn, grid, g);
    rep.checks.push_back(entry_from_residual(std::string("invariance-") + generator_name(g),
                                             worst, grid.tol.residual, conn.chart_id(),
                                             false));
  }
  return rep;
}

Report cmd_killing(const RunConfig& cfg) {
  Report rep;
  rep.dimension = cfg.dimension;
  if (cfg.kind != InputKind::Metric)
    throw ConfigError("killing needs a metric input");
  const MetricField g = build_metric(cfg);
  const GridSpec grid = build_grid(cfg);
  for (int q = 0; q < 3; ++q) {
    const Residual worst = killing_residual(g, grid, q);
    rep.checks.push_back(entry_from_residual(std::string("killing-") + generator_name(q),
                                             worst, grid.tol.residual, g.chart_id(), true));
  }
  return rep;
}

Report cmd_metrizable(const RunConfig& cfg) {
  Report rep;
  rep.dimension = cfg.dimension;
  rep.constants_name = cfg.dimension == 3 ? "L/K" : "C2/C1";
  if (cfg.kind == InputKind::Metric)
    throw ConfigError("metrizable needs a connection input");
  if (cfg.dimension == 4 && !cfg.signature)
    throw ConfigError("dimension 4 requires 'signature = riemann' or 'signature = lorentz'");
  const GridSpec grid = build_grid(cfg);

  if (cfg.dimension == 3) {
    Profile3D profiles;
    if (cfg.kind == InputKind::ConnectionFull) {
      const ConnectionField conn = build_connection_full(cfg);
      const Classification3D cls = classify_connection_3d(conn, grid);
      CheckEntry e;
      e.name = "family-classification";
      e.max_residual = cls.residual;
      e.tolerance = grid.tol.residual;
      e.pass = cls.in_family;
      e.witness = cls.witness;
      e.witness_dim = 3;
      rep.checks.push_back(e);
      if (!cls.in_family) {
        Verdict v;
        v.status = MetrizStatus::NonMetrizable;
        v.violated.push_back({"invariant-family template residual", cls.residual,
                              cls.witness, 3});
        rep.verdict = v;
        return rep;
      }
      profiles = cls.profiles;
    } else {
      const std::vector<std::string> rvar = {"r"};
      profiles.a111 = parse_field(cfg, "A111", ChartId::Radial, rvar);
      profiles.a122 = parse_field(cfg, "A122", ChartId::Radial, rvar);
      profiles.a212 = parse_field(cfg, "A212", ChartId::Radial, rvar);
      profiles.a = parse_field(cfg, "A", ChartId::Radial, rvar);
    }
    rep.verdict = metrizability_check_3d(profiles, grid);
    return rep;
  }

  Profile4D profiles;
  if (cfg.kind == InputKind::ConnectionFull) {
    const ConnectionField conn = build_connection_full(cfg);
    const Classification4D cls = classify_connection_4d(conn, grid);
    CheckEntry e;
    e.name = "family-classification";
    e.max_residual = cls.residual;
    e.tolerance = grid.tol.residual;
    e.pass = cls.in_family;
    e.witness = cls.witness;
    e.witness_dim = 4;
    rep.checks.push_back(e);
    if (!cls.in_family) {
      Verdict v;
      v.status = MetrizStatus::NonMetrizable;
      v.violated.push_back({"invariant-family template residual", cls.residual, cls.witness, 4});
      rep.verdict = v;
      return rep;
    }
    profiles = cls.profiles;
  } else {
    const std::vector<std::string> uv = {"u", "v"};
    const ChartId pc = ChartId::HalfPlaneUV;
    profiles.b000 = parse_field(cfg, "B000", pc, uv);
    profiles.b010 = parse_field(cfg, "B010", pc, uv);
    profiles.b110 = parse_field(cfg, "B110", pc, uv);
    profiles.b220 = parse_field(cfg, "B220", pc, uv);
    profiles.b001 = parse_field(cfg, "B001", pc, uv);
    profiles.b011 = parse_field(cfg, "B011", pc, uv);
    profiles.b111 = parse_field(cfg, "B111", pc, uv);
    profiles.b221 = parse_field(cfg, "B221", pc, uv);
    profiles.b022 = parse_field(cfg, "B022", pc, uv);
    profiles.b032 = parse_field(cfg, "B032", pc, uv);
    profiles.b122 = parse_field(cfg, "B122", pc, uv);
    profiles.b132 = parse_field(cfg, "B132", pc, uv);
  }
  rep.verdict = metrizability_check_4d(profiles, grid, *cfg.signature);
  return rep;
}

Report cmd_reconstruct(const RunConfig& cfg) {
  Report rep;
  rep.dimension = cfg.dimension;
  rep.constants_name = cfg.dimension == 3 ? "L/K" : "C2/C1";
  const GridSpec grid = build_grid(cfg);

  if (cfg.dimension == 3) {
    if (!cfg.has_constant("K") || !cfg.has_constant("L"))
      throw ConfigError("reconstruct needs constants K and L");
    const double K = cfg.constant_or("K", 0), L = cfg.constant_or("L", 0);
    if (K == 0.0 || L == 0.0) throw ConfigError("constants K and L must be nonzero");
    const std::vector<std::string> rvar = {"r"};
    const ScalarField a111 = require_field(cfg, "A111", ChartId::Radial, rvar);
    const ScalarField a212 = require_field(cfg, "A212", ChartId::Radial, rvar);
    const ConnectionField conn = make_metrizable_connection_3d(a111, a212, L / K, grid.tol);
    const MetricField g = reconstruct_metric_3d(a111, a212, K, L, grid.tol);
    rep.checks.push_back(entry_from_residual("levi-civita-roundtrip",
                                             verify_levi_civita(conn, g, grid),
                                             grid.tol.residual, g.chart_id(), false));
    rep.checks.push_back(entry_from_residual("killing-residual", killing_residual(g, grid),
                                             grid.tol.residual, g.chart_id(), true));
    SampleTable t;
    t.header = {"r", "P", "Q"};
    for (const double r : grid.axes[0].points()) {
      const double p3[3] = {r, 1.5707963267948966, 3.0};
      const std::span<const double> pt(p3, 3);
      t.rows.push_back({r, g.at(0, 0).value(pt), g.at(1, 1).value(pt)});
    }
    rep.samples = t;
    return rep;
  }

  if (!cfg.signature)
    throw ConfigError("dimension 4 requires 'signature = riemann' or 'signature = lorentz'");
  if (!cfg.has_constant("C1") || !cfg.has_constant("C2"))
    throw ConfigError("reconstruct needs constants C1 and C2");
  const double C1 = cfg.constant_or("C1", 0), C2 = cfg.constant_or("C2", 0);
  if (C1 == 0.0 || C2 == 0.0) throw ConfigError("constants C1 and C2 must be nonzero");
  const std::vector<std::string> uvar = {"u"}, vvar = {"v"};
  const ScalarField a000 = require_field(cfg, "A000", ChartId::IsoU, uvar);
  const ScalarField a111 = require_field(cfg, "A111", ChartId::IsoV, vvar);
  const ScalarField a212 = require_field(cfg, "A212", ChartId::IsoV, vvar);
  const ConnectionField conn =
      make_metrizable_connection_4d(a000, a111, a212, C2 / C1, *cfg.signature, grid.tol);
  const MetricField g = reconstruct_metric_4d(a000, a111, a212, C1, C2, *cfg.signature, grid.tol);
  rep.checks.push_back(entry_from_residual("levi-civita-roundtrip",
                                           verify_levi_civita(conn, g, grid),
                                           grid.tol.residual, g.chart_id(), false));
  rep.checks.push_back(entry_from_residual("killing-residual", killing_residual(g, grid),
                                           grid.tol.residual, g.chart_id(), true));
  SampleTable t;
  t.header = {"u", "v", "P", "Q"};
  for (const double u : grid.axes[0].points())
    for (const double v : grid.axes[1].points()) {
      const double p4[4] = {u, v, 1.5707963267948966, 3.0};
      const std::span<const double> pt(p4, 4);
      t.rows.push_back({u, v, g.at(0, 0).value(pt), g.at(2, 2).value(pt)});
    }
  rep.samples = t;
  return rep;
}

int decide_exit(Report& rep) {
  bool fail = false;
  for (const auto& c : rep.checks) fail = fail || !c.pass;
  if (rep.verdict) {
    if (rep.verdict->status == MetrizStatus::Inconclusive) return kExitInconclusive;
    if (rep.verdict->status == MetrizStatus::NonMetrizable) fail = true;
  }
  return fail ? kExitFail : kExitPass;
}

int run_command(const std::string& name, const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.command = name;
  rep.seed = opt.seed;
  try {
    if (name == "identities") {
      rep.dimension = 3;
      rep.config_digest = digest_hex("builtin");
      rep.checks = run_identity_suites(opt.seed);
    } else {
      if (opt.config_path.empty()) throw ConfigError("--config is required");
      RunConfig cfg = load_config(opt.config_path);
      for (const auto& ov : opt.grid_overrides) apply_grid_override(cfg, ov);
      rep.config_digest = digest_hex(cfg.raw);
      if (name == "invariance")
        rep = cmd_invariance(cfg);
      else if (name == "killing")
        rep = cmd_killing(cfg);
      else if (name == "metrizable")
        rep = cmd_metrizable(cfg);
      else
        rep = cmd_reconstruct(cfg);
      rep.command = name;
      rep.seed = opt.seed;
      rep.config_digest = digest_hex(cfg.raw);
    }
    rep.exit_code = decide_exit(rep);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SyntaxError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const UnknownIdentifier& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const QuadratureFailure& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const Error& e) {
    // evaluation left a function domain or a metric degenerated mid-sweep
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  }
  rep.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string json = to_json(rep);
  std::cout << to_text(rep);
  if (opt.report_path.empty()) {
    std::cout << json;
  } else {
    std::ofstream out(opt.report_path, std::ios::binary);
    if (!out) {
      std::cerr << "config error: cannot write report to " << opt.report_path << "\n";
      return kExitConfig;
    }
    out << json;
  }
  return rep.exit_code;
}

}  // namespace

}  // namespace metrize::cli

int main(int argc, char** argv) {
  CLI::App app{"SO(3)-invariant affine connections: invariance, metrizability and metric reconstruction"};
  app.require_subcommand(1);

  metrize::cli::Options opt;
  const std::vector<std::string> names = {"invariance", "killing", "metrizable",
                                          "reconstruct", "identities"};
  const std::vector<std::string> descs = {
      "check a connection against the rotation generators",
      "check a metric against the Killing equations",
      "decide metrizability of an invariant connection",
      "reconstruct the invariant metric and verify the round trip",
      "run the built-in identity suites"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < names.size(); ++i) {
    CLI::App* sub = app.add_subcommand(names[i], descs[i]);
    if (names[i] != "identities")
      sub->add_option("--config", opt.config_path, "path to the run configuration")->required();
    else
      sub->add_option("--config", opt.config_path, "ignored; identities uses a built-in corpus");
    sub->add_option("--report", opt.report_path, "write the machine-readable report here");
    sub->add_option("--seed", opt.seed, "sample-point seed");
    sub->add_option("--grid-override", opt.grid_overrides, "axis override name=min,max,count");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : metrize::cli::kExitConfig;
  }

  for (std::size_t i = 0; i < names.size(); ++i)
    if (subs[i]->parsed()) return metrize::cli::run_command(names[i], opt);
  return metrize::cli::kExitConfig;
}
