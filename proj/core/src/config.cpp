#include "metrize/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "metrize/errors.hpp"

namespace metrize {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  double v = 0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    throw ConfigError("bad numeric value for '" + key + "': " + text);
  return v;
}

int parse_int(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  int v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
    throw ConfigError("bad integer value for '" + key + "': " + text);
  return v;
}

GridAxis parse_axis(const std::string& text, const std::string& key) {
  std::array<std::string, 3> parts;
  std::size_t n = 0;
  std::string cur;
  for (const char c : text) {
    if (c == ',') {
      if (n >= 2) {
        parts[2] += cur;  // overflow detected below
        ++n;
        cur.clear();
        continue;
      }
      parts[n++] = cur;
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (n == 2) {
    parts[2] = cur;
    n = 3;
  }
  if (n != 3) throw ConfigError("grid axis '" + key + "' needs 'min, max, count'");
  GridAxis ax;
  ax.lo = parse_double(parts[0], key);
  ax.hi = parse_double(parts[1], key);
  ax.count = parse_int(parts[2], key);
  return ax;
}

bool is_connection_component_key(const std::string& key, int dimension) {
  if (key.size() != 7 || key.rfind("conn", 0) != 0) return false;
  const char lo = dimension == 3 ? '1' : '0';
  const char hi = dimension == 3 ? '3' : '3';
  const char i = key[4], j = key[5], k = key[6];
  if (i < lo || i > hi || j < lo || j > hi || k < lo || k > hi) return false;
  return j <= k;  // lower pair given in nondecreasing order
}

const std::set<std::string>& expr_keys(int dimension, InputKind kind) {
  static const std::set<std::string> metric3 = {"P", "Q"};
  static const std::set<std::string> family3 = {"A111", "A122", "A212", "A"};
  static const std::set<std::string> metric4 = {"g_tt", "g_tr", "g_rr", "Q"};
  static const std::set<std::string> family4 = {
      "B000", "B010", "B110", "B220", "B001", "B011", "B111", "B221",
      "B022", "B032", "B122", "B132", "A000", "A111", "A212"};
  static const std::set<std::string> none;
  if (dimension == 3) {
    if (kind == InputKind::Metric) return metric3;
    if (kind == InputKind::ConnectionFamily) return family3;
    return none;
  }
  if (kind == InputKind::Metric) return metric4;
  if (kind == InputKind::ConnectionFamily) return family4;
  return none;
}

}  // namespace

double RunConfig::constant_or(const std::string& name, double fallback) const {
  const auto it = constants.find(name);
  return it == constants.end() ? fallback : it->second;
}

bool RunConfig::has_constant(const std::string& name) const {
  return constants.find(name) != constants.end();
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  cfg.raw = text;
  std::istringstream in(text);
  std::string line;
  std::string section;
  // first pass: raw key/value collection per section
  std::map<std::string, std::string> input, grid, tolerances, constants;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      section = trim(t.substr(1, t.size() - 2));
      if (section != "input" && section != "grid" && section != "tolerances" &&
          section != "constants")
        throw ConfigError("unknown section [" + section + "]");
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (section.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": key '" + key +
                        "' outside any section");
    auto* dest = section == "input"        ? &input
                 : section == "grid"       ? &grid
                 : section == "tolerances" ? &tolerances
                                           : &constants;
    if (!dest->emplace(key, value).second)
      throw ConfigError("duplicate key '" + key + "' in [" + section + "]");
  }

  // [input] structural keys
  if (auto it = input.find("dimension"); it != input.end()) {
    cfg.dimension = parse_int(it->second, "dimension");
    input.erase(it);
  }
  if (cfg.dimension != 3 && cfg.dimension != 4)
    throw ConfigError("dimension must be 3 or 4");
  if (auto it = input.find("kind"); it != input.end()) {
    const std::string v = it->second;
    if (v == "connection-family")
      cfg.kind = InputKind::ConnectionFamily;
    else if (v == "connection-full")
      cfg.kind = InputKind::ConnectionFull;
    else if (v == "metric")
      cfg.kind = InputKind::Metric;
    else
      throw ConfigError("unknown kind '" + v + "'");
    input.erase(it);
  }
  if (auto it = input.find("signature"); it != input.end()) {
    const std::string v = it->second;
    if (v == "riemann")
      cfg.signature = Signature::Riemann;
    else if (v == "lorentz")
      cfg.signature = Signature::Lorentz;
    else
      throw ConfigError("unknown signature '" + v + "'");
    input.erase(it);
  }

  // remaining [input] keys are expressions; check them against the schema
  const auto& allowed = expr_keys(cfg.dimension, cfg.kind);
  for (const auto& [key, value] : input) {
    const bool ok = cfg.kind == InputKind::ConnectionFull
                        ? is_connection_component_key(key, cfg.dimension)
                        : allowed.count(key) > 0;
    if (!ok)
      throw ConfigError("unknown key '" + key + "' for dimension " +
                        std::to_string(cfg.dimension) + " " +
                        (cfg.kind == InputKind::Metric            ? "metric"
                         : cfg.kind == InputKind::ConnectionFull ? "connection-full"
                                                                 : "connection-family") +
                        " input");
    cfg.exprs.emplace(key, value);
  }

  // [grid]
  for (const auto& [key, value] : grid) cfg.grid_axes.emplace(key, parse_axis(value, key));

  // [tolerances]
  for (const auto& [key, value] : tolerances) {
    if (key == "tol_residual")
      cfg.tol.residual = parse_double(value, key);
    else if (key == "tol_ratio")
      cfg.tol.ratio = parse_double(value, key);
    else if (key == "tol_quadrature")
      cfg.tol.quadrature = parse_double(value, key);
    else
      throw ConfigError("unknown key '" + key + "' in [tolerances]");
  }

  // [constants]
  for (const auto& [key, value] : constants) {
    if (key != "K" && key != "L" && key != "C1" && key != "C2")
      throw ConfigError("unknown key '" + key + "' in [constants]");
    cfg.constants.emplace(key, parse_double(value, key));
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void apply_grid_override(RunConfig& cfg, const std::string& spec) {
  const std::size_t eq = spec.find('=');
  if (eq == std::string::npos)
    throw ConfigError("grid override needs 'name=min,max,count': " + spec);
  const std::string key = trim(spec.substr(0, eq));
  cfg.grid_axes[key] = parse_axis(spec.substr(eq + 1), key);
}

ChartId input_chart(const RunConfig& cfg) {
  if (cfg.dimension == 3) return ChartId::Sph3First;
  // 4D metric inputs use the paper's (t, r) symbols; connection inputs are
  // accepted in isothermal coordinates (u, v)
  return cfg.kind == InputKind::Metric ? ChartId::Spacetime4First
                                       : ChartId::Isothermal4First;
}

GridSpec build_grid(const RunConfig& cfg) {
  const ChartId ch = input_chart(cfg);
  GridSpec g = GridSpec::defaults(ch);
  g.tol = cfg.tol;
  const Chart& c = chart(ch);
  for (const auto& [key, axis] : cfg.grid_axes) {
    bool matched = false;
    for (int i = 0; i < c.dim; ++i) {
      if (key == c.coords[static_cast<std::size_t>(i)]) {
        g.axes[static_cast<std::size_t>(i)] = axis;
        matched = true;
        break;
      }
    }
    if (!matched) throw ConfigError("unknown grid axis '" + key + "' for this input");
  }
  g.validate();
  return g;
}

}  // namespace metrize
