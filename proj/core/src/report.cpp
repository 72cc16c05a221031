#include "metrize/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace metrize {

std::string format_g17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

std::string digest_hex(std::string_view bytes) {
  const std::uint64_t h = fnv1a64(bytes);
  char buf[17];
  static const char* kHex = "0123456789abcdef";
  for (int i = 0; i < 16; ++i) buf[15 - i] = kHex[(h >> (4 * i)) & 0xf];
  buf[16] = '\0';
  return std::string("fnv1a64:") + buf;
}

namespace {

// Deterministic JSON writer: insertion-ordered keys, no locale dependence.
// Non-finite floats would not be valid JSON number literals and are
// emitted as quoted strings.
class JsonWriter {
 public:
  void key(const std::string& k) {
    comma();
    out_ << '"' << escape(k) << "\":";
    pending_comma_ = false;
  }
  void value_str(const std::string& s) {
    comma();
    out_ << '"' << escape(s) << '"';
    pending_comma_ = true;
  }
  void value_num(double v) {
    comma();
    if (std::isfinite(v))
      out_ << format_g17(v);
    else
      out_ << '"' << format_g17(v) << '"';
    pending_comma_ = true;
  }
  void value_int(long long v) {
    comma();
    out_ << v;
    pending_comma_ = true;
  }
  void value_uint(std::uint64_t v) {
    comma();
    out_ << v;
    pending_comma_ = true;
  }
  void value_bool(bool b) {
    comma();
    out_ << (b ? "true" : "false");
    pending_comma_ = true;
  }
  void begin_obj() {
    comma();
    out_ << '{';
    pending_comma_ = false;
  }
  void end_obj() {
    out_ << '}';
    pending_comma_ = true;
  }
  void begin_arr() {
    comma();
    out_ << '[';
    pending_comma_ = false;
  }
  void end_arr() {
    out_ << ']';
    pending_comma_ = true;
  }
  std::string str() const { return out_.str(); }

 private:
  void comma() {
    if (pending_comma_) out_ << ',';
    pending_comma_ = false;
  }
  static std::string escape(const std::string& s) {
    std::string r;
    for (const char c : s) {
      if (c == '"' || c == '\\')
        r += std::string("\\") + c;
      else if (c == '\n')
        r += "\\n";
      else
        r += c;
    }
    return r;
  }
  std::ostringstream out_;
  bool pending_comma_ = false;
};

void write_point(JsonWriter& w, const std::array<double, 4>& p, int dim) {
  w.begin_arr();
  for (int i = 0; i < dim; ++i) w.value_num(p[static_cast<std::size_t>(i)]);
  w.end_arr();
}

const char* status_name(MetrizStatus s) {
  switch (s) {
    case MetrizStatus::Metrizable: return "metrizable";
    case MetrizStatus::NonMetrizable: return "non-metrizable";
    case MetrizStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

}  // namespace

std::string to_json(const Report& r) {
  JsonWriter w;
  w.begin_obj();
  w.key("command");
  w.value_str(r.command);
  w.key("config_digest");
  w.value_str(r.config_digest);
  w.key("seed");
  w.value_uint(r.seed);
  w.key("dimension");
  w.value_int(r.dimension);
  w.key("checks");
  w.begin_arr();
  for (const auto& c : r.checks) {
    w.begin_obj();
    w.key("name");
    w.value_str(c.name);
    w.key("status");
    w.value_str(c.pass ? "pass" : "fail");
    w.key("max_residual");
    w.value_num(c.max_residual);
    w.key("tolerance");
    w.value_num(c.tolerance);
    w.key("witness");
    write_point(w, c.witness, c.witness_dim);
    if (!c.detail.empty()) {
      w.key("detail");
      w.value_str(c.detail);
    }
    w.end_obj();
  }
  w.end_arr();
  if (r.verdict) {
    const Verdict& v = *r.verdict;
    w.key("verdict");
    w.begin_obj();
    w.key("status");
    w.value_str(status_name(v.status));
    w.key("violated");
    w.begin_arr();
    for (const auto& viol : v.violated) {
      w.begin_obj();
      w.key("condition");
      w.value_str(viol.condition);
      w.key("residual");
      w.value_num(viol.residual);
      w.key("witness");
      write_point(w, viol.witness, viol.witness_dim);
      w.end_obj();
    }
    w.end_arr();
    if (v.has_ratio || v.ratio_unconstrained) {
      w.key("constants");
      w.begin_obj();
      w.key("name");
      w.value_str(r.constants_name);
      if (v.ratio_unconstrained) {
        w.key("unconstrained");
        w.value_bool(true);
      } else {
        w.key("value");
        w.value_num(v.ratio_constant);
        w.key("constancy_residual");
        w.value_num(v.ratio_residual);
      }
      w.end_obj();
    }
    if (!v.ratio_samples.empty()) {
      w.key("ratio_samples");
      w.begin_arr();
      for (const auto& s : v.ratio_samples) {
        w.begin_arr();
        for (int i = 0; i < s.point_dim; ++i) w.value_num(s.point[static_cast<std::size_t>(i)]);
        w.value_num(s.rho);
        w.end_arr();
      }
      w.end_arr();
    }
    if (!v.note.empty()) {
      w.key("note");
      w.value_str(v.note);
    }
    w.end_obj();
  }
  if (r.samples) {
    w.key("samples");
    w.begin_obj();
    w.key("header");
    w.begin_arr();
    for (const auto& h : r.samples->header) w.value_str(h);
    w.end_arr();
    w.key("rows");
    w.begin_arr();
    for (const auto& row : r.samples->rows) {
      w.begin_arr();
      for (const double x : row) w.value_num(x);
      w.end_arr();
    }
    w.end_arr();
    w.end_obj();
  }
  w.key("exit_code");
  w.value_int(r.exit_code);
  w.end_obj();
  std::string s = w.str();
  s += '\n';
  return s;
}

std::string to_csv(const SampleTable& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) out += ',';
    out += t.header[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_g17(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_text(const Report& r) {
  std::ostringstream out;
  out << "metrize " << r.command << "  (config " << r.config_digest << ")\n";
  for (const auto& c : r.checks) {
    out << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name
        << "  max residual " << format_g17(c.max_residual) << " (tol "
        << format_g17(c.tolerance) << ")";
    if (c.witness_dim > 0) {
      out << " at (";
      for (int i = 0; i < c.witness_dim; ++i) {
        if (i) out << ", ";
        out << format_g17(c.witness[static_cast<std::size_t>(i)]);
      }
      out << ")";
    }
    if (!c.detail.empty()) out << "  [" << c.detail << "]";
    out << "\n";
  }
  if (r.verdict) {
    const Verdict& v = *r.verdict;
    out << "  verdict: " << status_name(v.status) << "\n";
    for (const auto& viol : v.violated) {
      out << "    violated: " << viol.condition << "  residual "
          << format_g17(viol.residual) << " at (";
      for (int i = 0; i < viol.witness_dim; ++i) {
        if (i) out << ", ";
        out << format_g17(viol.witness[static_cast<std::size_t>(i)]);
      }
      out << ")\n";
    }
    if (v.ratio_unconstrained)
      out << "    " << r.constants_name << ": unconstrained\n";
    else if (v.has_ratio)
      out << "    " << r.constants_name << " = " << format_g17(v.ratio_constant)
          << "  (constancy residual " << format_g17(v.ratio_residual) << ")\n";
    if (!v.note.empty()) out << "    note: " << v.note << "\n";
  }
  if (r.samples) out << to_csv(*r.samples);
  out << "  exit code " << r.exit_code << ", " << format_g17(r.duration_seconds)
      << " s\n";
  return out.str();
}

}  // namespace metrize
