#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "metrize/metrizability.hpp"

namespace metrize {

struct CheckEntry {
  std::string name;
  bool pass = false;
  double max_residual = 0;
  double tolerance = 0;
  std::array<double, 4> witness{};
  int witness_dim = 0;
  std::string detail;
};

struct SampleTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Structured run outcome. Serialization is deterministic: stable key
/// order and 17-significant-digit floats with a lowercase exponent marker.
/// The wall-clock duration appears in the human summary only, so identical
/// inputs produce byte-identical machine-readable documents.
struct Report {
  std::string command;
  std::string config_digest;
  std::uint64_t seed = 0;
  int dimension = 0;
  std::vector<CheckEntry> checks;
  std::optional<Verdict> verdict;
  std::string constants_name;  // "L/K" or "C2/C1"
  std::optional<SampleTable> samples;
  int exit_code = 0;
  double duration_seconds = 0;
};

/// 17 significant digits, lowercase exponent, locale-independent.
std::string format_g17(double v);

std::string to_json(const Report& r);
std::string to_text(const Report& r);
std::string to_csv(const SampleTable& t);

std::uint64_t fnv1a64(std::string_view bytes);
std::string digest_hex(std::string_view bytes);

}  // namespace metrize
