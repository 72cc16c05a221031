#pragma once

#include <cstdint>
#include <vector>

#include "metrize/report.hpp"

namespace metrize::cli {

/// Runs the five built-in identity suites against the internal corpus:
/// the Lie-derivative product identity, the commuting square for a fixed
/// rotation, chart consistency on overlap points, the generator bracket
/// relations (with the pushforward cross-check), and the jet versus
/// finite-difference comparison. Sample points derive from `seed`;
/// outcomes do not.
std::vector<CheckEntry> run_identity_suites(std::uint64_t seed);

}  // namespace metrize::cli
