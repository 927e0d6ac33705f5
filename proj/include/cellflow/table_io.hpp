#pragma once

#include <iosfwd>
#include <string>

#include "cellflow/q_learning.hpp"

namespace cellflow {

inline constexpr const char* kQTableHeader = "# cellflow-rl qtable v1";

/** Full-precision (%.17g) text form; round-trips through strtod. */
std::string format_double(double value);

/** Writes the header line followed by one whitespace-separated row per state. */
void save_qtable(std::ostream& out, const QTable& table);

/** Parses a 12-state x 4-action table; throws ConfigError on malformed input. */
QTable load_qtable(std::istream& in);

}  // namespace cellflow
