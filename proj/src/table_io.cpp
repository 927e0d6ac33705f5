#include "cellflow/table_io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "cellflow/errors.hpp"
#include "cellflow/rl_env.hpp"

namespace cellflow {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void save_qtable(std::ostream& out, const QTable& table) {
  out << kQTableHeader << "\n";
  for (int s = 0; s < table.n_states(); ++s) {
    for (int a = 0; a < table.n_actions(); ++a) {
      out << format_double(table.at(s, a)) << (a + 1 == table.n_actions() ? "" : " ");
    }
    out << "\n";
  }
}

QTable load_qtable(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header != kQTableHeader) {
    throw ConfigError("qtable file: missing or wrong header (expected '" +
                      std::string(kQTableHeader) + "')");
  }
  QTable table(kNumObservations, kNumActions);
  for (int s = 0; s < table.n_states(); ++s) {
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("qtable file: truncated");
    std::istringstream row(line);
    for (int a = 0; a < table.n_actions(); ++a) {
      double value = 0.0;
      if (!(row >> value) || !std::isfinite(value)) {
        throw ConfigError("qtable file: bad value at row " + std::to_string(s));
      }
      table.at(s, a) = value;
    }
    std::string extra;
    if (row >> extra) throw ConfigError("qtable file: trailing data at row " + std::to_string(s));
  }
  return table;
}

}  // namespace cellflow
