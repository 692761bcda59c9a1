#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "dkg/grid.hpp"
#include "dkg/solver.hpp"

namespace dkg {

/**
 * Resolved run configuration. File grammar: one `key = value` pair per line,
 * `#` starts a comment, blank lines are ignored. Keys are dotted:
 *
 *   grid.n      points per axis (even, >= 4)          default 16
 *   grid.L      box edge length                       default 2 pi
 *   mass.M      spinor mass                           default 1
 *   mass.m      scalar mass                           default 1
 *   coupling.g  Yukawa coupling                       default 1
 *   time.dt     step size                             default 1e-3
 *   time.T      final time                            default 1
 *   integrator  etd_rk4 | strang                      default etd_rk4
 *   seed        data seed (unsigned)                  default 1
 *   dealias     on | off | true | false | 1 | 0       default on
 *
 * Values are validated on use, not on parse; the parser only enforces the
 * grammar and numeric syntax.
 */
struct RunConfig {
  int n = 16;
  double L = 2.0 * std::numbers::pi;
  SolverConfig solver;
  std::uint64_t seed = 1;

  Grid3 grid() const { return Grid3(n, L); }
};

/** Parse failure, located at a 1-based line and column of the source text. */
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& msg, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_ = 0;
  int column_ = 0;
};

/** Parses the grammar above, applying pairs on top of the defaults. */
RunConfig parse_config(const std::string& text);

/** parse_config on the contents of `path`; missing file throws runtime_error. */
RunConfig load_config(const std::string& path);

/** Canonical text form with every key materialized, one per line. */
std::string config_text(const RunConfig& cfg);

}  // namespace dkg
