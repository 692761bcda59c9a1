#include "dkg/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dkg {

namespace {

std::string locate(const std::string& msg, int line, int column) {
  return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg;
}

struct Token {
  std::string text;
  int column = 0;  // 1-based column of the first character
};

// Splits "  key = value  # comment" into key/value tokens with positions.
// Returns false for blank or comment-only lines.
bool split_pair(const std::string& raw, int line_no, Token& key, Token& value) {
  std::string line = raw;
  if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);

  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string::npos) return false;

  const auto eq = line.find('=');
  if (eq == std::string::npos)
    throw ConfigError("expected `key = value`", line_no, static_cast<int>(first) + 1);
  if (eq == first)
    throw ConfigError("missing key before `=`", line_no, static_cast<int>(eq) + 1);

  auto kend = line.find_last_not_of(" \t\r", eq - 1);
  if (kend == std::string::npos)
    throw ConfigError("missing key before `=`", line_no, static_cast<int>(eq) + 1);
  key = {line.substr(first, kend - first + 1), static_cast<int>(first) + 1};

  const auto vstart = line.find_first_not_of(" \t\r", eq + 1);
  if (vstart == std::string::npos)
    throw ConfigError("missing value after `=`", line_no, static_cast<int>(eq) + 2);
  const auto vend = line.find_last_not_of(" \t\r");
  value = {line.substr(vstart, vend - vstart + 1), static_cast<int>(vstart) + 1};
  if (value.text.find_first_of(" \t") != std::string::npos)
    throw ConfigError("value must be a single token", line_no,
                      value.column + static_cast<int>(value.text.find_first_of(" \t")));
  return true;
}

double parse_double(const Token& v, int line_no) {
  double out = 0.0;
  const char* begin = v.text.data();
  const char* end = begin + v.text.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end)
    throw ConfigError("`" + v.text + "` is not a number", line_no, v.column);
  return out;
}

template <typename Int>
Int parse_int(const Token& v, int line_no) {
  Int out = 0;
  const char* begin = v.text.data();
  const char* end = begin + v.text.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end)
    throw ConfigError("`" + v.text + "` is not an integer", line_no, v.column);
  return out;
}

bool parse_switch(const Token& v, int line_no) {
  if (v.text == "on" || v.text == "true" || v.text == "1") return true;
  if (v.text == "off" || v.text == "false" || v.text == "0") return false;
  throw ConfigError("`" + v.text + "` is not a switch (on/off/true/false/1/0)", line_no,
                    v.column);
}

}  // namespace

ConfigError::ConfigError(const std::string& msg, int line, int column)
    : std::runtime_error(locate(msg, line, column)), line_(line), column_(column) {}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    Token key, value;
    if (!split_pair(raw, line_no, key, value)) continue;

    if (key.text == "grid.n") {
      cfg.n = parse_int<int>(value, line_no);
    } else if (key.text == "grid.L") {
      cfg.L = parse_double(value, line_no);
    } else if (key.text == "mass.M") {
      cfg.solver.M = parse_double(value, line_no);
    } else if (key.text == "mass.m") {
      cfg.solver.m = parse_double(value, line_no);
    } else if (key.text == "coupling.g") {
      cfg.solver.g = parse_double(value, line_no);
    } else if (key.text == "time.dt") {
      cfg.solver.dt = parse_double(value, line_no);
    } else if (key.text == "time.T") {
      cfg.solver.T = parse_double(value, line_no);
    } else if (key.text == "integrator") {
      try {
        cfg.solver.integrator = integrator_from_name(value.text);
      } catch (const std::invalid_argument&) {
        throw ConfigError("unknown integrator `" + value.text + "`", line_no, value.column);
      }
    } else if (key.text == "seed") {
      cfg.seed = parse_int<std::uint64_t>(value, line_no);
    } else if (key.text == "dealias") {
      cfg.solver.dealias = parse_switch(value, line_no);
    } else {
      throw ConfigError("unknown key `" + key.text + "`", line_no, key.column);
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string config_text(const RunConfig& cfg) {
  char num[64];
  std::string out;
  const auto put = [&](const char* key, const std::string& v) {
    out += key;
    out += " = ";
    out += v;
    out += "\n";
  };
  const auto fmt = [&](double x) {
    std::snprintf(num, sizeof num, "%.17g", x);
    return std::string(num);
  };
  put("grid.n", std::to_string(cfg.n));
  put("grid.L", fmt(cfg.L));
  put("mass.M", fmt(cfg.solver.M));
  put("mass.m", fmt(cfg.solver.m));
  put("coupling.g", fmt(cfg.solver.g));
  put("time.dt", fmt(cfg.solver.dt));
  put("time.T", fmt(cfg.solver.T));
  put("integrator", integrator_name(cfg.solver.integrator));
  put("seed", std::to_string(cfg.seed));
  put("dealias", cfg.solver.dealias ? "on" : "off");
  return out;
}

}  // namespace dkg
