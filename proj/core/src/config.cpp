#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "oqcar/errors.hpp"
#include "oqcar/sweep.hpp"

namespace oqcar {

const char* to_string(SweepMode mode) {
  switch (mode) {
    case SweepMode::Pure: return "pure";
    case SweepMode::Mixed: return "mixed";
    case SweepMode::Agnostic: return "agnostic";
    case SweepMode::Evolve: return "evolve";
    case SweepMode::Validate: return "validate";
  }
  return "?";
}

const char* to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Ppm: return "ppm";
    case OutputFormat::Both: return "both";
  }
  return "?";
}

void SweepConfig::validate() const {
  utilities.validate();
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha", "alpha must lie in [0,1]");
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw ConfigError("lambda", "lambda must be finite and non-negative");
  if (!(grid_step > 0.0 && grid_step <= 0.25))
    throw ConfigError("grid_step", "grid_step must lie in (0, 0.25]");
  if (threads < 0) throw ConfigError("threads", "threads must be non-negative");
  if (output_dir.empty()) throw ConfigError("output_dir", "output_dir must not be empty");
}

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_number(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    if (!std::isfinite(v)) throw std::invalid_argument("not finite");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key, key + ": cannot parse '" + value + "' as a number");
  }
}

SweepMode parse_mode(const std::string& value) {
  if (value == "pure") return SweepMode::Pure;
  if (value == "mixed") return SweepMode::Mixed;
  if (value == "agnostic") return SweepMode::Agnostic;
  if (value == "evolve") return SweepMode::Evolve;
  if (value == "validate") return SweepMode::Validate;
  throw ConfigError("mode", "mode must be one of pure|mixed|agnostic|evolve|validate, got '" + value + "'");
}

OutputFormat parse_format(const std::string& value) {
  if (value == "csv") return OutputFormat::Csv;
  if (value == "ppm") return OutputFormat::Ppm;
  if (value == "both") return OutputFormat::Both;
  throw ConfigError("format", "format must be one of csv|ppm|both, got '" + value + "'");
}

}  // namespace

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open config file '" + path + "'");

  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config", "line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config", "line " + std::to_string(line_no) + ": empty key or value");
    if (kv.count(key))
      throw ConfigError(key, "duplicate key '" + key + "' at line " + std::to_string(line_no));
    kv[key] = value;
  }

  SweepConfig cfg;
  double* utility_slots[16] = {
      &cfg.utilities.a1s, &cfg.utilities.b1s, &cfg.utilities.c1s, &cfg.utilities.d1s,
      &cfg.utilities.a1d, &cfg.utilities.b1d, &cfg.utilities.c1d, &cfg.utilities.d1d,
      &cfg.utilities.a2s, &cfg.utilities.b2s, &cfg.utilities.c2s, &cfg.utilities.d2s,
      &cfg.utilities.a2d, &cfg.utilities.b2d, &cfg.utilities.c2d, &cfg.utilities.d2d};
  const char* utility_keys[16] = {"a1s", "b1s", "c1s", "d1s", "a1d", "b1d", "c1d", "d1d",
                                  "a2s", "b2s", "c2s", "d2s", "a2d", "b2d", "c2d", "d2d"};
  for (int i = 0; i < 16; ++i) {
    auto it = kv.find(utility_keys[i]);
    if (it == kv.end())
      throw ConfigError(utility_keys[i],
                        std::string("missing required utility field '") + utility_keys[i] + "'");
    *utility_slots[i] = parse_number(utility_keys[i], it->second);
    kv.erase(it);
  }

  for (auto it = kv.begin(); it != kv.end();) {
    const std::string& key = it->first;
    const std::string& value = it->second;
    if (key == "alpha") cfg.alpha = parse_number(key, value);
    else if (key == "lambda") cfg.lambda = parse_number(key, value);
    else if (key == "grid_step") cfg.grid_step = parse_number(key, value);
    else if (key == "mode") cfg.mode = parse_mode(value);
    else if (key == "output_dir") cfg.output_dir = value;
    else if (key == "format") cfg.format = parse_format(value);
    else if (key == "threads") cfg.threads = static_cast<int>(parse_number(key, value));
    else throw ConfigError(key, "unknown config key '" + key + "'");
    it = kv.erase(it);
  }

  cfg.validate();
  return cfg;
}

}  // namespace oqcar
