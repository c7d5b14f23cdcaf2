#include "hermvp/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "hermvp/error.hpp"
#include "hermvp/trapezoidal.hpp"

namespace hermvp {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_key(std::string_view key) {
  if (key.empty()) return false;
  for (char ch : key) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') || ch == '_' ||
                    ch == '.' || ch == '-';
    if (!ok) return false;
  }
  return true;
}

std::pair<std::string, std::string> split_assignment(std::string_view line, const std::string& where) {
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) raise(ErrorKind::ConfigParse, where + ": expected key = value");
  const auto key = trim(line.substr(0, eq));
  const auto value = trim(line.substr(eq + 1));
  if (!valid_key(key)) raise(ErrorKind::ConfigParse, where + ": invalid key '" + std::string(key) + "'");
  if (value.empty()) raise(ErrorKind::ConfigParse, where + ": empty value for '" + std::string(key) + "'");
  return {std::string(key), std::string(value)};
}

}  // namespace

Config Config::parse(std::string_view text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::size_t lineno = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(lineno);
    auto [key, value] = split_assignment(line, where);
    if (cfg.values_.count(key)) raise(ErrorKind::ConfigParse, where + ": duplicate key '" + key + "'");
    cfg.values_.emplace(std::move(key), std::move(value));
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::ConfigParse, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

void Config::apply_override(std::string_view assignment) {
  auto [key, value] = split_assignment(trim(assignment), "override '" + std::string(assignment) + "'");
  values_[key] = value;
}

void Config::set(const std::string& key, const std::string& value) {
  if (!valid_key(key)) raise(ErrorKind::ConfigParse, "invalid key '" + key + "'");
  values_[key] = value;
}

std::string Config::get_string(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) raise(ErrorKind::ConfigParse, origin_ + ": missing required key '" + key + "'");
  return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

double Config::get_double(const std::string& key) const {
  const std::string s = get_string(key);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    raise(ErrorKind::ConfigParse, origin_ + ": '" + key + "' is not a number: " + s);
  return out;
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

long long Config::get_int(const std::string& key) const {
  const std::string s = get_string(key);
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    raise(ErrorKind::ConfigParse, origin_ + ": '" + key + "' is not an integer: " + s);
  return out;
}

long long Config::get_int(const std::string& key, long long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string s = get_string(key);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  raise(ErrorKind::ConfigParse, origin_ + ": '" + key + "' is not a boolean: " + s);
}

void Config::require_known(const std::set<std::string>& known) const {
  for (const auto& [key, value] : values_)
    if (!known.count(key)) raise(ErrorKind::ConfigParse, origin_ + ": unknown key '" + key + "'");
}

std::string Config::to_text() const {
  std::string out;
  for (const auto& [key, value] : values_) out += key + " = " + value + "\n";
  return out;
}

Dealias dealias_from_string(std::string_view text) {
  if (text == "none") return Dealias::None;
  if (text == "two_thirds") return Dealias::TwoThirds;
  raise(ErrorKind::ConfigParse, "dealias must be 'none' or 'two_thirds', got '" + std::string(text) + "'");
}

FieldMode field_mode_from_string(std::string_view text) {
  if (text == "implicit") return FieldMode::Implicit;
  if (text == "explicit") return FieldMode::Explicit;
  raise(ErrorKind::ConfigParse, "field_mode must be 'implicit' or 'explicit', got '" + std::string(text) + "'");
}

VPConfig vp_config_from(const Config& cfg) {
  VPConfig out;
  const auto as_int = [&](const std::string& key, int fallback) {
    const long long v = cfg.get_int(key, fallback);
    if (v < -1'000'000'000LL || v > 1'000'000'000LL) raise(ErrorKind::Validation, "'" + key + "' out of range");
    return static_cast<int>(v);
  };
  out.N = as_int("N", out.N);
  out.Mx = as_int("Mx", out.Mx);
  out.k = as_int("k", out.k);
  out.nu = cfg.get_double("nu", out.nu);
  out.T = cfg.get_double("T", out.T);
  out.Lx = cfg.get_double("Lx", out.Lx);
  out.picard_tol = cfg.get_double("picard_tol", out.picard_tol);
  out.picard_max = as_int("picard_max", out.picard_max);
  out.dealias = dealias_from_string(cfg.get_string("dealias", "two_thirds"));
  out.field_mode = field_mode_from_string(cfg.get_string("field_mode", "implicit"));
  if (cfg.get_string("dt", "auto") == "auto") {
    if (!(out.nu > 0.0) || out.N < 1) raise(ErrorKind::Validation, "dt = auto needs nu > 0 and N >= 1");
    out.dt = time_step_heuristic(out.nu, out.N);
  } else {
    out.dt = cfg.get_double("dt");
  }
  out.validate();
  if (out.k > out.N) raise(ErrorKind::Validation, "k must not exceed N");
  return out;
}

}  // namespace hermvp
