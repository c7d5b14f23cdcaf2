#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "hermvp/vlasov_poisson.hpp"

namespace hermvp {

/// Flat typed key=value configuration.
///
///   # comment
///   N = 32
///   nu = 0.1
///   dealias = two_thirds
///
/// Keys are [A-Za-z0-9_.]+; whitespace around keys and values is ignored;
/// trailing "# ..." comments are stripped. A key may appear once per file.
/// Malformed lines and values raise ErrorKind::ConfigParse.
class Config {
 public:
  static Config parse(std::string_view text, const std::string& origin = "<string>");
  static Config load(const std::string& path);

  /// "key=value"; later overrides win over the file.
  void apply_override(std::string_view assignment);
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key) const;
  long long get_int(const std::string& key, long long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  /// Raises ErrorKind::ConfigParse naming the first key outside `known`.
  void require_known(const std::set<std::string>& known) const;

  /// Canonical "key = value" lines in key order.
  std::string to_text() const;

 private:
  std::string origin_ = "<string>";
  std::map<std::string, std::string> values_;
};

Dealias dealias_from_string(std::string_view text);
FieldMode field_mode_from_string(std::string_view text);

/// VPConfig from keys N, Mx, k, nu, dt, T, Lx, picard_tol, picard_max,
/// dealias, field_mode. dt = auto selects time_step_heuristic(nu, N).
/// Validated before returning.
VPConfig vp_config_from(const Config& cfg);

}  // namespace hermvp
