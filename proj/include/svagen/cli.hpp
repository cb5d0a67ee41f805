#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "svagen/equiv.hpp"
#include "svagen/provider.hpp"

namespace svagen::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shared settings. Layered as flags > SVAGEN_* environment > config file > defaults.
struct CliConfig {
  std::string provider;  // replay:<file>, fixed:<file>, http, echo (bench run), describe (annotate)
  HttpConfig http;
  equiv::BoundConfig bounds;
  double split_fraction = 0.1;
  std::uint64_t seed = 0;
  int max_rounds = 3;
  int annotation_retries = 2;
  std::string generation_template;  // file path; empty = built-in
  std::string annotation_template;
  double ser_threshold = 0.5;
  int min_support = 10;
};

/// Config keys as accepted in the JSON file; the environment variable is SVAGEN_<KEY>
/// upper-cased, the flag is --<key> with '_' replaced by '-'.
const std::map<std::string, std::string>& config_keys();  // key -> help text

/// Sets one key from its textual form. Throws ConfigError on unknown keys or bad values.
void apply_setting(CliConfig& cfg, const std::string& key, const std::string& value);
/// Applies a JSON object (config file contents).
void apply_file(CliConfig& cfg, const nlohmann::json& j);
/// Applies SVAGEN_* entries of `env`.
void apply_env(CliConfig& cfg, const std::map<std::string, std::string>& env);
/// Range checks across all fields.
void validate(const CliConfig& cfg);

/// SVAGEN_* variables of the current process.
std::map<std::string, std::string> process_env();

/// Exit codes: 0 success, 1 operational failure, 2 usage or config error, 3 for
/// `equiv` on a non-Equivalent relation, `check` on a syntax failure and `generate`
/// when the repair loop is exhausted.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        const std::map<std::string, std::string>& env);

}  // namespace svagen::cli
