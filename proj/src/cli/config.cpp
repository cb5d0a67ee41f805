#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>

#include "svagen/cli.hpp"

extern char** environ;

namespace svagen::cli {

namespace {

template <typename T>
T number(const std::string& key, const std::string& text) {
  T v{};
  const char* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || p != end) throw ConfigError(key + ": not a number: '" + text + "'");
  return v;
}

using Setter = std::function<void(CliConfig&, const std::string&, const std::string&)>;

struct Key {
  const char* help;
  Setter set;
};

const std::map<std::string, Key>& table() {
  static const std::map<std::string, Key> t = {
      {"provider", {"generation/annotation backend: replay:<json map file>, fixed:<json list file>, http, echo, describe",
                    [](CliConfig& c, auto&, auto& v) { c.provider = v; }}},
      {"endpoint", {"http provider URL (default http://127.0.0.1:8000/v1/chat/completions)",
                    [](CliConfig& c, auto&, auto& v) { c.http.endpoint = v; }}},
      {"model", {"http provider model name (default \"default\")",
                 [](CliConfig& c, auto&, auto& v) { c.http.model = v; }}},
      {"api_key", {"http provider bearer token (default none)",
                   [](CliConfig& c, auto&, auto& v) { c.http.api_key = v; }}},
      {"temperature", {"http sampling temperature (default 0)",
                       [](CliConfig& c, auto& k, auto& v) { c.http.temperature = number<double>(k, v); }}},
      {"timeout_s", {"http request timeout in seconds (default 60)",
                     [](CliConfig& c, auto& k, auto& v) { c.http.timeout_s = number<int>(k, v); }}},
      {"max_in_flight", {"concurrent http requests (default 4)",
                         [](CliConfig& c, auto& k, auto& v) { c.http.max_in_flight = number<int>(k, v); }}},
      {"http_retries", {"transport retries per http request (default 2)",
                        [](CliConfig& c, auto& k, auto& v) { c.http.retries = number<int>(k, v); }}},
      {"trace_length", {"trace length L for equivalence; 0 = max span + 2 (default 0)",
                        [](CliConfig& c, auto& k, auto& v) { c.bounds.length = number<int>(k, v); }}},
      {"max_signals", {"signal budget S; 0 = no separate limit (default 0)",
                       [](CliConfig& c, auto& k, auto& v) { c.bounds.max_signals = number<int>(k, v); }}},
      {"cap", {"hard cap on S x L (default 22, at most 62)",
               [](CliConfig& c, auto& k, auto& v) { c.bounds.cap = number<int>(k, v); }}},
      {"split_fraction", {"bench fraction for dataset split (default 0.1)",
                          [](CliConfig& c, auto& k, auto& v) { c.split_fraction = number<double>(k, v); }}},
      {"seed", {"seed for split and synth (default 0)",
                [](CliConfig& c, auto& k, auto& v) { c.seed = number<std::uint64_t>(k, v); }}},
      {"max_rounds", {"repair-loop rounds for generate (default 3; bench run always uses 1)",
                      [](CliConfig& c, auto& k, auto& v) { c.max_rounds = number<int>(k, v); }}},
      {"annotation_retries", {"annotation retries after a rejected SVAD (default 2)",
                              [](CliConfig& c, auto& k, auto& v) { c.annotation_retries = number<int>(k, v); }}},
      {"generation_template", {"generation prompt template file with {svad} and {feedback} (default built-in)",
                               [](CliConfig& c, auto&, auto& v) { c.generation_template = v; }}},
      {"annotation_template", {"annotation prompt template file with {context}, {cot}, {sva} (default built-in)",
                               [](CliConfig& c, auto&, auto& v) { c.annotation_template = v; }}},
      {"ser_threshold", {"refinement SER threshold (default 0.5)",
                         [](CliConfig& c, auto& k, auto& v) { c.ser_threshold = number<double>(k, v); }}},
      {"min_support", {"refinement minimum samples per category (default 10)",
                       [](CliConfig& c, auto& k, auto& v) { c.min_support = number<int>(k, v); }}},
  };
  return t;
}

std::string env_name(const std::string& key) {
  std::string out = "SVAGEN_";
  for (char ch : key) out += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

}  // namespace

const std::map<std::string, std::string>& config_keys() {
  static const std::map<std::string, std::string> keys = [] {
    std::map<std::string, std::string> m;
    for (const auto& [k, v] : table()) m[k] = v.help;
    return m;
  }();
  return keys;
}

void apply_setting(CliConfig& cfg, const std::string& key, const std::string& value) {
  auto it = table().find(key);
  if (it == table().end()) throw ConfigError("unknown config key '" + key + "'");
  it->second.set(cfg, key, value);
}

void apply_file(CliConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    if (v.is_object() || v.is_array() || v.is_null()) {
      throw ConfigError(it.key() + ": expected a string or number");
    }
    apply_setting(cfg, it.key(), v.is_string() ? v.get<std::string>() : v.dump());
  }
}

void apply_env(CliConfig& cfg, const std::map<std::string, std::string>& env) {
  for (const auto& [key, _] : table()) {
    auto it = env.find(env_name(key));
    if (it != env.end()) apply_setting(cfg, key, it->second);
  }
}

void validate(const CliConfig& cfg) {
  if (!(cfg.split_fraction > 0.0 && cfg.split_fraction < 1.0)) throw ConfigError("split_fraction must be in (0, 1)");
  if (cfg.bounds.length < 0) throw ConfigError("trace_length must be >= 0");
  if (cfg.bounds.max_signals < 0) throw ConfigError("max_signals must be >= 0");
  if (cfg.bounds.cap < 1 || cfg.bounds.cap > 62) throw ConfigError("cap must be in [1, 62]");
  if (cfg.max_rounds < 1) throw ConfigError("max_rounds must be >= 1");
  if (cfg.annotation_retries < 0) throw ConfigError("annotation_retries must be >= 0");
  if (!(cfg.ser_threshold > 0.0 && cfg.ser_threshold <= 1.0)) throw ConfigError("ser_threshold must be in (0, 1]");
  if (cfg.min_support < 1) throw ConfigError("min_support must be >= 1");
  if (cfg.http.timeout_s < 1) throw ConfigError("timeout_s must be >= 1");
  if (cfg.http.max_in_flight < 1) throw ConfigError("max_in_flight must be >= 1");
  if (cfg.http.retries < 0) throw ConfigError("http_retries must be >= 0");
}

std::map<std::string, std::string> process_env() {
  std::map<std::string, std::string> out;
  for (char** e = environ; e && *e; ++e) {
    std::string entry(*e);
    auto eq = entry.find('=');
    if (eq == std::string::npos || entry.rfind("SVAGEN_", 0) != 0) continue;
    out[entry.substr(0, eq)] = entry.substr(eq + 1);
  }
  return out;
}

}  // namespace svagen::cli
