#include "svagen/provider.hpp"

#include <cstdio>
#include <fstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace svagen {

std::string prompt_hash(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

FixedProvider::FixedProvider(std::vector<std::string> responses) : responses_(std::move(responses)) {
  if (responses_.empty()) throw std::invalid_argument("fixed provider needs at least one response");
}

std::string FixedProvider::complete(const std::string&) {
  std::lock_guard lock(mu_);
  const std::size_t i = std::min(next_, responses_.size() - 1);
  ++next_;
  return responses_[i];
}

int FixedProvider::calls() const {
  std::lock_guard lock(mu_);
  return static_cast<int>(next_);
}

ReplayProvider::ReplayProvider(std::map<std::string, std::vector<std::string>> table)
    : table_(std::move(table)) {}

std::unique_ptr<ReplayProvider> ReplayProvider::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProviderError("cannot open replay file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ProviderError("malformed replay file " + path + ": " + e.what());
  }
  std::map<std::string, std::vector<std::string>> table;
  for (auto& [hash, responses] : j.items()) {
    if (responses.is_string()) {
      table[hash].push_back(responses.get<std::string>());
    } else {
      table[hash] = responses.get<std::vector<std::string>>();
    }
  }
  return std::make_unique<ReplayProvider>(std::move(table));
}

std::string ReplayProvider::complete(const std::string& prompt) {
  const std::string h = prompt_hash(prompt);
  std::lock_guard lock(mu_);
  auto it = table_.find(h);
  if (it == table_.end() || it->second.empty()) {
    throw ProviderError("no replay entry for prompt hash " + h);
  }
  std::size_t& i = cursor_[h];
  const std::string& out = it->second[std::min(i, it->second.size() - 1)];
  ++i;
  return out;
}

HttpChatProvider::HttpChatProvider(HttpConfig cfg)
    : cfg_(std::move(cfg)), slots_(std::max(1, std::min(cfg_.max_in_flight, 1024))) {
  const auto scheme = cfg_.endpoint.find("://");
  if (scheme == std::string::npos) throw ProviderError("endpoint needs a scheme: " + cfg_.endpoint);
  const auto slash = cfg_.endpoint.find('/', scheme + 3);
  base_ = cfg_.endpoint.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : cfg_.endpoint.substr(slash);
}

std::string HttpChatProvider::complete(const std::string& prompt) {
  nlohmann::json body = {
      {"model", cfg_.model},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})},
      {"temperature", cfg_.temperature},
  };
  httplib::Headers headers;
  if (!cfg_.api_key.empty()) headers.emplace("Authorization", "Bearer " + cfg_.api_key);

  slots_.acquire();
  struct Release {
    std::counting_semaphore<1024>& s;
    ~Release() { s.release(); }
  } release{slots_};

  std::string last_error;
  for (int attempt = 0; attempt <= cfg_.retries; ++attempt) {
    httplib::Client client(base_);
    client.set_connection_timeout(cfg_.timeout_s);
    client.set_read_timeout(cfg_.timeout_s);
    auto res = client.Post(path_, headers, body.dump(), "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500 || res->status == 429) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) throw ProviderError("HTTP " + std::to_string(res->status) + ": " + res->body);
    try {
      auto j = nlohmann::json::parse(res->body);
      const auto& choice = j.at("choices").at(0);
      if (choice.contains("message")) return choice["message"].at("content").get<std::string>();
      return choice.at("text").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw ProviderError(std::string("unexpected response shape: ") + e.what());
    }
  }
  throw ProviderError("request to " + cfg_.endpoint + " failed: " + last_error);
}

std::unique_ptr<Provider> make_provider(const std::string& spec, const HttpConfig& http) {
  if (spec.starts_with("replay:")) {
    return ReplayProvider::from_file(spec.substr(7));
  }
  if (spec.starts_with("fixed:")) {
    std::ifstream in(spec.substr(6));
    if (!in) throw ProviderError("cannot open " + spec.substr(6));
    nlohmann::json j;
    in >> j;
    return std::make_unique<FixedProvider>(j.get<std::vector<std::string>>());
  }
  if (spec == "http") return std::make_unique<HttpChatProvider>(http);
  throw ProviderError("unknown provider '" + spec + "' (expected replay:<file>, fixed:<file> or http)");
}

}  // namespace svagen
