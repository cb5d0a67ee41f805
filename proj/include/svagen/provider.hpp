#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <semaphore>
#include <stdexcept>
#include <string>
#include <vector>

namespace svagen {

class ProviderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A text-completion backend. Implementations are safe to call from several threads.
class Provider {
 public:
  virtual ~Provider() = default;
  /// Sends one user prompt and returns the first message content of the reply.
  virtual std::string complete(const std::string& prompt) = 0;
};

/// 64-bit FNV-1a of `text`, as 16 lowercase hex digits. Keys replay files.
std::string prompt_hash(const std::string& text);

/// Returns canned responses in order; the last one repeats once the list runs out.
class FixedProvider : public Provider {
 public:
  explicit FixedProvider(std::vector<std::string> responses);
  std::string complete(const std::string& prompt) override;
  int calls() const;

 private:
  std::vector<std::string> responses_;
  mutable std::mutex mu_;
  std::size_t next_ = 0;
};

/// Looks responses up by prompt hash. Repeated prompts walk the hash's list, then
/// repeat its last entry. Unknown prompts raise ProviderError.
class ReplayProvider : public Provider {
 public:
  explicit ReplayProvider(std::map<std::string, std::vector<std::string>> table);
  /// File format: {"<hash>": ["response", ...], ...}
  static std::unique_ptr<ReplayProvider> from_file(const std::string& path);

  std::string complete(const std::string& prompt) override;

 private:
  std::map<std::string, std::vector<std::string>> table_;
  std::map<std::string, std::size_t> cursor_;
  std::mutex mu_;
};

struct HttpConfig {
  std::string endpoint = "http://127.0.0.1:8000/v1/chat/completions";
  std::string model = "default";
  std::string api_key;
  double temperature = 0.0;
  int timeout_s = 60;
  int max_in_flight = 4;
  int retries = 2;  // transport-level retries per request
};

/// OpenAI-style chat endpoint: POST {model, messages, temperature}.
class HttpChatProvider : public Provider {
 public:
  explicit HttpChatProvider(HttpConfig cfg);
  std::string complete(const std::string& prompt) override;

 private:
  HttpConfig cfg_;
  std::string base_;  // scheme://host[:port]
  std::string path_;
  std::counting_semaphore<1024> slots_;
};

/// "replay:<file>", "fixed:<file>" (JSON array of strings) or "http".
std::unique_ptr<Provider> make_provider(const std::string& spec, const HttpConfig& http = {});

}  // namespace svagen
