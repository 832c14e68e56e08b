#pragma once

#include <chrono>
#include <condition_variable>
#include <deque>
#include <mutex>

#include "cyberops/llm/gateway.hpp"

namespace cyberops::llm {

struct HttpGatewayConfig {
  std::string base_url = "https://api.openai.com";
  std::string path = "/v1/chat/completions";
  std::string model = "gpt-3.5-turbo";
  std::string credential_env = "OPENAI_API_KEY";
  int timeout_ms = 30000;        // per attempt; also bounds the total budget
  int max_retries = 3;           // additional attempts after the first
  int backoff_base_ms = 250;     // doubles per retry, truncated to the budget
  int max_in_flight = 4;         // concurrent requests through this gateway
  int requests_per_minute = 60;  // 0 disables the rate gate

  bool operator==(const HttpGatewayConfig&) const = default;
};

// Chat-completion client over HTTP. The credential is read from the
// configured environment variable on every call, before any network I/O.
// Transient failures (connect errors, 408/429/5xx) are retried with
// exponential backoff; one call never blocks longer than
// (max_retries + 1) * timeout_ms, counting backoff and rate-gate waits.
class HttpGateway final : public CompletionGateway {
public:
  explicit HttpGateway(HttpGatewayConfig config);
  CompletionResult complete(const CompletionRequest& request) override;
  std::string id() const override;

  // Request body for a completion, exposed for tests of the wire format.
  static std::string request_body(const HttpGatewayConfig& config,
                                  const CompletionRequest& request);

private:
  std::string credential() const;
  void acquire_slot(std::chrono::steady_clock::time_point deadline);
  void release_slot();
  void rate_gate(std::chrono::steady_clock::time_point deadline);

  HttpGatewayConfig cfg_;
  std::mutex mutex_;
  std::condition_variable slot_free_;
  int in_flight_ = 0;
  std::deque<std::chrono::steady_clock::time_point> recent_;
};

}  // namespace cyberops::llm
