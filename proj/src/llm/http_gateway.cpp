#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "cyberops/llm/http_gateway.hpp"

#include <httplib.h>

#include <cstdlib>
#include <nlohmann/json.hpp>
#include <thread>

#include "cyberops/common/log.hpp"

namespace cyberops::llm {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

bool transient_status(int status) {
  return status == 408 || status == 429 || (status >= 500 && status < 600);
}

}  // namespace

HttpGateway::HttpGateway(HttpGatewayConfig config) : cfg_(std::move(config)) {}

std::string HttpGateway::id() const { return "http:" + cfg_.model; }

std::string HttpGateway::request_body(const HttpGatewayConfig& config,
                                      const CompletionRequest& request) {
  json body;
  body["model"] = config.model;
  body["messages"] = json::array({
      json{{"role", "system"}, {"content", request.system_prompt}},
      json{{"role", "user"}, {"content", request.user_prompt}},
  });
  body["temperature"] = request.temperature;
  body["max_tokens"] = request.max_tokens;
  return body.dump();
}

std::string HttpGateway::credential() const {
  const char* value = std::getenv(cfg_.credential_env.c_str());
  if (value == nullptr || *value == '\0')
    throw MissingCredentialError("environment variable " + cfg_.credential_env +
                                 " is unset; the remote gateway needs a credential");
  return value;
}

void HttpGateway::acquire_slot(Clock::time_point deadline) {
  std::unique_lock lock(mutex_);
  if (!slot_free_.wait_until(lock, deadline, [this] { return in_flight_ < cfg_.max_in_flight; }))
    throw RetriesExhaustedError("time budget exhausted while waiting for a request slot");
  ++in_flight_;
}

void HttpGateway::release_slot() {
  {
    std::lock_guard lock(mutex_);
    --in_flight_;
  }
  slot_free_.notify_one();
}

void HttpGateway::rate_gate(Clock::time_point deadline) {
  if (cfg_.requests_per_minute <= 0) return;
  while (true) {
    Clock::time_point wait_until;
    {
      std::lock_guard lock(mutex_);
      const auto now = Clock::now();
      while (!recent_.empty() && now - recent_.front() >= std::chrono::minutes(1))
        recent_.pop_front();
      if (static_cast<int>(recent_.size()) < cfg_.requests_per_minute) {
        recent_.push_back(now);
        return;
      }
      wait_until = recent_.front() + std::chrono::minutes(1);
    }
    if (wait_until > deadline)
      throw RetriesExhaustedError("time budget exhausted while rate-limited");
    std::this_thread::sleep_until(wait_until);
  }
}

CompletionResult HttpGateway::complete(const CompletionRequest& request) {
  const std::string key = credential();  // fail fast, before any I/O
  const auto start = Clock::now();
  const auto budget = std::chrono::milliseconds(
      static_cast<long long>(cfg_.max_retries + 1) * cfg_.timeout_ms);
  const auto deadline = start + budget;

  const std::string body = request_body(cfg_, request);
  const httplib::Headers headers{{"Authorization", "Bearer " + key}};

  acquire_slot(deadline);
  struct SlotGuard {
    HttpGateway* g;
    ~SlotGuard() { g->release_slot(); }
  } guard{this};

  std::string last_error = "no attempt made";
  for (int attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
    const auto now = Clock::now();
    if (now >= deadline) break;

    if (attempt > 0) {
      auto delay = std::chrono::milliseconds(cfg_.backoff_base_ms) * (1 << (attempt - 1));
      const auto remaining = deadline - Clock::now();
      if (delay > remaining) delay = std::chrono::duration_cast<std::chrono::milliseconds>(remaining);
      if (delay.count() > 0) std::this_thread::sleep_for(delay);
    }
    rate_gate(deadline);

    const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - Clock::now());
    if (remaining.count() <= 0) break;
    const auto attempt_timeout =
        std::min<std::chrono::milliseconds>(remaining, std::chrono::milliseconds(cfg_.timeout_ms));

    httplib::Client client(cfg_.base_url);
    client.set_connection_timeout(attempt_timeout);
    client.set_read_timeout(attempt_timeout);
    client.set_write_timeout(attempt_timeout);

    const auto response = client.Post(cfg_.path, headers, body, "application/json");
    if (!response) {
      last_error = "transport error: " + httplib::to_string(response.error());
      log_debug("gateway attempt " + std::to_string(attempt + 1) + " failed: " + last_error);
      continue;
    }
    if (transient_status(response->status)) {
      last_error = "transient status " + std::to_string(response->status);
      log_debug("gateway attempt " + std::to_string(attempt + 1) + " failed: " + last_error);
      continue;
    }
    if (response->status != 200)
      throw GatewayError("completion request rejected with status " +
                         std::to_string(response->status));

    try {
      const json reply = json::parse(response->body);
      CompletionResult result;
      result.text = reply.at("choices").at(0).at("message").at("content").get<std::string>();
      result.backend_id = id();
      result.retries = attempt;
      result.latency_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
      return result;
    } catch (const json::exception& e) {
      throw MalformedResponseError(std::string("completion response has the wrong shape: ") +
                                   e.what());
    }
  }
  throw RetriesExhaustedError("completion failed after " + std::to_string(cfg_.max_retries + 1) +
                              " attempts: " + last_error);
}

}  // namespace cyberops::llm
