#pragma once

#include <string>

#include "cyberops/common/errors.hpp"

namespace cyberops::llm {

struct CompletionRequest {
  std::string system_prompt;
  std::string user_prompt;
  double temperature = 0.0;  // the framework always issues deterministic requests
  int max_tokens = 512;
};

struct CompletionResult {
  std::string text;
  std::string backend_id;
  double latency_ms = 0.0;
  int retries = 0;
};

struct GatewayError : Error {
  using Error::Error;
};

// The configured credential environment variable is unset or empty.
struct MissingCredentialError : GatewayError {
  using GatewayError::GatewayError;
};

// All transport attempts failed or the time budget ran out.
struct RetriesExhaustedError : GatewayError {
  using GatewayError::GatewayError;
};

// The service answered but not in the expected shape.
struct MalformedResponseError : GatewayError {
  using GatewayError::GatewayError;
};

// Uniform text-completion interface. Implementations must be safe to call
// from several episode runners at once.
class CompletionGateway {
public:
  virtual ~CompletionGateway() = default;
  virtual CompletionResult complete(const CompletionRequest& request) = 0;
  virtual std::string id() const = 0;
};

}  // namespace cyberops::llm
