#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>

#include "corpus_audit/prompt_optimizer.hpp"
#include "corpus_audit/synthetic.hpp"

namespace corpus_audit {

enum class MockMode {
  varied,    // distinct generated reviews
  constant,  // the same review text every time
};

struct MockOptions {
  MockMode mode = MockMode::varied;
  // Follow the length mix once the prompt carries a length section; otherwise every
  // review is medium length (11-40 words).
  bool obey_length = true;
  std::set<int> malformed_calls;  // 1-based call numbers answered with unparseable text
  std::size_t fallback_count = 20;
  std::uint64_t seed = 1;
};

// Deterministic offline backend. Reads the requested count from "Generate N" in the prompt.
class MockClient final : public CompletionClient {
 public:
  explicit MockClient(MockOptions options = {});

  std::string name() const override { return "mock"; }
  std::string complete(const std::string& prompt) override;
  int calls() const { return calls_; }

 private:
  MockOptions options_;
  ReviewWriter writer_;
  int calls_ = 0;
};

// POSTs {"prompt": "..."} as JSON to an http:// endpoint. The response body is used as the
// completion, or its "text"/"completion" string field when it is a JSON object.
class HttpCompletionClient final : public CompletionClient {
 public:
  HttpCompletionClient(std::string url, double timeout_seconds);

  std::string name() const override { return "http"; }
  std::string complete(const std::string& prompt) override;

 private:
  std::string host_;
  int port_ = 80;
  std::string path_;
  double timeout_seconds_;
};

struct HttpEndpoint {
  std::string host;
  int port = 80;
  std::string path = "/";
};
// Accepts http://host[:port][/path]. Throws ConfigError otherwise.
HttpEndpoint parse_http_url(const std::string& url);

}  // namespace corpus_audit
