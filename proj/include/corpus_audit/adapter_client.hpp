#pragma once

#include <chrono>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <sys/types.h>
#include <vector>

#include "corpus_audit/privacy_content.hpp"
#include "corpus_audit/sentiment_metrics.hpp"

namespace corpus_audit {

inline constexpr std::chrono::milliseconds kAdapterTimeout{30'000};

// Carries one request line to the adapter and returns its response line.
class AdapterTransport {
 public:
  virtual ~AdapterTransport() = default;
  virtual std::string exchange(const std::string& request_line) = 0;
};

// Long-lived child process started with /bin/sh -c <command>, speaking
// line-delimited JSON on stdin/stdout.
class StdioTransport final : public AdapterTransport {
 public:
  StdioTransport(const std::string& command, std::chrono::milliseconds timeout = kAdapterTimeout);
  ~StdioTransport() override;
  StdioTransport(const StdioTransport&) = delete;
  StdioTransport& operator=(const StdioTransport&) = delete;

  std::string exchange(const std::string& request_line) override;

 private:
  void shutdown();

  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  std::chrono::milliseconds timeout_;
};

// POST <base>/v1/extract with the request object as the body.
class HttpTransport final : public AdapterTransport {
 public:
  HttpTransport(const std::string& base_url, std::chrono::milliseconds timeout = kAdapterTimeout);
  std::string exchange(const std::string& request_line) override;

 private:
  std::string host_;
  int port_ = 80;
  std::string path_;
  std::chrono::milliseconds timeout_;
};

class AdapterClient {
 public:
  explicit AdapterClient(std::unique_ptr<AdapterTransport> transport, std::size_t max_batch = 256);

  // Spans come back as character offsets and are converted to byte offsets here.
  std::vector<std::vector<EntitySpan>> ner(std::span<const std::string> texts);
  std::vector<std::vector<std::string>> nominal(std::span<const std::string> texts);
  std::vector<Sentiment> sentiment(std::span<const std::string> texts);

 private:
  template <typename Result, typename Decode>
  std::vector<Result> call(const std::string& op, std::span<const std::string> texts, Decode decode);

  std::unique_ptr<AdapterTransport> transport_;
  std::size_t max_batch_;
  std::size_t next_id_ = 1;
};

// --adapter-cmd wins; otherwise the ADAPTER_URL environment variable. Throws ConfigError when neither is set.
std::shared_ptr<AdapterClient> make_adapter_client(const std::string& adapter_cmd);

class AdapterSentiment final : public SentimentBackend {
 public:
  explicit AdapterSentiment(std::shared_ptr<AdapterClient> client) : client_(std::move(client)) {}
  std::string name() const override { return "adapter"; }
  std::vector<Sentiment> classify(std::span<const std::string> texts) override { return client_->sentiment(texts); }

 private:
  std::shared_ptr<AdapterClient> client_;
};

class AdapterExtractor final : public MentionExtractor {
 public:
  explicit AdapterExtractor(std::shared_ptr<AdapterClient> client) : client_(std::move(client)) {}
  std::string name() const override { return "adapter"; }
  std::vector<std::vector<EntitySpan>> entities(std::span<const std::string> texts) override {
    return client_->ner(texts);
  }
  std::vector<std::vector<std::string>> nominals(std::span<const std::string> texts) override {
    return client_->nominal(texts);
  }

 private:
  std::shared_ptr<AdapterClient> client_;
};

// Byte offset of the given code point index in UTF-8 text; nullopt when past the end.
std::optional<std::size_t> byte_offset_of_char(std::string_view text, std::size_t char_index);

}  // namespace corpus_audit
