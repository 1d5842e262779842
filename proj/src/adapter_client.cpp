#include "corpus_audit/adapter_client.hpp"

#include <cerrno>
#include <csignal>
#include <cstdlib>
#include <cstring>
#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include <httplib.h>
#include <json.hpp>

#include "corpus_audit/completion_clients.hpp"
#include "corpus_audit/errors.hpp"
#include "utf8.hpp"

namespace corpus_audit {

using json = nlohmann::json;

namespace {

std::string errno_text(const char* what) { return std::string(what) + ": " + std::strerror(errno); }

void close_fd(int& fd) {
  if (fd >= 0) ::close(fd);
  fd = -1;
}

}  // namespace

std::optional<std::size_t> byte_offset_of_char(std::string_view text, std::size_t char_index) {
  std::size_t pos = 0;
  for (std::size_t c = 0; c < char_index; ++c) {
    if (pos >= text.size()) return std::nullopt;
    pos += utf8::decode(text, pos).length;
  }
  return pos;
}

StdioTransport::StdioTransport(const std::string& command, std::chrono::milliseconds timeout) : timeout_(timeout) {
  std::signal(SIGPIPE, SIG_IGN);
  int in_pipe[2];
  int out_pipe[2];
  if (::pipe2(in_pipe, O_CLOEXEC) != 0) throw BackendError(errno_text("adapter pipe"));
  if (::pipe2(out_pipe, O_CLOEXEC) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    throw BackendError(errno_text("adapter pipe"));
  }
  pid_ = ::fork();
  if (pid_ < 0) throw BackendError(errno_text("adapter fork"));
  if (pid_ == 0) {
    ::setpgid(0, 0);
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::setpgid(pid_, pid_);
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
}

StdioTransport::~StdioTransport() { shutdown(); }

void StdioTransport::shutdown() {
  close_fd(to_child_);
  close_fd(from_child_);
  if (pid_ > 0) {
    int status = 0;
    // Give the adapter a moment to exit on EOF before forcing it.
    for (int i = 0; i < 50; ++i) {
      if (::waitpid(pid_, &status, WNOHANG) == pid_) {
        pid_ = -1;
        return;
      }
      ::usleep(10'000);
    }
    // The shell may have forked the adapter instead of exec'ing it.
    ::kill(-pid_, SIGKILL);
    ::waitpid(pid_, &status, 0);
    pid_ = -1;
  }
}

std::string StdioTransport::exchange(const std::string& request_line) {
  if (to_child_ < 0) throw BackendError("adapter process is not running");
  std::string out = request_line;
  out += '\n';
  std::size_t written = 0;
  while (written < out.size()) {
    const auto n = ::write(to_child_, out.data() + written, out.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      shutdown();
      throw BackendError(errno_text("adapter write"));
    }
    written += static_cast<std::size_t>(n);
  }
  const auto deadline = std::chrono::steady_clock::now() + timeout_;
  char chunk[65536];
  while (true) {
    if (const auto nl = buffer_.find('\n'); nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      shutdown();
      throw BackendError("adapter timed out after " + std::to_string(timeout_.count()) + " ms");
    }
    pollfd p{from_child_, POLLIN, 0};
    const int ready = ::poll(&p, 1, static_cast<int>(left.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw BackendError(errno_text("adapter poll"));
    }
    if (ready == 0) continue;
    const auto n = ::read(from_child_, chunk, sizeof chunk);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw BackendError(errno_text("adapter read"));
    }
    if (n == 0) {
      shutdown();
      throw BackendError("adapter process closed its output");
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

HttpTransport::HttpTransport(const std::string& base_url, std::chrono::milliseconds timeout) : timeout_(timeout) {
  auto e = parse_http_url(base_url);
  host_ = std::move(e.host);
  port_ = e.port;
  path_ = e.path;
  while (!path_.empty() && path_.back() == '/') path_.pop_back();
  path_ += "/v1/extract";
}

std::string HttpTransport::exchange(const std::string& request_line) {
  httplib::Client client(host_, port_);
  const auto sec = static_cast<time_t>(timeout_.count() / 1000);
  const auto usec = static_cast<time_t>((timeout_.count() % 1000) * 1000);
  client.set_connection_timeout(sec, usec);
  client.set_read_timeout(sec, usec);
  client.set_write_timeout(sec, usec);
  auto res = client.Post(path_, request_line, "application/json");
  if (!res) throw BackendError("adapter unreachable: " + httplib::to_string(res.error()));
  // Error responses still carry the protocol body.
  if (res->status != 200 && res->body.empty()) {
    throw BackendError("adapter returned HTTP " + std::to_string(res->status));
  }
  return res->body;
}

AdapterClient::AdapterClient(std::unique_ptr<AdapterTransport> transport, std::size_t max_batch)
    : transport_(std::move(transport)), max_batch_(std::max<std::size_t>(1, max_batch)) {}

template <typename Result, typename Decode>
std::vector<Result> AdapterClient::call(const std::string& op, std::span<const std::string> texts, Decode decode) {
  std::vector<Result> out;
  out.reserve(texts.size());
  for (std::size_t start = 0; start < texts.size(); start += max_batch_) {
    const auto chunk = texts.subspan(start, std::min(max_batch_, texts.size() - start));
    const std::string id = "req-" + std::to_string(next_id_++);
    const json request = {{"request_id", id}, {"op", op}, {"texts", chunk}};
    const std::string line = transport_->exchange(request.dump());
    const json response = json::parse(line, nullptr, false);
    if (response.is_discarded() || !response.is_object()) throw BackendError("adapter sent malformed JSON");
    if (response.value("request_id", std::string()) != id) {
      throw BackendError("adapter answered request " + response.value("request_id", std::string("?")) +
                         ", expected " + id);
    }
    if (response.contains("error")) throw BackendError("adapter error: " + response["error"].dump());
    if (!response.contains("results") || !response["results"].is_array() ||
        response["results"].size() != chunk.size()) {
      throw BackendError("adapter result count does not match the text count");
    }
    for (std::size_t i = 0; i < chunk.size(); ++i) out.push_back(decode(chunk[i], response["results"][i]));
  }
  return out;
}

std::vector<std::vector<EntitySpan>> AdapterClient::ner(std::span<const std::string> texts) {
  return call<std::vector<EntitySpan>>("ner", texts, [](const std::string& text, const json& result) {
    if (!result.is_array()) throw BackendError("ner result must be a list of spans");
    std::vector<EntitySpan> spans;
    for (const auto& s : result) {
      if (!s.is_object() || !s.contains("start") || !s.contains("end") || !s["start"].is_number_unsigned() ||
          !s["end"].is_number_unsigned()) {
        throw BackendError("ner span needs unsigned start and end");
      }
      const auto b = byte_offset_of_char(text, s["start"].get<std::size_t>());
      const auto e = byte_offset_of_char(text, s["end"].get<std::size_t>());
      if (!b || !e || *b > *e || *e > text.size()) throw BackendError("ner span outside the text");
      spans.push_back({text.substr(*b, *e - *b), s.value("label", std::string("ENTITY")), *b, *e});
    }
    return spans;
  });
}

std::vector<std::vector<std::string>> AdapterClient::nominal(std::span<const std::string> texts) {
  return call<std::vector<std::string>>("nominal", texts, [](const std::string&, const json& result) {
    if (!result.is_array()) throw BackendError("nominal result must be a list of tokens");
    std::vector<std::string> tokens;
    for (const auto& t : result) {
      if (!t.is_string()) throw BackendError("nominal token must be a string");
      tokens.push_back(t.get<std::string>());
    }
    return tokens;
  });
}

std::vector<Sentiment> AdapterClient::sentiment(std::span<const std::string> texts) {
  return call<Sentiment>("sentiment", texts, [](const std::string&, const json& result) {
    if (result == "positive") return Sentiment::positive;
    if (result == "negative") return Sentiment::negative;
    throw BackendError("sentiment label must be positive or negative, got " + result.dump());
  });
}

std::shared_ptr<AdapterClient> make_adapter_client(const std::string& adapter_cmd) {
  if (!adapter_cmd.empty()) return std::make_shared<AdapterClient>(std::make_unique<StdioTransport>(adapter_cmd));
  if (const char* url = std::getenv("ADAPTER_URL"); url && *url) {
    return std::make_shared<AdapterClient>(std::make_unique<HttpTransport>(url));
  }
  throw ConfigError("adapter backend selected but neither --adapter-cmd nor ADAPTER_URL is set");
}

}  // namespace corpus_audit
