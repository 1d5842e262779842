#include "corpus_audit/completion_clients.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <regex>

#include <httplib.h>
#include <json.hpp>

#include "corpus_audit/errors.hpp"

namespace corpus_audit {

namespace {

std::size_t requested_count(const std::string& prompt, std::size_t fallback) {
  static const std::regex pattern(R"(Generate\s+(\d+)\s)");
  std::smatch m;
  if (std::regex_search(prompt, m, pattern)) {
    const auto n = std::stoul(m[1].str());
    if (n > 0 && n < 100000) return n;
  }
  return fallback;
}

// Largest-remainder split of n into the target length mix.
std::array<std::size_t, kLengthBins> bin_counts(std::size_t n, const std::array<double, kLengthBins>& fractions) {
  std::array<std::size_t, kLengthBins> counts{};
  std::array<double, kLengthBins> remainder{};
  std::size_t assigned = 0;
  for (std::size_t b = 0; b < kLengthBins; ++b) {
    const double exact = fractions[b] * static_cast<double>(n);
    counts[b] = static_cast<std::size_t>(std::floor(exact));
    remainder[b] = exact - static_cast<double>(counts[b]);
    assigned += counts[b];
  }
  while (assigned < n) {
    const auto b = static_cast<std::size_t>(std::max_element(remainder.begin(), remainder.end()) - remainder.begin());
    ++counts[b];
    remainder[b] = -1.0;
    ++assigned;
  }
  return counts;
}

std::size_t length_in_bin(std::size_t bin, std::mt19937_64& rng) {
  static constexpr std::array<std::pair<std::size_t, std::size_t>, kLengthBins> kRanges{
      {{3, 10}, {11, 40}, {41, 80}, {81, 100}}};
  return std::uniform_int_distribution<std::size_t>(kRanges[bin].first, kRanges[bin].second)(rng);
}

}  // namespace

MockClient::MockClient(MockOptions options) : options_(std::move(options)), writer_(options_.seed) {}

std::string MockClient::complete(const std::string& prompt) {
  ++calls_;
  if (options_.malformed_calls.count(calls_)) return "Sure! Here are some great reviews for you.";
  const std::size_t n = requested_count(prompt, options_.fallback_count);
  const bool follow_mix =
      options_.obey_length && prompt.find(section_title(SectionKind::length)) != std::string::npos;

  std::vector<std::size_t> lengths;
  if (follow_mix) {
    const auto counts = bin_counts(n, LengthTargets{}.fractions);
    for (std::size_t b = 0; b < kLengthBins; ++b) {
      for (std::size_t k = 0; k < counts[b]; ++k) lengths.push_back(length_in_bin(b, writer_.rng()));
    }
    std::shuffle(lengths.begin(), lengths.end(), writer_.rng());
  } else {
    for (std::size_t k = 0; k < n; ++k) lengths.push_back(length_in_bin(1, writer_.rng()));
  }

  std::string out = "rating,review,user-id\n";
  for (std::size_t k = 0; k < n; ++k) {
    const int rating = writer_.draw_rating();
    const std::string text = options_.mode == MockMode::constant ? std::string("This product is okay.")
                                                                 : writer_.write(rating, lengths[k]);
    out += std::to_string(rating) + ".0," + csv::quote(text) + ",mock-" + std::to_string(calls_) + "-" +
           std::to_string(k) + "\n";
  }
  return out;
}

HttpEndpoint parse_http_url(const std::string& url) {
  static const std::regex pattern(R"(^http://([^/:]+)(?::(\d+))?(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, pattern)) throw ConfigError("endpoint must look like http://host[:port]/path: " + url);
  HttpEndpoint e;
  e.host = m[1].str();
  if (m[2].matched) e.port = std::stoi(m[2].str());
  if (m[3].matched) e.path = m[3].str();
  return e;
}

HttpCompletionClient::HttpCompletionClient(std::string url, double timeout_seconds)
    : timeout_seconds_(timeout_seconds) {
  if (url.empty()) throw ConfigError("no completion endpoint configured (config endpoint.url or CORPUS_AUDIT_LLM_URL)");
  auto e = parse_http_url(url);
  host_ = std::move(e.host);
  port_ = e.port;
  path_ = std::move(e.path);
}

std::string HttpCompletionClient::complete(const std::string& prompt) {
  httplib::Client client(host_, port_);
  const auto seconds = static_cast<time_t>(std::ceil(timeout_seconds_));
  client.set_connection_timeout(seconds, 0);
  client.set_read_timeout(seconds, 0);
  client.set_write_timeout(seconds, 0);
  const nlohmann::json body = {{"prompt", prompt}};
  auto res = client.Post(path_, body.dump(), "application/json");
  if (!res) throw BackendError("completion endpoint unreachable: " + httplib::to_string(res.error()));
  if (res->status != 200) throw BackendError("completion endpoint returned HTTP " + std::to_string(res->status));
  const auto parsed = nlohmann::json::parse(res->body, nullptr, false);
  if (parsed.is_object()) {
    for (const char* key : {"text", "completion"}) {
      if (parsed.contains(key) && parsed[key].is_string()) return parsed[key].get<std::string>();
    }
  }
  return res->body;
}

}  // namespace corpus_audit
