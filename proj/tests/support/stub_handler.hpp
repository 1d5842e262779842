#pragma once

// Answers adapter requests with the built-in rule extractor and lexicon classifier.

#include <string>

#include <json.hpp>

#include "corpus_audit/privacy_content.hpp"
#include "corpus_audit/sentiment_metrics.hpp"

namespace stub {

inline std::size_t char_index(const std::string& text, std::size_t byte) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) ++n;
  }
  return n;
}

// mode: ok | bad-id | count | error
inline std::string handle(const std::string& line, const std::string& mode) {
  using nlohmann::json;
  const json req = json::parse(line, nullptr, false);
  json res;
  res["request_id"] = req.is_object() ? req.value("request_id", std::string()) : std::string();
  if (mode == "bad-id") res["request_id"] = "wrong";
  if (!req.is_object() || !req.contains("texts")) {
    res["error"] = "malformed request";
    return res.dump();
  }
  const auto texts = req["texts"].get<std::vector<std::string>>();
  const std::string op = req.value("op", std::string());
  if (mode == "error") {
    res["error"] = "model not loaded";
    return res.dump();
  }
  json results = json::array();
  static corpus_audit::LexiconSentiment lexicon;
  for (const auto& t : texts) {
    if (op == "ner") {
      json spans = json::array();
      for (const auto& e : corpus_audit::RuleExtractor::extract_entities(t)) {
        spans.push_back({{"start", char_index(t, e.begin)}, {"end", char_index(t, e.end)}, {"label", e.category}});
      }
      results.push_back(spans);
    } else if (op == "nominal") {
      results.push_back(corpus_audit::RuleExtractor::extract_nominals(t));
    } else if (op == "sentiment") {
      results.push_back(corpus_audit::to_string(lexicon.classify_one(t)));
    } else {
      res["error"] = "unknown op " + op;
      return res.dump();
    }
  }
  if (mode == "count" && !results.empty()) results.erase(results.end() - 1);
  res["results"] = results;
  return res.dump();
}

}  // namespace stub
