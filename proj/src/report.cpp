#include "corpus_audit/report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "corpus_audit/errors.hpp"

namespace corpus_audit {

using json = nlohmann::ordered_json;

namespace {

constexpr std::array<std::string_view, 5> kBlockNames{"lexical", "semantic", "sentiment", "privacy", "outliers"};
constexpr std::string_view kMissing = "—";

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json lexical_json(const LexicalBlock& b) {
  json j = json::object();
  for (std::size_t i = 0; i < b.orders.size(); ++i) {
    const std::string key = "n" + std::to_string(i + 1);
    if (!b.orders[i]) {
      j[key] = nullptr;
      continue;
    }
    const auto& s = *b.orders[i];
    j[key] = {{"T", s.total}, {"U", s.unique}, {"L_r", s.uniqueness_ratio}, {"H_n", s.normalized_entropy}};
  }
  return j;
}

LexicalBlock lexical_from(const json& j) {
  LexicalBlock b;
  for (std::size_t i = 0; i < b.orders.size(); ++i) {
    const auto& e = j.at("n" + std::to_string(i + 1));
    if (e.is_null()) continue;
    NgramStats s;
    s.n = static_cast<int>(i + 1);
    s.total = e.at("T").get<std::uint64_t>();
    s.unique = e.at("U").get<std::uint64_t>();
    s.uniqueness_ratio = e.at("L_r").get<double>();
    s.normalized_entropy = e.at("H_n").get<double>();
    b.orders[i] = s;
  }
  return b;
}

json semantic_json(const SemanticReport& s) {
  return {{"semantic_ratio", s.semantic_ratio},
          {"avg_mst_edge_length", s.avg_mst_edge_length},
          {"degenerate", s.degenerate},
          {"mst_mode", to_string(s.mst_mode)},
          {"k", s.k},
          {"vectors", s.vectors},
          {"distinct_vectors", s.distinct_vectors},
          {"excluded_reviews", s.excluded_reviews},
          {"components", s.components}};
}

SemanticReport semantic_from(const json& j) {
  SemanticReport s;
  s.semantic_ratio = j.at("semantic_ratio").get<double>();
  s.avg_mst_edge_length = j.at("avg_mst_edge_length").get<double>();
  s.degenerate = j.at("degenerate").get<bool>();
  s.mst_mode = parse_mst_mode(j.at("mst_mode").get<std::string>());
  s.k = j.at("k").get<std::size_t>();
  s.vectors = j.at("vectors").get<std::size_t>();
  s.distinct_vectors = j.at("distinct_vectors").get<std::size_t>();
  s.excluded_reviews = j.at("excluded_reviews").get<std::size_t>();
  s.components = j.at("components").get<std::size_t>();
  return s;
}

json sentiment_json(const SentimentProfile& p) {
  json y = json::array();
  for (const auto& v : p.y) y.push_back(optional_number(v));
  return {{"y", y},
          {"benchmark", p.benchmark},
          {"segment_counts", p.segment_counts},
          {"d_sen", p.d_sen},
          {"backend", p.backend}};
}

SentimentProfile sentiment_from(const json& j) {
  SentimentProfile p;
  const auto& y = j.at("y");
  const auto& bench = j.at("benchmark");
  const auto& counts = j.at("segment_counts");
  if (y.size() != kRatingLevels || bench.size() != kRatingLevels || counts.size() != kRatingLevels) {
    throw SchemaError("sentiment arrays must have five entries");
  }
  for (std::size_t i = 0; i < kRatingLevels; ++i) {
    if (!y[i].is_null()) p.y[i] = y[i].get<double>();
    p.benchmark[i] = bench[i].get<double>();
    p.segment_counts[i] = counts[i].get<std::size_t>();
  }
  p.d_sen = j.at("d_sen").get<double>();
  p.backend = j.at("backend").get<std::string>();
  return p;
}

json privacy_json(const PrivacyBlock& b) {
  const auto& s = b.stats;
  return {{"mean_entity_count", s.mean_entity_count},   {"max_entity_count", s.max_entity_count},
          {"mean_entity_density", s.mean_entity_density}, {"max_entity_density", s.max_entity_density},
          {"mean_nominal_count", s.mean_nominal_count}, {"max_nominal_count", s.max_nominal_count},
          {"mean_nominal_density", s.mean_nominal_density}, {"max_nominal_density", s.max_nominal_density},
          {"included_reviews", s.included_reviews},     {"excluded_reviews", s.excluded_reviews},
          {"backend", b.backend}};
}

PrivacyBlock privacy_from(const json& j) {
  PrivacyBlock b;
  auto& s = b.stats;
  s.mean_entity_count = j.at("mean_entity_count").get<double>();
  s.max_entity_count = j.at("max_entity_count").get<double>();
  s.mean_entity_density = j.at("mean_entity_density").get<double>();
  s.max_entity_density = j.at("max_entity_density").get<double>();
  s.mean_nominal_count = j.at("mean_nominal_count").get<double>();
  s.max_nominal_count = j.at("max_nominal_count").get<double>();
  s.mean_nominal_density = j.at("mean_nominal_density").get<double>();
  s.max_nominal_density = j.at("max_nominal_density").get<double>();
  s.included_reviews = j.at("included_reviews").get<std::size_t>();
  s.excluded_reviews = j.at("excluded_reviews").get<std::size_t>();
  b.backend = j.at("backend").get<std::string>();
  return b;
}

json outliers_json(const OutlierReport& o) {
  json pct = json::object();
  for (const auto& [k, v] : o.d_nn_percentiles) pct[k] = v;
  const auto p01 = o.d_nn_percentiles.find("p01");
  return {{"theta_g", o.theta_g},
          {"theta_l", o.theta_l},
          {"users", o.user_count},
          {"excluded_users", o.excluded_users},
          {"candidates", o.global_candidates.size()},
          {"count", o.outlier_count},
          {"d_nn_p01", p01 == o.d_nn_percentiles.end() ? json(nullptr) : json(p01->second)},
          {"d_nn_percentiles", pct},
          {"candidate_ids", o.global_candidates},
          {"outlier_ids", o.outliers}};
}

OutlierReport outliers_from(const json& j) {
  OutlierReport o;
  o.theta_g = j.at("theta_g").get<double>();
  o.theta_l = j.at("theta_l").get<double>();
  o.user_count = j.at("users").get<std::size_t>();
  o.excluded_users = j.at("excluded_users").get<std::size_t>();
  o.outlier_count = j.at("count").get<std::size_t>();
  for (const auto& [k, v] : j.at("d_nn_percentiles").items()) o.d_nn_percentiles[k] = v.get<double>();
  o.global_candidates = j.at("candidate_ids").get<std::vector<std::string>>();
  o.outliers = j.at("outlier_ids").get<std::vector<std::string>>();
  return o;
}

template <typename T, typename F>
json block_or_null(const std::optional<T>& b, F to_json) {
  return b ? to_json(*b) : json(nullptr);
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Scalar metrics of a report, in a fixed order, for the CSV export.
std::vector<std::pair<std::string, std::optional<double>>> scalar_metrics(const MetricReport& r) {
  std::vector<std::pair<std::string, std::optional<double>>> out;
  for (std::size_t i = 0; i < kernels::kMaxNgram; ++i) {
    const std::string p = "lexical.n" + std::to_string(i + 1) + ".";
    std::optional<NgramStats> s = r.lexical ? r.lexical->orders[i] : std::nullopt;
    out.emplace_back(p + "L_r", s ? std::optional(s->uniqueness_ratio) : std::nullopt);
    out.emplace_back(p + "H_n", s ? std::optional(s->normalized_entropy) : std::nullopt);
  }
  const auto& sem = r.semantic;
  out.emplace_back("semantic.semantic_ratio", sem ? std::optional(sem->semantic_ratio) : std::nullopt);
  out.emplace_back("semantic.avg_mst_edge_length", sem ? std::optional(sem->avg_mst_edge_length) : std::nullopt);
  out.emplace_back("semantic.excluded_reviews",
                   sem ? std::optional(static_cast<double>(sem->excluded_reviews)) : std::nullopt);
  out.emplace_back("semantic.components", sem ? std::optional(static_cast<double>(sem->components)) : std::nullopt);
  for (std::size_t i = 0; i < kRatingLevels; ++i) {
    out.emplace_back("sentiment.y" + std::to_string(i + 1), r.sentiment ? r.sentiment->y[i] : std::nullopt);
  }
  out.emplace_back("sentiment.d_sen", r.sentiment ? std::optional(r.sentiment->d_sen) : std::nullopt);
  const auto priv = [&](double ContentPrivacyStats::*field) {
    return r.privacy ? std::optional(r.privacy->stats.*field) : std::nullopt;
  };
  out.emplace_back("privacy.mean_entity_count", priv(&ContentPrivacyStats::mean_entity_count));
  out.emplace_back("privacy.max_entity_count", priv(&ContentPrivacyStats::max_entity_count));
  out.emplace_back("privacy.mean_entity_density", priv(&ContentPrivacyStats::mean_entity_density));
  out.emplace_back("privacy.max_entity_density", priv(&ContentPrivacyStats::max_entity_density));
  out.emplace_back("privacy.mean_nominal_count", priv(&ContentPrivacyStats::mean_nominal_count));
  out.emplace_back("privacy.max_nominal_count", priv(&ContentPrivacyStats::max_nominal_count));
  out.emplace_back("privacy.mean_nominal_density", priv(&ContentPrivacyStats::mean_nominal_density));
  out.emplace_back("privacy.max_nominal_density", priv(&ContentPrivacyStats::max_nominal_density));
  const auto& o = r.outliers;
  out.emplace_back("outliers.count", o ? std::optional(static_cast<double>(o->outlier_count)) : std::nullopt);
  out.emplace_back("outliers.candidates",
                   o ? std::optional(static_cast<double>(o->global_candidates.size())) : std::nullopt);
  std::optional<double> p01;
  if (o) {
    if (auto it = o->d_nn_percentiles.find("p01"); it != o->d_nn_percentiles.end()) p01 = it->second;
  }
  out.emplace_back("outliers.d_nn_p01", p01);
  return out;
}

}  // namespace

std::string to_string(Block b) { return std::string(kBlockNames[static_cast<std::size_t>(b)]); }

bool MetricReport::backend_failure() const {
  for (const auto& [block, reason] : skipped) {
    if (reason.rfind(kBackendFailurePrefix, 0) == 0) return true;
  }
  return false;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string report_to_json(const MetricReport& r) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["input"] = {{"source", r.input.source}, {"reviews", r.input.reviews}, {"empty_reviews", r.input.empty_reviews}};
  j["lexical"] = block_or_null(r.lexical, lexical_json);
  j["semantic"] = block_or_null(r.semantic, semantic_json);
  j["sentiment"] = block_or_null(r.sentiment, sentiment_json);
  j["privacy"] = block_or_null(r.privacy, privacy_json);
  j["outliers"] = block_or_null(r.outliers, outliers_json);
  json skipped = json::object();
  for (const auto& [k, v] : r.skipped) skipped[k] = v;
  j["skipped"] = skipped;
  json prov;
  prov["config_hash"] = r.provenance.config_hash;
  prov["seed"] = r.provenance.seed;
  prov["settings"] = r.provenance.settings_json.empty() ? json::object() : json::parse(r.provenance.settings_json);
  if (!r.provenance.timings_ms.empty()) {
    json t = json::object();
    for (const auto& [k, v] : r.provenance.timings_ms) t[k] = v;
    prov["timings_ms"] = t;
  }
  j["provenance"] = prov;
  return j.dump(2) + "\n";
}

MetricReport report_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("report is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("schema_version").get<int>() != kReportSchemaVersion) throw SchemaError("unsupported report schema version");
    MetricReport r;
    const auto& in = j.at("input");
    r.input.source = in.at("source").get<std::string>();
    r.input.reviews = in.at("reviews").get<std::size_t>();
    r.input.empty_reviews = in.at("empty_reviews").get<std::size_t>();
    if (!j.at("lexical").is_null()) r.lexical = lexical_from(j["lexical"]);
    if (!j.at("semantic").is_null()) r.semantic = semantic_from(j["semantic"]);
    if (!j.at("sentiment").is_null()) r.sentiment = sentiment_from(j["sentiment"]);
    if (!j.at("privacy").is_null()) r.privacy = privacy_from(j["privacy"]);
    if (!j.at("outliers").is_null()) r.outliers = outliers_from(j["outliers"]);
    for (const auto& [k, v] : j.at("skipped").items()) r.skipped[k] = v.get<std::string>();
    const auto& prov = j.at("provenance");
    r.provenance.config_hash = prov.at("config_hash").get<std::string>();
    r.provenance.seed = prov.at("seed").get<std::uint64_t>();
    const auto& settings = prov.at("settings");
    r.provenance.settings_json = settings.empty() ? std::string() : settings.dump();
    if (prov.contains("timings_ms")) {
      for (const auto& [k, v] : prov["timings_ms"].items()) r.provenance.timings_ms[k] = v.get<double>();
    }
    return r;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("report JSON: ") + e.what());
  }
}

std::string report_to_csv(const MetricReport& report) {
  std::string out = "metric,value\n";
  for (const auto& [name, value] : scalar_metrics(report)) {
    out += name;
    out += ',';
    if (value) out += format_number(*value);
    out += '\n';
  }
  return out;
}

void write_report(const MetricReport& report, const std::filesystem::path& path, ReportFormat format) {
  write_file(path, format == ReportFormat::json ? report_to_json(report) : report_to_csv(report));
}

MetricReport load_report(const std::filesystem::path& path) { return report_from_json(read_file(path)); }

ComparisonTable compare(std::span<const MetricReport> reports, std::span<const std::string> labels) {
  if (reports.size() < 2) throw PreconditionError("compare needs at least two reports");
  if (labels.size() != reports.size()) throw PreconditionError("one label per report required");
  ComparisonTable t;
  t.labels.assign(labels.begin(), labels.end());
  std::vector<std::vector<std::pair<std::string, std::optional<double>>>> metrics;
  for (const auto& r : reports) metrics.push_back(scalar_metrics(r));
  // Rows in the order of the published comparison table.
  static const std::vector<std::pair<std::string, std::string>> kRows = [] {
    std::vector<std::pair<std::string, std::string>> rows;
    for (int n = 1; n <= 5; ++n) rows.emplace_back("lexical.n" + std::to_string(n) + ".L_r", "");
    for (int n = 1; n <= 5; ++n) rows.emplace_back("lexical.n" + std::to_string(n) + ".H_n", "");
    for (const char* m : {"semantic.avg_mst_edge_length", "semantic.semantic_ratio", "sentiment.d_sen",
                          "privacy.mean_entity_count", "privacy.mean_nominal_count", "privacy.mean_entity_density",
                          "privacy.mean_nominal_density", "outliers.d_nn_p01", "outliers.count"}) {
      rows.emplace_back(m, "");
    }
    return rows;
  }();
  for (const auto& [name, unused] : kRows) {
    ComparisonRow row{name, {}};
    for (const auto& m : metrics) {
      std::optional<double> v;
      for (const auto& [k, value] : m) {
        if (k == name) v = value;
      }
      row.values.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

namespace {

std::optional<double> delta(const ComparisonRow& row, std::size_t col) {
  if (!row.values[0] || !row.values[col]) return std::nullopt;
  return *row.values[col] - *row.values[0];
}

std::string cell(const std::optional<double>& v) { return v ? format_short(*v) : std::string(kMissing); }

std::vector<std::vector<std::string>> table_cells(const ComparisonTable& t) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"metric"};
  for (const auto& l : t.labels) header.push_back(l);
  for (std::size_t c = 1; c < t.labels.size(); ++c) header.push_back("delta " + t.labels[c]);
  cells.push_back(header);
  for (const auto& row : t.rows) {
    std::vector<std::string> line{row.metric};
    for (const auto& v : row.values) line.push_back(cell(v));
    for (std::size_t c = 1; c < row.values.size(); ++c) line.push_back(cell(delta(row, c)));
    cells.push_back(std::move(line));
  }
  return cells;
}

}  // namespace

std::string comparison_csv(const ComparisonTable& table) {
  std::string out;
  for (const auto& line : table_cells(table)) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) out += ',';
      out += csv::quote(line[i]);
    }
    out += '\n';
  }
  return out;
}

std::string comparison_markdown(const ComparisonTable& table) {
  const auto cells = table_cells(table);
  std::string out;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    out += '|';
    for (const auto& c : cells[r]) out += ' ' + c + " |";
    out += '\n';
    if (r == 0) {
      out += '|';
      for (std::size_t i = 0; i < cells[r].size(); ++i) out += i == 0 ? " --- |" : " ---: |";
      out += '\n';
    }
  }
  return out;
}

}  // namespace corpus_audit
