#include "corpus_audit/privacy_content.hpp"

#include <algorithm>
#include <unordered_set>

#include "corpus_audit/errors.hpp"
#include "corpus_audit/preprocess.hpp"
#include "embedded_data.hpp"
#include "utf8.hpp"

namespace corpus_audit {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Replaces typographic apostrophes with ASCII ones.
std::string ascii_apostrophes(std::string_view s) {
  std::string out(s);
  for (std::size_t p = out.find("\xE2\x80\x99"); p != std::string::npos; p = out.find("\xE2\x80\x99", p)) {
    out.replace(p, 3, "'");
  }
  return out;
}

std::size_t digit_run(std::string_view s, std::size_t pos) {
  std::size_t end = pos;
  while (end < s.size() && is_digit(s[end])) ++end;
  return end - pos;
}

// 12, 12.99, 1,000, 50%
bool is_number(std::string_view s) {
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
  if (!s.empty() && s.back() == '%') s.remove_suffix(1);
  std::size_t pos = digit_run(s, 0);
  if (pos == 0) return false;
  while (pos < s.size()) {
    if (s[pos] != '.' && s[pos] != ',') return false;
    const std::size_t run = digit_run(s, pos + 1);
    if (run == 0) return false;
    pos += 1 + run;
  }
  return true;
}

// 5'8, 5'8'', 5'
bool is_feet_inches(std::string_view s) {
  const std::size_t feet = digit_run(s, 0);
  if (feet == 0 || feet > 2 || feet >= s.size() || s[feet] != '\'') return false;
  std::size_t pos = feet + 1;
  pos += digit_run(s, pos);
  if (pos < s.size() && s.substr(pos) == "'") ++pos;
  return pos == s.size();
}

const std::unordered_set<std::string>& unit_words() {
  static const std::unordered_set<std::string> units{
      "lb",     "lbs",   "pound",  "pounds", "kg",    "kgs",   "kilo",  "kilos",  "g",      "grams",
      "oz",     "ounce", "ounces", "ft",     "foot",  "feet",  "inch",  "inches", "cm",     "mm",
      "m",      "meter", "meters", "ml",     "l",     "liter", "liters", "yr",    "yrs",    "year",
      "years",  "month", "months", "week",   "weeks", "day",   "days",  "dollars", "cents", "mph",
      "gb",     "tb",    "mah",    "w",      "watts", "hours", "hrs",   "minutes", "mins",  "size",
      "percent"};
  return units;
}

// 160lbs, 34in, 2.5oz
bool is_number_with_unit(std::string_view s) {
  std::size_t pos = digit_run(s, 0);
  if (pos == 0) return false;
  if (pos < s.size() && s[pos] == '.') {
    const std::size_t frac = digit_run(s, pos + 1);
    if (frac == 0) return false;
    pos += 1 + frac;
  }
  if (pos == s.size()) return false;
  const std::string unit = to_lower(s.substr(pos));
  // "in" only counts when glued to the number.
  return unit == "in" || unit_words().count(unit) > 0;
}

bool is_size_label(std::string_view s) {
  static const std::unordered_set<std::string> sizes{"XXS", "XS", "S", "M", "L", "XL", "XXL", "XXXL",
                                                     "2XL", "3XL", "4XL", "5XL", "2X", "3X", "1X", "0X"};
  return sizes.count(std::string(s)) > 0;
}

bool is_capitalized(std::string_view s) {
  if (s.empty()) return false;
  return utf8::is_upper(utf8::decode(s, 0).value);
}

bool is_first_person_singular(std::string_view s) {
  const std::string w = ascii_apostrophes(s);
  return w == "I" || w == "I'm" || w == "I've" || w == "I'd" || w == "I'll";
}

bool is_age_descriptor(std::string_view raw) {
  const std::string s = to_lower(raw);
  const std::size_t digits = digit_run(s, 0);
  if (digits == 0 || digits > 3) return false;
  std::string_view rest = std::string_view(s).substr(digits);
  static const std::unordered_set<std::string_view> suffixes{
      "yo", "y/o", "yr", "yrs", "yrold", "-year-old", "-yr-old", "-month-old", "-years-old", "-week-old"};
  return suffixes.count(rest) > 0;
}

bool is_measure_head(std::string_view s) {
  const std::string w = ascii_apostrophes(s);
  return is_number(w) || is_feet_inches(w) || is_number_with_unit(w);
}

std::string span_text(std::string_view text, const std::vector<Token>& tokens, std::size_t a, std::size_t b) {
  return std::string(text.substr(tokens[a].begin, tokens[b - 1].end - tokens[a].begin));
}

std::vector<EntitySpan> measure_spans(std::string_view text, const std::vector<Token>& tokens) {
  std::vector<EntitySpan> out;
  const auto is_unit = [&](std::size_t i) {
    return i < tokens.size() && unit_words().count(to_lower(tokens[i].text)) > 0;
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& tok = tokens[i];
    if (is_size_label(tok.text)) {
      out.push_back({tok.text, "MEASURE", tok.begin, tok.end});
      continue;
    }
    if (!is_measure_head(tok.text)) continue;
    std::size_t end = i + 1;
    auto can_extend = [&](std::size_t last) { return !tokens[last].closes_clause; };
    if (can_extend(end - 1) && is_unit(end)) ++end;
    // "5 ft 8", "9 to 9.5", "12 - 16 oz"
    while (end < tokens.size() && can_extend(end - 1)) {
      const std::string next = to_lower(tokens[end].text);
      if ((next == "to" || next == "-") && end + 1 < tokens.size() && can_extend(end) &&
          is_measure_head(tokens[end + 1].text)) {
        end += 2;
      } else if (is_unit(end - 1) && is_measure_head(tokens[end].text)) {
        end += 1;
      } else {
        break;
      }
      if (can_extend(end - 1) && is_unit(end)) ++end;
    }
    out.push_back({span_text(text, tokens, i, end), "MEASURE", tok.begin, tokens[end - 1].end});
    i = end - 1;
  }
  return out;
}

bool name_candidate(const Token& t) {
  return !t.sentence_initial && is_capitalized(t.text) && !is_first_person_singular(t.text);
}

std::vector<EntitySpan> name_spans(std::string_view text, const std::vector<Token>& tokens) {
  std::vector<EntitySpan> out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (!name_candidate(tokens[i])) {
      ++i;
      continue;
    }
    std::size_t end = i + 1;
    while (end < tokens.size() && !tokens[end - 1].closes_clause) {
      if (name_candidate(tokens[end])) {
        ++end;
      } else if ((tokens[end].text == "of" || tokens[end].text == "&" || tokens[end].text == "de") &&
                 !tokens[end].closes_clause && end + 1 < tokens.size() && name_candidate(tokens[end + 1])) {
        end += 2;
      } else {
        break;
      }
    }
    out.push_back({span_text(text, tokens, i, end), "NAME", tokens[i].begin, tokens[end - 1].end});
    i = end;
  }
  return out;
}

const std::unordered_set<std::string>& nominal_lexicon() {
  static const std::unordered_set<std::string> words = [] {
    std::unordered_set<std::string> s;
    for (auto& w : parse_word_list(data::data_nominal_pronouns())) s.insert(w);
    for (auto& w : parse_word_list(data::data_nominal_roles())) s.insert(w);
    return s;
  }();
  return words;
}

bool is_nominal_token(const Token& t) {
  std::string w = to_lower(ascii_apostrophes(t.text));
  if (nominal_lexicon().count(w)) return true;
  if (w.size() > 2 && w.compare(w.size() - 2, 2, "'s") == 0 && nominal_lexicon().count(w.substr(0, w.size() - 2))) {
    return true;
  }
  if (is_age_descriptor(t.text)) return true;
  return !t.sentence_initial && is_capitalized(t.text);
}

}  // namespace

std::vector<EntitySpan> resolve_overlaps(std::vector<EntitySpan> spans) {
  std::stable_sort(spans.begin(), spans.end(), [](const EntitySpan& a, const EntitySpan& b) {
    const auto la = a.end - a.begin;
    const auto lb = b.end - b.begin;
    if (la != lb) return la > lb;
    return a.begin < b.begin;
  });
  std::vector<EntitySpan> accepted;
  for (auto& s : spans) {
    const bool overlaps = std::any_of(accepted.begin(), accepted.end(), [&](const EntitySpan& a) {
      return s.begin < a.end && a.begin < s.end;
    });
    if (!overlaps && s.end > s.begin) accepted.push_back(std::move(s));
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const EntitySpan& a, const EntitySpan& b) { return a.begin < b.begin; });
  return accepted;
}

std::vector<EntitySpan> RuleExtractor::extract_entities(std::string_view text) {
  const auto tokens = scan_tokens(text);
  auto spans = measure_spans(text, tokens);
  auto names = name_spans(text, tokens);
  spans.insert(spans.end(), std::make_move_iterator(names.begin()), std::make_move_iterator(names.end()));
  return resolve_overlaps(std::move(spans));
}

std::vector<std::string> unique_nominals(std::span<const std::string> tokens) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& t : tokens) {
    std::string key = to_lower(t);
    if (seen.insert(key).second) out.push_back(std::move(key));
  }
  return out;
}

std::vector<std::string> RuleExtractor::extract_nominals(std::string_view text) {
  std::vector<std::string> hits;
  for (const auto& t : scan_tokens(text)) {
    if (is_nominal_token(t)) hits.push_back(t.text);
  }
  return unique_nominals(hits);
}

std::vector<std::vector<EntitySpan>> RuleExtractor::entities(std::span<const std::string> texts) {
  std::vector<std::vector<EntitySpan>> out(texts.size());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(texts.size()); ++i) {
    out[static_cast<std::size_t>(i)] = extract_entities(texts[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::vector<std::vector<std::string>> RuleExtractor::nominals(std::span<const std::string> texts) {
  std::vector<std::vector<std::string>> out(texts.size());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(texts.size()); ++i) {
    out[static_cast<std::size_t>(i)] = extract_nominals(texts[static_cast<std::size_t>(i)]);
  }
  return out;
}

MentionSpans make_mention_spans(std::string_view text, std::vector<EntitySpan> entities,
                                std::span<const std::string> nominals) {
  MentionSpans m;
  m.entities = resolve_overlaps(std::move(entities));
  m.nominals = unique_nominals(nominals);
  m.token_count = scan_tokens(text).size();
  if (m.token_count > 0) {
    const double t = static_cast<double>(m.token_count);
    m.entity_density = std::min(1.0, static_cast<double>(m.entities.size()) / t);
    m.nominal_density = std::min(1.0, static_cast<double>(m.nominals.size()) / t);
  }
  return m;
}

std::vector<MentionSpans> extract_mentions(std::span<const std::string> texts, MentionExtractor& extractor) {
  auto ents = extractor.entities(texts);
  auto noms = extractor.nominals(texts);
  if (ents.size() != texts.size() || noms.size() != texts.size()) {
    throw BackendError("extractor returned a result count different from the text count");
  }
  std::vector<MentionSpans> out(texts.size());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(texts.size()); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    out[i] = make_mention_spans(texts[i], std::move(ents[i]), noms[i]);
  }
  return out;
}

ContentPrivacyStats content_privacy_stats(std::span<const MentionSpans> mentions) {
  ContentPrivacyStats s;
  for (const auto& m : mentions) {
    if (m.token_count == 0) {
      ++s.excluded_reviews;
      continue;
    }
    ++s.included_reviews;
    const auto e = static_cast<double>(m.entities.size());
    const auto n = static_cast<double>(m.nominals.size());
    s.mean_entity_count += e;
    s.mean_entity_density += m.entity_density;
    s.mean_nominal_count += n;
    s.mean_nominal_density += m.nominal_density;
    s.max_entity_count = std::max(s.max_entity_count, e);
    s.max_entity_density = std::max(s.max_entity_density, m.entity_density);
    s.max_nominal_count = std::max(s.max_nominal_count, n);
    s.max_nominal_density = std::max(s.max_nominal_density, m.nominal_density);
  }
  if (s.included_reviews == 0) throw UndefinedMetricError("every review is empty; privacy statistics undefined");
  const auto count = static_cast<double>(s.included_reviews);
  s.mean_entity_count /= count;
  s.mean_entity_density /= count;
  s.mean_nominal_count /= count;
  s.mean_nominal_density /= count;
  return s;
}

}  // namespace corpus_audit
