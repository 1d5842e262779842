#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "corpus_audit/completion_clients.hpp"
#include "corpus_audit/errors.hpp"
#include "corpus_audit/prompt_optimizer.hpp"
#include "corpus_audit/sentiment_metrics.hpp"

using namespace corpus_audit;

namespace {

InstructionPools letter_pools() {
  InstructionPools p;
  for (auto& pool : p.pools) pool = {"A", "B", "C", "D"};
  return p;
}

GenerationConfig fast_config() {
  GenerationConfig c;
  c.embedding.dimension = 16;
  c.embedding.epochs = 2;
  return c;
}

MetricVerdicts all_passing() {
  MetricVerdicts v;
  for (auto& x : v.verdicts) x.pass = true;
  return v;
}

std::string words(std::size_t n, const std::string& stem) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += stem + std::to_string(i) + " ";
  return s;
}

class ScriptedClient final : public CompletionClient {
 public:
  explicit ScriptedClient(std::vector<std::string> replies) : replies_(std::move(replies)) {}
  std::string name() const override { return "scripted"; }
  std::string complete(const std::string& prompt) override {
    prompts.push_back(prompt);
    if (calls_ >= replies_.size()) throw BackendError("endpoint went away");
    return replies_[calls_++];
  }
  std::vector<std::string> prompts;

 private:
  std::vector<std::string> replies_;
  std::size_t calls_ = 0;
};

}  // namespace

TEST_CASE("section keeps the three newest instructions") {
  auto s = initial_prompt_state(1, 20);
  const auto pools = letter_pools();
  for (int i = 0; i < 4; ++i) push_instruction(s, SectionKind::lexical, pools);
  const auto& active = s.section(SectionKind::lexical);
  REQUIRE(active.size() == 3);
  CHECK(active[0].text == "B");
  CHECK(active[1].text == "C");
  CHECK(active[2].text == "D");
  // The cursor wraps around the pool.
  push_instruction(s, SectionKind::lexical, pools);
  CHECK(s.section(SectionKind::lexical).back().text == "A");
  CHECK(s.section(SectionKind::lexical).size() == kMaxActiveInstructions);
}

TEST_CASE("update_prompt touches failed sections only") {
  const auto pools = letter_pools();
  const auto s0 = initial_prompt_state(1, 20);
  const auto s1 = update_prompt(s0, all_passing(), pools);
  CHECK(s1.sections == s0.sections);
  CHECK(s1.cycle == 1);

  auto v = all_passing();
  v[Dimension::length].pass = false;
  const auto s2 = update_prompt(s1, v, pools);
  CHECK(s2.section(SectionKind::length).size() == 1);
  CHECK(s2.section(SectionKind::length)[0].text == "A");
  CHECK(s2.section(SectionKind::lexical).empty());
  const auto text = render_prompt(s2);
  CHECK(text.find("LENGTH DIVERSITY GUIDELINES\n- A") != std::string::npos);
  CHECK(text.find("LEXICAL DIVERSITY GUIDELINES") == std::string::npos);
}

TEST_CASE("an empty pool is a configuration error") {
  auto pools = letter_pools();
  pools[SectionKind::semantic].clear();
  auto v = all_passing();
  v[Dimension::semantic].pass = false;
  CHECK_THROWS_AS(update_prompt(initial_prompt_state(1, 20), v, pools), ConfigError);
}

TEST_CASE("rendering") {
  auto s = initial_prompt_state(1, 7, "5,Great fit,u1");
  auto text = render_prompt(s);
  CHECK(text.find("Generate 7 new product reviews") != std::string::npos);
  CHECK(text.find("5,Great fit,u1") != std::string::npos);
  CHECK(text.find("<Place example reviews here>") == std::string::npos);
  CHECK(render_prompt(initial_prompt_state(1, 7)).find("<Place example reviews here>") != std::string::npos);

  const auto pools = letter_pools();
  push_instruction(s, SectionKind::format, pools);
  push_instruction(s, SectionKind::lexical, pools);
  text = render_prompt(s);
  const auto lex = text.find("LEXICAL DIVERSITY GUIDELINES");
  const auto fmt = text.find("OUTPUT FORMAT GUIDELINES");
  CHECK(lex != std::string::npos);
  CHECK(fmt > lex);
  CHECK(render_prompt(s) == text);
  CHECK_FALSE(default_pools()[SectionKind::length].empty());
  CHECK_THROWS_AS(base_template(3), ConfigError);
}

TEST_CASE("length bins") {
  CHECK(length_bin(0) == 0);
  CHECK(length_bin(10) == 0);
  CHECK(length_bin(11) == 1);
  CHECK(length_bin(40) == 1);
  CHECK(length_bin(41) == 2);
  CHECK(length_bin(80) == 2);
  CHECK(length_bin(81) == 3);
}

TEST_CASE("batch matching the length targets passes") {
  std::vector<Review> batch;
  const std::array<std::pair<std::size_t, std::size_t>, 4> plan{{{5, 6}, {8, 20}, {5, 60}, {2, 90}}};
  int k = 0;
  for (const auto& [count, len] : plan)
    for (std::size_t i = 0; i < count; ++i) batch.push_back({"u", 5, words(len, "w" + std::to_string(k++) + "x")});
  LexiconSentiment lex;
  const auto v = evaluate_batch(batch, {}, fast_config(), {}, lex);
  CHECK(v[Dimension::length].pass);
  CHECK(v[Dimension::length].score == doctest::Approx(0.0));
  CHECK(v[Dimension::uniqueness].pass);

  // Everything medium: bin 1 is off by 0.6.
  std::vector<Review> medium(20, Review{"u", 5, ""});
  for (std::size_t i = 0; i < medium.size(); ++i) medium[i].text = words(20, "m" + std::to_string(i) + "x");
  const auto m = evaluate_batch(medium, {}, fast_config(), {}, lex);
  CHECK_FALSE(m[Dimension::length].pass);
  CHECK(m[Dimension::length].score == doctest::Approx(0.6));
}

TEST_CASE("duplicates against history fail uniqueness") {
  LexiconSentiment lex;
  const std::vector<Review> history{{"a", 5, "Lovely soft shirt."}};
  const std::vector<Review> batch{{"b", 5, "lovely  soft shirt"}, {"c", 1, "awful zipper broke"}};
  const auto v = evaluate_batch(batch, history, fast_config(), {}, lex);
  CHECK_FALSE(v[Dimension::uniqueness].pass);
  CHECK(v[Dimension::uniqueness].score == doctest::Approx(0.5));
}

TEST_CASE("identical texts fail lexical and semantic") {
  LexiconSentiment lex;
  const std::vector<Review> batch(10, Review{"u", 5, "This product is okay."});
  const auto v = evaluate_batch(batch, {}, fast_config(), {}, lex);
  CHECK_FALSE(v[Dimension::lexical].pass);
  CHECK_FALSE(v[Dimension::semantic].pass);
  CHECK_FALSE(v[Dimension::uniqueness].pass);
  CHECK_THROWS_AS(evaluate_batch(std::vector<Review>{}, {}, fast_config(), {}, lex), PreconditionError);
}

TEST_CASE("parsing completions") {
  const auto csv = parse_completion("Sure! Here you go:\n```\nrating,review,user-id\n5,\"Nice, soft\",u1\n2,bad,fit,u2\n```\n");
  REQUIRE(csv.size() == 2);
  CHECK(csv[0].text == "Nice, soft");
  CHECK(csv[1].text == "bad,fit");
  CHECK(csv[1].user_id == "u2");
  const auto js = parse_completion(R"([{"rating": 4, "review": "ok", "user-id": "x"}])");
  REQUIRE(js.size() == 1);
  CHECK(js[0].rating == 4);
  const auto wrapped = parse_completion(R"({"reviews": [{"rating": 3, "review": "meh", "user_id": "y"}]})");
  CHECK(wrapped.size() == 1);
  CHECK_THROWS_AS(parse_completion("I cannot help with that."), SchemaError);
  CHECK_THROWS_AS(parse_completion("rating,review,user-id\n9,bad rating,u\n"), SchemaError);
}

TEST_CASE("configuration file") {
  const auto c = parse_generation_config(
      R"({"batch_size": 10, "max_cycles": 3, "thresholds": {"lexical": 0.3},
          "length_targets": {"fractions": [0.1, 0.6, 0.2, 0.1], "tolerance": 0.05}})");
  CHECK(c.batch_size == 10);
  CHECK(c.max_cycles == 3);
  CHECK(c.thresholds.lexical == 0.3);
  CHECK(c.thresholds.semantic == Thresholds{}.semantic);
  CHECK(c.length_targets.fractions[1] == 0.6);
  CHECK_THROWS_AS(parse_generation_config(R"({"length_targets": {"fractions": [0.5, 0.6, 0, 0]}})"), ConfigError);
  CHECK_THROWS_AS(parse_generation_config(R"({"thresholds": {"mode": "reference"}})"), ConfigError);
  CHECK_THROWS_AS(parse_generation_config("[1]"), ConfigError);
  CHECK_THROWS_AS(parse_generation_config(R"({"batch_size": "x"})"), ConfigError);
}

TEST_CASE("loop with a constant backend keeps every batch and caps the sections") {
  auto config = fast_config();
  config.max_cycles = 5;
  MockClient client({.mode = MockMode::constant});
  LexiconSentiment lex;
  const auto r = run_loop(client, config, lex);
  CHECK(client.calls() == 5);
  CHECK(r.dataset.cycles.size() == 5);
  CHECK(r.dataset.reviews.size() == 100);
  CHECK_FALSE(r.dataset.aborted);
  CHECK(r.dataset.reviews.front().cycle == 1);
  CHECK(r.dataset.reviews.back().cycle == 5);
  for (const auto& c : r.dataset.cycles) CHECK_FALSE((*c.verdicts)[Dimension::uniqueness].pass);
  CHECK(r.final_state.section(SectionKind::uniqueness).size() == kMaxActiveInstructions);
  CHECK(r.final_state.cycle == 5);
}

TEST_CASE("zero cycles does nothing") {
  auto config = fast_config();
  config.max_cycles = 0;
  MockClient client;
  LexiconSentiment lex;
  const auto r = run_loop(client, config, lex);
  CHECK(client.calls() == 0);
  CHECK(r.dataset.reviews.empty());
}

TEST_CASE("a mock that obeys the length section passes length from cycle 2") {
  auto config = fast_config();
  config.max_cycles = 3;
  MockClient client;
  LexiconSentiment lex;
  std::vector<std::string> prompts;
  const auto r = run_loop(client, config, lex, [&](const CycleRecord&, const PromptState& s) {
    prompts.push_back(render_prompt(s));
  });
  REQUIRE(r.dataset.cycles.size() >= 2);
  CHECK_FALSE((*r.dataset.cycles[0].verdicts)[Dimension::length].pass);
  CHECK((*r.dataset.cycles[1].verdicts)[Dimension::length].pass);
  CHECK(prompts[0].find("LENGTH DIVERSITY GUIDELINES") != std::string::npos);
}

TEST_CASE("stops after the configured all-pass streak") {
  auto config = fast_config();
  config.max_cycles = 10;
  config.all_pass_streak = 2;
  config.thresholds = {0.0, 0.0, 0.0, 1.0, -3.0};
  config.length_targets.tolerance = 1.0;
  MockClient client;
  LexiconSentiment lex;
  const auto r = run_loop(client, config, lex);
  CHECK(client.calls() == 2);
  CHECK(r.dataset.cycles.size() == 2);
  CHECK(r.final_state.sections == initial_prompt_state(1, 20).sections);
}

TEST_CASE("unparseable completion adds a format instruction and no reviews") {
  auto config = fast_config();
  config.max_cycles = 2;
  MockClient client({.malformed_calls = {1}});
  LexiconSentiment lex;
  const auto r = run_loop(client, config, lex);
  REQUIRE(r.dataset.cycles.size() == 2);
  CHECK_FALSE(r.dataset.cycles[0].parsed);
  CHECK_FALSE(r.dataset.cycles[0].verdicts);
  CHECK(r.dataset.cycles[1].parsed);
  CHECK(r.final_state.section(SectionKind::format).size() == 1);
  for (const auto& g : r.dataset.reviews) CHECK(g.cycle == 2);
}

TEST_CASE("backend failure ends the loop and keeps earlier batches") {
  auto config = fast_config();
  config.max_cycles = 4;
  MockClient source;
  ScriptedClient client({source.complete(render_prompt(initial_prompt_state(1, 20)))});
  LexiconSentiment lex;
  const auto r = run_loop(client, config, lex);
  CHECK(r.dataset.aborted);
  CHECK(r.dataset.abort_reason.find("endpoint went away") != std::string::npos);
  CHECK(r.dataset.reviews.size() == 20);
  CHECK(r.dataset.cycles.size() == 1);
}

TEST_CASE("dataset lines carry cycle and verdicts") {
  auto config = fast_config();
  config.max_cycles = 1;
  MockClient client;
  LexiconSentiment lex;
  const auto r = run_loop(client, config, lex);
  const auto text = format_dataset_jsonl(r.dataset);
  CHECK(std::count(text.begin(), text.end(), '\n') == 20);
  const auto first = nlohmann::json::parse(text.substr(0, text.find('\n')));
  CHECK(first["cycle"] == 1);
  CHECK(first["verdicts"].contains("length"));
  CHECK(first["verdicts"]["length"]["pass"] == false);
  CHECK(format_dataset_jsonl(r.dataset) == text);
}

TEST_CASE("custom pools from a directory") {
  const auto dir = std::filesystem::temp_directory_path() / "ca_pools_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "lexical.txt") << "use rare words\n";
  const auto p = load_pools(dir);
  CHECK(p[SectionKind::lexical] == std::vector<std::string>{"use rare words"});
  CHECK(p[SectionKind::semantic] == default_pools()[SectionKind::semantic]);
  std::filesystem::remove_all(dir);
}
