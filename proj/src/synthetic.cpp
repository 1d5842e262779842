#include "corpus_audit/synthetic.hpp"

#include <algorithm>
#include <array>
#include <string_view>

namespace corpus_audit {

namespace {

constexpr std::array<std::string_view, 48> kNouns{
    "shirt",  "jacket", "dress",   "strap",   "zipper",  "sole",    "pocket",   "collar",   "fabric",  "seam",
    "button", "hood",   "lining",  "cuff",    "waist",   "sleeve",  "heel",     "lace",     "buckle",  "stitch",
    "color",  "fit",    "size",    "package", "box",     "price",   "delivery", "material", "cotton",  "wool",
    "denim",  "leather", "handle", "lid",     "cable",   "charger", "battery",  "screen",   "blender", "kettle",
    "mug",    "pillow", "blanket", "towel",   "backpack", "wallet", "belt",     "scarf"};

constexpr std::array<std::string_view, 40> kModifiers{
    "lightweight", "thick",   "thin",     "bright",   "dark",     "loose",    "snug",    "long",
    "short",       "wide",    "narrow",   "heavy",    "smooth",   "rough",    "warm",    "cool",
    "stretchy",    "stiff",   "roomy",    "compact",  "glossy",   "matte",    "faded",   "vivid",
    "quiet",       "noisy",   "fast",     "slow",     "plain",    "patterned", "classic", "modern",
    "daily",       "weekend", "winter",   "summer",   "outdoor",  "indoor",   "travel",  "office"};

constexpr std::array<std::string_view, 32> kVerbs{
    "arrived", "washed",  "wore",    "fits",    "holds",   "ripped", "faded",   "shrank",
    "kept",    "packed",  "used",    "carried", "ordered", "swapped", "tested", "charged",
    "folded",  "hung",    "stored",  "matched", "paired",  "tried",  "gifted",  "replaced",
    "checked", "noticed", "cleaned", "lasted",  "worked",  "failed", "moved",   "opened"};

constexpr std::array<std::string_view, 16> kPositive{
    "great",   "excellent", "love",   "perfect", "comfortable", "soft",  "sturdy",  "nice",
    "awesome", "happy",     "pleased", "recommend", "beautiful", "durable", "amazing", "fantastic"};

constexpr std::array<std::string_view, 16> kNegative{
    "poor",         "terrible", "awful",  "broke",    "cheap",   "flimsy", "disappointed", "returned",
    "itchy",        "worst",    "useless", "defective", "waste", "bad",    "uncomfortable", "horrible"};

constexpr std::array<std::string_view, 24> kUnusual{
    "quixotic",  "zephyr",    "obsidian",  "marmalade", "labyrinth", "phosphor", "gossamer",  "halcyon",
    "vellum",    "cormorant", "sextant",   "peregrine", "tamarind",  "basalt",   "filigree",  "juniper",
    "ochre",     "quagmire",  "rhapsody",  "saffron",   "tundra",    "umbra",    "vermilion", "wherry"};

constexpr std::array<std::string_view, 12> kPersonal{
    "Bought this for my daughter Emma.",
    "I am 5'8 and 140 lbs and the M fits well.",
    "My husband wears an XL.",
    "Sent one to my mom in Denver.",
    "Our son is 11yo and it fits him.",
    "Ordered a size 9 for my wife.",
    "Got it for my grandson before his trip to Boston.",
    "My sister Laura liked it too.",
    "I wear a 34 waist and the L was right.",
    "Gift for my boyfriend, he is 6'1.",
    "My kids use it every day.",
    "Took it to Lake Tahoe last summer."};

template <std::size_t N>
std::string_view pick(std::mt19937_64& rng, const std::array<std::string_view, N>& bank) {
  return bank[std::uniform_int_distribution<std::size_t>(0, N - 1)(rng)];
}

}  // namespace

ReviewWriter::ReviewWriter(std::uint64_t seed) : rng_(seed) {}

std::size_t ReviewWriter::draw_length() {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
  if (u < 0.30) return std::uniform_int_distribution<std::size_t>(2, 10)(rng_);
  if (u < 0.75) return std::uniform_int_distribution<std::size_t>(11, 40)(rng_);
  if (u < 0.95) return std::uniform_int_distribution<std::size_t>(41, 80)(rng_);
  return std::uniform_int_distribution<std::size_t>(81, 120)(rng_);
}

int ReviewWriter::draw_rating() {
  static constexpr std::array<double, 5> kWeights{0.08, 0.07, 0.12, 0.23, 0.50};
  std::discrete_distribution<int> d(kWeights.begin(), kWeights.end());
  return d(rng_) + 1;
}

std::string ReviewWriter::write(int rating, std::size_t words) {
  const double positive_share = (std::clamp(rating, 1, 5) - 1) / 4.0;
  std::bernoulli_distribution polar(0.2);
  std::bernoulli_distribution positive(positive_share);
  std::uniform_int_distribution<int> slot(0, 2);
  std::string out;
  bool has_polar = false;
  for (std::size_t w = 0; w < words; ++w) {
    std::string_view word;
    const bool last = w + 1 == words;
    if (polar(rng_) || (last && !has_polar)) {
      word = positive(rng_) ? pick(rng_, kPositive) : pick(rng_, kNegative);
      has_polar = true;
    } else {
      switch (slot(rng_)) {
        case 0: word = pick(rng_, kNouns); break;
        case 1: word = pick(rng_, kModifiers); break;
        default: word = pick(rng_, kVerbs); break;
      }
    }
    if (!out.empty()) out += ' ';
    out += word;
  }
  if (!out.empty()) out += '.';
  return out;
}

std::string ReviewWriter::personal_detail() { return std::string(pick(rng_, kPersonal)); }

std::string ReviewWriter::write_unusual(std::size_t words) {
  std::string out;
  for (std::size_t w = 0; w < words; ++w) {
    if (!out.empty()) out += ' ';
    out += pick(rng_, kUnusual);
  }
  if (!out.empty()) out += '.';
  return out;
}

Corpus synthetic_corpus(const SyntheticOptions& options) {
  ReviewWriter writer(options.seed);
  Corpus corpus;
  corpus.source_label = "synthetic";
  corpus.reviews.reserve(options.reviews);
  const std::size_t per_user = std::max<std::size_t>(1, options.reviews_per_user);
  std::bernoulli_distribution unusual(options.unusual_user_fraction);
  std::bernoulli_distribution personal(options.personal_detail_rate);
  bool current_unusual = false;
  for (std::size_t i = 0; i < options.reviews; ++i) {
    const std::size_t user = i / per_user;
    if (i % per_user == 0) current_unusual = unusual(writer.rng());
    const int rating = writer.draw_rating();
    const std::size_t words = writer.draw_length();
    std::string text = current_unusual ? writer.write_unusual(words) : writer.write(rating, words);
    if (!current_unusual && personal(writer.rng())) text += " " + writer.personal_detail();
    corpus.reviews.push_back({"user" + std::to_string(user), rating, std::move(text)});
  }
  return corpus;
}

}  // namespace corpus_audit
