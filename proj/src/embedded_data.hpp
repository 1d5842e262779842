#pragma once

#include <string_view>

// Bundled text resources (see data/ and cmake/EmbedData.cmake).
namespace corpus_audit::data {

std::string_view data_stopwords_en();
std::string_view data_sentiment_positive();
std::string_view data_sentiment_negative();
std::string_view data_nominal_pronouns();
std::string_view data_nominal_roles();

std::string_view prompts_level1();
std::string_view prompts_level2();

std::string_view pools_lexical();
std::string_view pools_semantic();
std::string_view pools_sentiment();
std::string_view pools_outlier();
std::string_view pools_uniqueness();
std::string_view pools_length();
std::string_view pools_format();

}  // namespace corpus_audit::data
