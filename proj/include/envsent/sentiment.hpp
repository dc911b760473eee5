#ifndef ENVSENT_SENTIMENT_HPP_
#define ENVSENT_SENTIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "envsent/corpus.hpp"
#include "envsent/preprocess.hpp"

namespace envsent {

enum class SentimentLabel : int { negative = -1, neutral = 0, positive = 1 };

std::string_view to_string(SentimentLabel label);
std::optional<SentimentLabel> label_from_string(std::string_view name);

// Scores inside [low, high] map to neutral (endpoints inclusive).
struct NeutralBand {
  double low = -0.1;
  double high = 0.1;
};

struct SeedLexicons {
  std::set<std::string> positive;
  std::set<std::string> negative;
};

enum class TrainMode { class_label, seed_words };

struct TrainConfig {
  TrainMode mode = TrainMode::class_label;
  double smoothing_k = 0.5;
  std::uint64_t min_freq = 3;
  NeutralBand neutral_band{};
  std::optional<SeedLexicons> seeds;  // required in seed_words mode
  // Log base is fixed at 2; the neutral band default assumes it.
};

// Document-level presence counts: a word counts once per document. In seed
// mode pair_doc_freq additionally holds word/seed co-occurrence counts.
struct CooccurrenceCounts {
  std::uint64_t n_docs = 0;
  std::uint64_t n_pos_docs = 0;
  std::uint64_t n_neg_docs = 0;
  std::unordered_map<std::string, std::uint64_t> doc_freq;
  std::unordered_map<std::string, std::uint64_t> pos_doc_freq;
  std::unordered_map<std::string, std::uint64_t> neg_doc_freq;
  std::unordered_map<std::string, std::unordered_map<std::string, std::uint64_t>>
      pair_doc_freq;
};

using LabeledTokens = std::pair<TokenSeq, Polarity>;

// Throws DataError on an empty corpus.
CooccurrenceCounts count(const std::vector<LabeledTokens>& corpus,
                         const TrainConfig& config = {});

// Smoothed probabilities backing the PMI computation:
//   P(w)   = (doc_freq(w) + k) / (n_docs + 2k)
//   P(c)   = (n_class_docs + k) / (n_docs + 2k)
//   P(w,e) = (joint count + k) / (n_docs + 4k)
double pmi(const CooccurrenceCounts& counts, const std::string& word,
           Polarity class_event, const TrainConfig& config);
double pmi(const CooccurrenceCounts& counts, const std::string& word,
           const std::string& seed_word, const TrainConfig& config);

// Positive-minus-negative accumulated PMI divided by the word's document
// frequency. In class_label mode the class events stand in for the seed
// sums; in seed_words mode the sums run over the configured lexicons.
// Words below min_freq yield nullopt (scored 0 downstream).
std::optional<double> semantic_orientation(const CooccurrenceCounts& counts,
                                           const std::string& word,
                                           const TrainConfig& config);

struct SentimentModel {
  std::map<std::string, double> so;          // semantic orientation per word
  std::map<std::string, std::uint64_t> freq;  // training document frequency
  TrainConfig config;
};

// Builds the model over every word meeting min_freq. Throws DataError when
// the corpus is empty or single-class, ConfigError when seed mode lacks
// usable seed lexicons.
SentimentModel train(const std::vector<LabeledTokens>& corpus,
                     const TrainConfig& config = {});

// Sum of per-token orientations; out-of-vocabulary tokens contribute 0.
double score_document(const SentimentModel& model, const TokenSeq& tokens);

SentimentLabel classify(double score, const NeutralBand& band = {});

// Versioned JSON with an embedded FNV-1a checksum over the payload.
void save_model(const SentimentModel& model,
                const std::filesystem::path& path);
SentimentModel load_model(const std::filesystem::path& path);

std::string serialize_model(const SentimentModel& model);
SentimentModel parse_model(const std::string& text);

}  // namespace envsent

#endif  // ENVSENT_SENTIMENT_HPP_
