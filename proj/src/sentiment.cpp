#include "envsent/sentiment.hpp"

#include <cmath>
#include <unordered_set>

#include <json.hpp>

#include "envsent/errors.hpp"
#include "envsent/io.hpp"

namespace envsent {

using nlohmann::json;

std::string_view to_string(SentimentLabel label) {
  switch (label) {
    case SentimentLabel::negative: return "negative";
    case SentimentLabel::neutral: return "neutral";
    case SentimentLabel::positive: return "positive";
  }
  return "neutral";
}

std::optional<SentimentLabel> label_from_string(std::string_view name) {
  if (name == "negative" || name == "-1") return SentimentLabel::negative;
  if (name == "neutral" || name == "0") return SentimentLabel::neutral;
  if (name == "positive" || name == "1") return SentimentLabel::positive;
  return std::nullopt;
}

CooccurrenceCounts count(const std::vector<LabeledTokens>& corpus,
                         const TrainConfig& config) {
  if (corpus.empty()) throw DataError("training corpus is empty");
  CooccurrenceCounts counts;
  counts.n_docs = corpus.size();
  const bool seed_mode = config.mode == TrainMode::seed_words;
  for (const auto& [tokens, label] : corpus) {
    if (label == Polarity::positive)
      ++counts.n_pos_docs;
    else
      ++counts.n_neg_docs;
    std::unordered_set<std::string> present(tokens.begin(), tokens.end());
    for (const auto& word : present) {
      ++counts.doc_freq[word];
      if (label == Polarity::positive)
        ++counts.pos_doc_freq[word];
      else
        ++counts.neg_doc_freq[word];
    }
    if (seed_mode && config.seeds) {
      for (const auto& seed : config.seeds->positive) {
        if (!present.count(seed)) continue;
        for (const auto& word : present) ++counts.pair_doc_freq[word][seed];
      }
      for (const auto& seed : config.seeds->negative) {
        if (!present.count(seed)) continue;
        for (const auto& word : present) ++counts.pair_doc_freq[word][seed];
      }
    }
  }
  return counts;
}

namespace {

std::uint64_t lookup(const std::unordered_map<std::string, std::uint64_t>& m,
                     const std::string& key) {
  auto it = m.find(key);
  return it == m.end() ? 0 : it->second;
}

double p_word(const CooccurrenceCounts& c, const std::string& w, double k) {
  return (static_cast<double>(lookup(c.doc_freq, w)) + k) /
         (static_cast<double>(c.n_docs) + 2.0 * k);
}

double p_class(const CooccurrenceCounts& c, Polarity cls, double k) {
  std::uint64_t n = cls == Polarity::positive ? c.n_pos_docs : c.n_neg_docs;
  return (static_cast<double>(n) + k) / (static_cast<double>(c.n_docs) + 2.0 * k);
}

double p_joint_class(const CooccurrenceCounts& c, const std::string& w,
                     Polarity cls, double k) {
  const auto& table =
      cls == Polarity::positive ? c.pos_doc_freq : c.neg_doc_freq;
  return (static_cast<double>(lookup(table, w)) + k) /
         (static_cast<double>(c.n_docs) + 4.0 * k);
}

double p_joint_pair(const CooccurrenceCounts& c, const std::string& w,
                    const std::string& seed, double k) {
  std::uint64_t n = 0;
  auto it = c.pair_doc_freq.find(w);
  if (it != c.pair_doc_freq.end()) n = lookup(it->second, seed);
  return (static_cast<double>(n) + k) / (static_cast<double>(c.n_docs) + 4.0 * k);
}

}  // namespace

double pmi(const CooccurrenceCounts& counts, const std::string& word,
           Polarity class_event, const TrainConfig& config) {
  const double k = config.smoothing_k;
  return std::log2(p_joint_class(counts, word, class_event, k) /
                   (p_word(counts, word, k) * p_class(counts, class_event, k)));
}

double pmi(const CooccurrenceCounts& counts, const std::string& word,
           const std::string& seed_word, const TrainConfig& config) {
  const double k = config.smoothing_k;
  return std::log2(p_joint_pair(counts, word, seed_word, k) /
                   (p_word(counts, word, k) * p_word(counts, seed_word, k)));
}

std::optional<double> semantic_orientation(const CooccurrenceCounts& counts,
                                           const std::string& word,
                                           const TrainConfig& config) {
  std::uint64_t raw_freq = lookup(counts.doc_freq, word);
  if (raw_freq < config.min_freq || raw_freq == 0) return std::nullopt;
  double freq = static_cast<double>(raw_freq);
  if (config.mode == TrainMode::class_label) {
    return (pmi(counts, word, Polarity::positive, config) -
            pmi(counts, word, Polarity::negative, config)) /
           freq;
  }
  if (!config.seeds || config.seeds->positive.empty() ||
      config.seeds->negative.empty()) {
    throw ConfigError("seed_words mode requires non-empty seed lexicons");
  }
  double acc = 0.0;
  for (const auto& seed : config.seeds->positive)
    acc += pmi(counts, word, seed, config);
  for (const auto& seed : config.seeds->negative)
    acc -= pmi(counts, word, seed, config);
  return acc / freq;
}

SentimentModel train(const std::vector<LabeledTokens>& corpus,
                     const TrainConfig& config) {
  if (config.mode == TrainMode::seed_words) {
    if (!config.seeds || config.seeds->positive.empty() ||
        config.seeds->negative.empty())
      throw ConfigError("seed_words mode requires non-empty seed lexicons");
    for (const auto& seed : config.seeds->positive) {
      if (config.seeds->negative.count(seed))
        throw ConfigError("seed lexicons overlap on '" + seed + "'");
    }
  }
  CooccurrenceCounts counts = count(corpus, config);
  if (counts.n_pos_docs == 0 || counts.n_neg_docs == 0)
    throw DataError("training corpus must contain both classes");
  SentimentModel model;
  model.config = config;
  for (const auto& [word, freq] : counts.doc_freq) {
    if (freq < config.min_freq) continue;
    model.freq[word] = freq;
  }
  // std::map iteration keeps SO evaluation order deterministic.
  for (const auto& [word, freq] : model.freq)
    model.so[word] = *semantic_orientation(counts, word, config);
  return model;
}

double score_document(const SentimentModel& model, const TokenSeq& tokens) {
  double total = 0.0;
  for (const auto& token : tokens) {
    auto it = model.so.find(token);
    if (it != model.so.end()) total += it->second;
  }
  return total;
}

SentimentLabel classify(double score, const NeutralBand& band) {
  if (score < band.low) return SentimentLabel::negative;
  if (score > band.high) return SentimentLabel::positive;
  return SentimentLabel::neutral;
}

namespace {

constexpr int kModelVersion = 1;
constexpr const char* kModelFormat = "envsent-model";

json config_to_json(const TrainConfig& config) {
  json j;
  j["mode"] =
      config.mode == TrainMode::class_label ? "class_label" : "seed_words";
  j["smoothing_k"] = config.smoothing_k;
  j["min_freq"] = config.min_freq;
  j["neutral_band"] = {config.neutral_band.low, config.neutral_band.high};
  if (config.seeds) {
    j["seeds"]["positive"] = std::vector<std::string>(
        config.seeds->positive.begin(), config.seeds->positive.end());
    j["seeds"]["negative"] = std::vector<std::string>(
        config.seeds->negative.begin(), config.seeds->negative.end());
  }
  return j;
}

TrainConfig config_from_json(const json& j) {
  TrainConfig config;
  std::string mode = j.at("mode").get<std::string>();
  if (mode == "class_label") {
    config.mode = TrainMode::class_label;
  } else if (mode == "seed_words") {
    config.mode = TrainMode::seed_words;
  } else {
    throw FormatError("unknown train mode: " + mode);
  }
  config.smoothing_k = j.at("smoothing_k").get<double>();
  config.min_freq = j.at("min_freq").get<std::uint64_t>();
  config.neutral_band.low = j.at("neutral_band").at(0).get<double>();
  config.neutral_band.high = j.at("neutral_band").at(1).get<double>();
  if (j.contains("seeds")) {
    SeedLexicons seeds;
    for (const auto& s : j["seeds"]["positive"])
      seeds.positive.insert(s.get<std::string>());
    for (const auto& s : j["seeds"]["negative"])
      seeds.negative.insert(s.get<std::string>());
    config.seeds = std::move(seeds);
  }
  return config;
}

std::string checksum_hex(const json& payload) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(payload.dump())));
  return buf;
}

}  // namespace

std::string serialize_model(const SentimentModel& model) {
  json payload;
  payload["config"] = config_to_json(model.config);
  payload["freq"] = model.freq;
  payload["so"] = model.so;
  json doc;
  doc["format"] = kModelFormat;
  doc["version"] = kModelVersion;
  doc["checksum"] = checksum_hex(payload);
  doc["payload"] = payload;
  return doc.dump(2) + "\n";
}

SentimentModel parse_model(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object())
    throw FormatError("model file is not valid JSON");
  if (!doc.contains("format") || doc["format"] != kModelFormat)
    throw FormatError("not a sentiment model file");
  if (!doc.contains("version") || doc["version"].get<int>() != kModelVersion)
    throw FormatError("unsupported model version");
  if (!doc.contains("payload") || !doc.contains("checksum"))
    throw FormatError("model file is missing payload or checksum");
  const json& payload = doc["payload"];
  if (doc["checksum"].get<std::string>() != checksum_hex(payload))
    throw FormatError("model checksum mismatch");
  SentimentModel model;
  model.config = config_from_json(payload.at("config"));
  for (const auto& [word, value] : payload.at("freq").items())
    model.freq[word] = value.get<std::uint64_t>();
  for (const auto& [word, value] : payload.at("so").items())
    model.so[word] = value.get<double>();
  return model;
}

void save_model(const SentimentModel& model,
                const std::filesystem::path& path) {
  write_file_atomic(path, serialize_model(model));
}

SentimentModel load_model(const std::filesystem::path& path) {
  return parse_model(read_file(path));
}

}  // namespace envsent
