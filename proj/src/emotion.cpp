#include "envsent/emotion.hpp"

#include <bit>
#include <fstream>
#include <string>

#include "envsent/errors.hpp"

namespace envsent {

std::string_view to_string(Emotion e) {
  switch (e) {
    case Emotion::fear: return "fear";
    case Emotion::anger: return "anger";
    case Emotion::anticipation: return "anticipation";
    case Emotion::trust: return "trust";
    case Emotion::surprise: return "surprise";
    case Emotion::sadness: return "sadness";
    case Emotion::disgust: return "disgust";
    case Emotion::joy: return "joy";
  }
  return "fear";
}

std::optional<Emotion> emotion_from_string(std::string_view name) {
  for (Emotion e : kAllEmotions)
    if (name == to_string(e)) return e;
  return std::nullopt;
}

EmotionLexicon load_emotion_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open emotion lexicon: " + path.string());
  EmotionLexicon lexicon;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
      line.pop_back();
    if (line.empty()) continue;
    auto tab1 = line.find('\t');
    auto tab2 = tab1 == std::string::npos ? std::string::npos
                                          : line.find('\t', tab1 + 1);
    if (tab1 == std::string::npos || tab2 == std::string::npos) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) +
                        ": expected 'word<TAB>emotion<TAB>flag'");
    }
    std::string word = case_fold(line.substr(0, tab1));
    std::string name = line.substr(tab1 + 1, tab2 - tab1 - 1);
    std::string flag = line.substr(tab2 + 1);
    if (flag != "0" && flag != "1") {
      throw FormatError(path.string() + ":" + std::to_string(lineno) +
                        ": flag must be 0 or 1, got '" + flag + "'");
    }
    // NRCLex carries 11 categories; polarity rows and the truncated
    // "anticip" are dropped, the 8 emotions are kept.
    if (name == "positive" || name == "negative" || name == "anticip")
      continue;
    auto emotion = emotion_from_string(name);
    if (!emotion) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) +
                        ": unknown emotion '" + name + "'");
    }
    if (flag == "0") continue;
    lexicon.assoc[word] |=
        static_cast<std::uint8_t>(1u << static_cast<unsigned>(*emotion));
  }
  return lexicon;
}

EmotionProfile emotion_profile(const EmotionLexicon& lexicon,
                               const TokenSeq& tokens) {
  EmotionProfile profile;
  profile.total_tokens = tokens.size();
  std::array<std::uint64_t, kEmotionCount> tag_counts{};
  std::uint64_t total_tags = 0;
  for (const auto& token : tokens) {
    auto it = lexicon.assoc.find(token);
    if (it == lexicon.assoc.end() || it->second == 0) continue;
    ++profile.matched_tokens;
    std::uint8_t mask = it->second;
    total_tags += static_cast<std::uint64_t>(std::popcount(mask));
    for (std::size_t i = 0; i < kEmotionCount; ++i) {
      if (mask & (1u << i)) ++tag_counts[i];
    }
  }
  if (total_tags > 0) {
    for (std::size_t i = 0; i < kEmotionCount; ++i) {
      profile.intensity[i] = static_cast<double>(tag_counts[i]) /
                             static_cast<double>(total_tags);
    }
  }
  return profile;
}

std::set<Emotion> prevailing_emotions(const EmotionProfile& profile,
                                      double threshold) {
  std::set<Emotion> out;
  for (Emotion e : kAllEmotions) {
    if (profile[e] > threshold) out.insert(e);
  }
  return out;
}

std::optional<Emotion> dominant_emotion(
    const std::vector<EmotionProfile>& profiles) {
  if (profiles.empty()) return std::nullopt;
  std::array<double, kEmotionCount> mean{};
  for (const auto& p : profiles) {
    for (std::size_t i = 0; i < kEmotionCount; ++i) mean[i] += p.intensity[i];
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < kEmotionCount; ++i) {
    if (mean[i] > mean[best]) best = i;  // strict: ties keep earlier emotion
  }
  return kAllEmotions[best];
}

}  // namespace envsent
