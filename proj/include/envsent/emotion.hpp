#ifndef ENVSENT_EMOTION_HPP_
#define ENVSENT_EMOTION_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "envsent/preprocess.hpp"

namespace envsent {

// Order doubles as the dominant-emotion tie-break and the report column
// order.
enum class Emotion : std::uint8_t {
  fear,
  anger,
  anticipation,
  trust,
  surprise,
  sadness,
  disgust,
  joy,
};

inline constexpr std::size_t kEmotionCount = 8;

inline constexpr std::array<Emotion, kEmotionCount> kAllEmotions = {
    Emotion::fear,    Emotion::anger,   Emotion::anticipation,
    Emotion::trust,   Emotion::surprise, Emotion::sadness,
    Emotion::disgust, Emotion::joy,
};

std::string_view to_string(Emotion e);
std::optional<Emotion> emotion_from_string(std::string_view name);

// word -> bitmask over the 8 emotions (bit i = kAllEmotions[i]).
struct EmotionLexicon {
  std::unordered_map<std::string, std::uint8_t> assoc;
};

// NRC three-column TSV: word <TAB> emotion <TAB> flag. Rows flagged 0 and
// the positive/negative/anticip categories are dropped. Unknown category
// names raise FormatError with the line number.
EmotionLexicon load_emotion_lexicon(const std::filesystem::path& path);

struct EmotionProfile {
  std::array<double, kEmotionCount> intensity{};  // each in [0,1]
  std::uint64_t matched_tokens = 0;  // token occurrences with a lexicon entry
  std::uint64_t total_tokens = 0;

  double operator[](Emotion e) const {
    return intensity[static_cast<std::size_t>(e)];
  }
};

// intensity(e) = tag occurrences of e / total tag occurrences, where each
// matching token contributes one tag occurrence per associated emotion.
// No matches: all-zero profile.
EmotionProfile emotion_profile(const EmotionLexicon& lexicon,
                               const TokenSeq& tokens);

// Emotions whose intensity strictly exceeds the threshold.
std::set<Emotion> prevailing_emotions(const EmotionProfile& profile,
                                      double threshold = 0.25);

// Argmax of mean intensity across profiles; ties resolve to the earlier
// emotion in enum order. Empty input yields nullopt.
std::optional<Emotion> dominant_emotion(
    const std::vector<EmotionProfile>& profiles);

}  // namespace envsent

#endif  // ENVSENT_EMOTION_HPP_
