#ifndef ENVSENT_ANALYTICS_HPP_
#define ENVSENT_ANALYTICS_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "envsent/corpus.hpp"
#include "envsent/emotion.hpp"
#include "envsent/sentiment.hpp"

namespace envsent {

// negative -> 0, neutral -> 1, positive -> 2.
std::size_t label_index(SentimentLabel label);

struct ConfusionMatrix {
  std::array<std::array<std::uint64_t, 3>, 3> counts{};  // [gold][pred]

  std::uint64_t total() const;
  std::uint64_t gold_support(std::size_t label_idx) const;
  std::uint64_t predicted(std::size_t label_idx) const;
};

ConfusionMatrix confusion(std::span<const SentimentLabel> gold,
                          std::span<const SentimentLabel> pred);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;
};

struct MetricsReport {
  double accuracy = 0.0;
  std::array<ClassMetrics, 3> per_class;  // indexed by label_index
  double macro_precision = 0.0, macro_recall = 0.0, macro_f1 = 0.0;
  double weighted_precision = 0.0, weighted_recall = 0.0, weighted_f1 = 0.0;
  bool zero_division = false;  // a class had no predictions or no gold items
};

// One-vs-rest metrics; zero predicted (or gold) instances score 0 by
// convention and raise the zero_division flag. Weighted recall equals
// accuracy by construction.
MetricsReport metrics(const ConfusionMatrix& cm);

struct ClassifiedPost {
  Post post;
  double score = 0.0;
  SentimentLabel label = SentimentLabel::neutral;
};

struct TrendRow {
  int year = 0;
  bool is_total = false;
  std::uint64_t popular = 0;
  std::uint64_t positive = 0, negative = 0, neutral = 0;
  double positive_pct = 0.0, negative_pct = 0.0, neutral_pct = 0.0;
  std::optional<Emotion> emotion;
};

// One row per calendar year (UTC, ascending) plus a totals row. Percentages
// are rounded half-up to two decimals. The emotion column is the dominant
// emotion of that year's negative posts (or all posts when
// emotion_all_posts), given profiles aligned index-wise with posts.
std::vector<TrendRow> yearly_trends(
    std::span<const ClassifiedPost> posts,
    const std::vector<EmotionProfile>* profiles = nullptr,
    bool emotion_all_posts = false);

// Per-keyword matched-post counts, substring semantics as in
// filter_by_keywords; every keyword is present in the result.
std::map<std::string, std::uint64_t> keyword_frequency(
    std::span<const Post> posts, const KeywordList& keywords);

// Mean platform engagement (retweets / upvotes / likes) per label. Input
// must be platform-homogeneous; labels without posts get no entry.
std::map<SentimentLabel, double> engagement_by_sentiment(
    std::span<const ClassifiedPost> posts);

struct BiasFit {
  int degree = 0;
  std::vector<double> coefficients;  // ascending power, size degree+1
  std::size_t n_points = 0;
  double rmse = 0.0;
};

// Least-squares polynomial fit of engagement against sentiment score
// (Householder QR). Throws DataError when n_points < degree+1 or the
// design matrix is rank-deficient (e.g. all x equal).
BiasFit fit_bias_curve(std::span<const std::pair<double, double>> points,
                       int degree = 2);

}  // namespace envsent

#endif  // ENVSENT_ANALYTICS_HPP_
