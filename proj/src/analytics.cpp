#include "envsent/analytics.hpp"

#include <algorithm>
#include <cmath>

#include "envsent/errors.hpp"

namespace envsent {

std::size_t label_index(SentimentLabel label) {
  return static_cast<std::size_t>(static_cast<int>(label) + 1);
}

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t n = 0;
  for (const auto& row : counts)
    for (std::uint64_t c : row) n += c;
  return n;
}

std::uint64_t ConfusionMatrix::gold_support(std::size_t label_idx) const {
  std::uint64_t n = 0;
  for (std::uint64_t c : counts[label_idx]) n += c;
  return n;
}

std::uint64_t ConfusionMatrix::predicted(std::size_t label_idx) const {
  std::uint64_t n = 0;
  for (const auto& row : counts) n += row[label_idx];
  return n;
}

ConfusionMatrix confusion(std::span<const SentimentLabel> gold,
                          std::span<const SentimentLabel> pred) {
  if (gold.size() != pred.size())
    throw DataError("gold and prediction sequences must have equal length");
  if (gold.empty()) throw DataError("cannot build confusion matrix: no items");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < gold.size(); ++i)
    ++cm.counts[label_index(gold[i])][label_index(pred[i])];
  return cm;
}

MetricsReport metrics(const ConfusionMatrix& cm) {
  const std::uint64_t total = cm.total();
  if (total == 0) throw DataError("cannot compute metrics: empty matrix");
  MetricsReport report;
  std::uint64_t diagonal = 0;
  for (std::size_t c = 0; c < 3; ++c) diagonal += cm.counts[c][c];
  report.accuracy = static_cast<double>(diagonal) / static_cast<double>(total);

  double weighted_p = 0.0, weighted_r = 0.0, weighted_f = 0.0;
  for (std::size_t c = 0; c < 3; ++c) {
    ClassMetrics& cls = report.per_class[c];
    const std::uint64_t tp = cm.counts[c][c];
    const std::uint64_t pred = cm.predicted(c);
    const std::uint64_t gold = cm.gold_support(c);
    cls.support = gold;
    if (pred == 0) {
      cls.precision = 0.0;
      report.zero_division = true;
    } else {
      cls.precision = static_cast<double>(tp) / static_cast<double>(pred);
    }
    if (gold == 0) {
      cls.recall = 0.0;
      report.zero_division = true;
    } else {
      cls.recall = static_cast<double>(tp) / static_cast<double>(gold);
    }
    cls.f1 = cls.precision + cls.recall > 0.0
                 ? 2.0 * cls.precision * cls.recall /
                       (cls.precision + cls.recall)
                 : 0.0;
    report.macro_precision += cls.precision / 3.0;
    report.macro_recall += cls.recall / 3.0;
    report.macro_f1 += cls.f1 / 3.0;
    weighted_p += static_cast<double>(gold) * cls.precision;
    weighted_r += static_cast<double>(gold) * cls.recall;
    weighted_f += static_cast<double>(gold) * cls.f1;
  }
  report.weighted_precision = weighted_p / static_cast<double>(total);
  report.weighted_recall = weighted_r / static_cast<double>(total);
  report.weighted_f1 = weighted_f / static_cast<double>(total);
  return report;
}

namespace {

double pct_rounded(std::uint64_t part, std::uint64_t whole) {
  double pct = 100.0 * static_cast<double>(part) / static_cast<double>(whole);
  return std::round(pct * 100.0) / 100.0;
}

}  // namespace

std::vector<TrendRow> yearly_trends(std::span<const ClassifiedPost> posts,
                                    const std::vector<EmotionProfile>* profiles,
                                    bool emotion_all_posts) {
  if (profiles && profiles->size() != posts.size())
    throw DataError("emotion profiles must align with posts");
  std::map<int, std::vector<std::size_t>> by_year;
  for (std::size_t i = 0; i < posts.size(); ++i)
    by_year[utc_year(posts[i].post.created_at)].push_back(i);

  std::vector<TrendRow> rows;
  TrendRow total;
  total.is_total = true;
  std::vector<EmotionProfile> total_profiles;
  for (const auto& [year, indices] : by_year) {
    TrendRow row;
    row.year = year;
    row.popular = indices.size();
    std::vector<EmotionProfile> year_profiles;
    for (std::size_t i : indices) {
      switch (posts[i].label) {
        case SentimentLabel::positive: ++row.positive; break;
        case SentimentLabel::negative: ++row.negative; break;
        case SentimentLabel::neutral: ++row.neutral; break;
      }
      if (profiles &&
          (emotion_all_posts || posts[i].label == SentimentLabel::negative)) {
        year_profiles.push_back((*profiles)[i]);
        total_profiles.push_back((*profiles)[i]);
      }
    }
    row.positive_pct = pct_rounded(row.positive, row.popular);
    row.negative_pct = pct_rounded(row.negative, row.popular);
    row.neutral_pct = pct_rounded(row.neutral, row.popular);
    row.emotion = dominant_emotion(year_profiles);
    total.popular += row.popular;
    total.positive += row.positive;
    total.negative += row.negative;
    total.neutral += row.neutral;
    rows.push_back(std::move(row));
  }
  if (total.popular > 0) {
    total.positive_pct = pct_rounded(total.positive, total.popular);
    total.negative_pct = pct_rounded(total.negative, total.popular);
    total.neutral_pct = pct_rounded(total.neutral, total.popular);
    total.emotion = dominant_emotion(total_profiles);
    rows.push_back(std::move(total));
  }
  return rows;
}

std::map<std::string, std::uint64_t> keyword_frequency(
    std::span<const Post> posts, const KeywordList& keywords) {
  if (keywords.keywords.empty())
    throw ConfigError("keyword list must not be empty");
  std::map<std::string, std::uint64_t> counts;
  for (const auto& kw : keywords.keywords) counts[kw] = 0;
  for (const auto& post : posts) {
    for (const auto& kw : match_keywords(post.text, keywords)) ++counts[kw];
  }
  return counts;
}

namespace {

std::int64_t engagement_metric(const Post& post) {
  switch (post.platform) {
    case Platform::twitter: return post.retweets;
    case Platform::reddit: return post.upvotes;
    case Platform::youtube: return post.likes;
  }
  return 0;
}

}  // namespace

std::map<SentimentLabel, double> engagement_by_sentiment(
    std::span<const ClassifiedPost> posts) {
  if (posts.empty()) return {};
  std::map<SentimentLabel, double> sums;
  std::map<SentimentLabel, std::uint64_t> counts;
  for (const auto& cp : posts) {
    if (cp.post.platform != posts.front().post.platform)
      throw DataError("engagement summary requires a single platform");
    sums[cp.label] += static_cast<double>(engagement_metric(cp.post));
    ++counts[cp.label];
  }
  std::map<SentimentLabel, double> means;
  for (const auto& [label, sum] : sums)
    means[label] = sum / static_cast<double>(counts[label]);
  return means;
}

BiasFit fit_bias_curve(std::span<const std::pair<double, double>> points,
                       int degree) {
  if (degree < 0) throw ConfigError("polynomial degree must be >= 0");
  const std::size_t n = points.size();
  const std::size_t m = static_cast<std::size_t>(degree) + 1;
  if (n < m)
    throw DataError("bias fit needs at least degree+1 points, got " +
                    std::to_string(n));

  // Vandermonde design matrix, column-major.
  std::vector<std::vector<double>> a(m, std::vector<double>(n));
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double xi = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
      a[j][i] = xi;
      xi *= points[i].first;
    }
    y[i] = points[i].second;
  }
  std::vector<double> col_scale(m);
  for (std::size_t j = 0; j < m; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[j][i] * a[j][i];
    col_scale[j] = std::sqrt(s);
  }

  // Householder QR applied in place; reflections accumulate into y.
  for (std::size_t k = 0; k < m; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < n; ++i) norm += a[k][i] * a[k][i];
    norm = std::sqrt(norm);
    if (norm <= 1e-10 * std::max(1.0, col_scale[k]))
      throw DataError("bias fit design matrix is rank-deficient");
    double alpha = a[k][k] > 0 ? -norm : norm;
    std::vector<double> v(n, 0.0);
    v[k] = a[k][k] - alpha;
    for (std::size_t i = k + 1; i < n; ++i) v[i] = a[k][i];
    double vtv = 0.0;
    for (std::size_t i = k; i < n; ++i) vtv += v[i] * v[i];
    if (vtv > 0.0) {
      for (std::size_t j = k; j < m; ++j) {
        double dot = 0.0;
        for (std::size_t i = k; i < n; ++i) dot += v[i] * a[j][i];
        double f = 2.0 * dot / vtv;
        for (std::size_t i = k; i < n; ++i) a[j][i] -= f * v[i];
      }
      double dot = 0.0;
      for (std::size_t i = k; i < n; ++i) dot += v[i] * y[i];
      double f = 2.0 * dot / vtv;
      for (std::size_t i = k; i < n; ++i) y[i] -= f * v[i];
    }
    a[k][k] = alpha;
  }

  BiasFit fit;
  fit.degree = degree;
  fit.n_points = n;
  fit.coefficients.assign(m, 0.0);
  for (std::size_t kk = m; kk-- > 0;) {
    double diag = a[kk][kk];
    if (std::fabs(diag) <= 1e-10 * std::max(1.0, col_scale[kk]))
      throw DataError("bias fit design matrix is rank-deficient");
    double acc = y[kk];
    for (std::size_t j = kk + 1; j < m; ++j)
      acc -= a[j][kk] * fit.coefficients[j];
    fit.coefficients[kk] = acc / diag;
  }

  double ss = 0.0;
  for (const auto& [x, target] : points) {
    double value = 0.0;
    for (std::size_t j = m; j-- > 0;) value = value * x + fit.coefficients[j];
    double r = target - value;
    ss += r * r;
  }
  fit.rmse = std::sqrt(ss / static_cast<double>(n));
  return fit;
}

}  // namespace envsent
