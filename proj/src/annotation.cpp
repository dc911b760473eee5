#include "envsent/annotation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "envsent/csv.hpp"
#include "envsent/errors.hpp"
#include "envsent/io.hpp"

namespace envsent {

using nlohmann::json;

std::size_t AnnotationMatrix::item_index(const std::string& id) const {
  auto it = std::find(items.begin(), items.end(), id);
  if (it == items.end()) throw DataError("unknown item id: " + id);
  return static_cast<std::size_t>(it - items.begin());
}

AnnotationMatrix load_annotation_csv(const std::filesystem::path& csv_path,
                                     const std::filesystem::path& weights_path) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw DataError("cannot open annotation CSV: " + csv_path.string());

  json weights = json::parse(read_file(weights_path), nullptr, false);
  if (weights.is_discarded() || !weights.is_object())
    throw FormatError("annotator weights file is not valid JSON: " +
                      weights_path.string());
  const json annotator_info = weights.value("annotators", json::object());

  AnnotationMatrix m;
  CsvReader reader(in);
  std::vector<std::string> fields;
  if (!reader.next(fields) || fields.size() < 2 || fields[0] != "item_id")
    throw FormatError(csv_path.string() +
                      ": expected header 'item_id,<annotator>,...'");
  for (std::size_t i = 1; i < fields.size(); ++i) {
    Annotator a;
    a.id = fields[i];
    if (annotator_info.contains(a.id)) {
      const json& info = annotator_info[a.id];
      a.is_expert = info.value("expert", false);
      a.weight = info.value("weight", a.is_expert ? 2.0 : 1.0);
      if (a.weight <= 0)
        throw FormatError("annotator weight must be > 0 for " + a.id);
    }
    m.annotators.push_back(std::move(a));
  }
  while (reader.next(fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != m.annotators.size() + 1) {
      throw DataError(csv_path.string() + ":" +
                      std::to_string(reader.record_line()) +
                      ": expected " + std::to_string(m.annotators.size() + 1) +
                      " cells, got " + std::to_string(fields.size()));
    }
    m.items.push_back(fields[0]);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const std::string& cell = fields[i];
      int value = 0;
      std::size_t pos = 0;
      bool ok = !cell.empty();
      if (ok) {
        try {
          value = std::stoi(cell, &pos);
        } catch (const std::exception&) {
          ok = false;
        }
      }
      if (!ok || pos != cell.size() || value < -5 || value > 5) {
        throw DataError(csv_path.string() + ":" +
                        std::to_string(reader.record_line()) +
                        ": score must be an integer in [-5, 5], got '" + cell +
                        "'");
      }
      m.scores.push_back(value);
    }
  }
  if (m.items.empty()) throw DataError(csv_path.string() + ": no items");
  return m;
}

double weighted_score(const AnnotationMatrix& m, std::size_t item) {
  if (m.annotators.empty())
    throw DataError("weighted score undefined: all annotators dropped");
  double num = 0.0, den = 0.0;
  for (std::size_t a = 0; a < m.annotators.size(); ++a) {
    num += m.annotators[a].weight * m.score(item, a);
    den += m.annotators[a].weight;
  }
  return num / den;
}

std::set<std::size_t> detect_outliers(const AnnotationMatrix& m,
                                      std::size_t item) {
  std::set<std::size_t> flagged;
  const std::size_t n = m.annotators.size();
  if (n < 2) return flagged;
  double mean = 0.0;
  for (std::size_t a = 0; a < n; ++a) mean += m.score(item, a);
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    double d = m.score(item, a) - mean;
    var += d * d;
  }
  double std_dev = std::sqrt(var / static_cast<double>(n));
  for (std::size_t a = 0; a < n; ++a) {
    if (std::fabs(m.score(item, a) - mean) > std_dev) flagged.insert(a);
  }
  return flagged;
}

ScreenResult screen_annotators(const AnnotationMatrix& m,
                               double drop_fraction) {
  ScreenResult result;
  const std::size_t n_items = m.items.size();
  const std::size_t n_annot = m.annotators.size();
  std::vector<std::size_t> flags(n_annot, 0);
  for (std::size_t i = 0; i < n_items; ++i) {
    for (std::size_t a : detect_outliers(m, i)) ++flags[a];
  }
  std::vector<bool> keep(n_annot, true);
  for (std::size_t a = 0; a < n_annot; ++a) {
    double rate = n_items == 0
                      ? 0.0
                      : static_cast<double>(flags[a]) /
                            static_cast<double>(n_items);
    result.report.outlier_rate[m.annotators[a].id] = rate;
    if (n_annot >= 2 && rate >= drop_fraction) {
      keep[a] = false;
      result.report.dropped.push_back(m.annotators[a].id);
    }
  }
  result.matrix.items = m.items;
  for (std::size_t a = 0; a < n_annot; ++a) {
    if (keep[a]) result.matrix.annotators.push_back(m.annotators[a]);
  }
  result.matrix.scores.reserve(n_items * result.matrix.annotators.size());
  for (std::size_t i = 0; i < n_items; ++i) {
    for (std::size_t a = 0; a < n_annot; ++a) {
      if (keep[a]) result.matrix.scores.push_back(m.score(i, a));
    }
  }
  return result;
}

SentimentLabel to_label(double score, const NeutralBand& band) {
  return classify(score, band);
}

double cohen_kappa(std::span<const SentimentLabel> a,
                   std::span<const SentimentLabel> b) {
  if (a.size() != b.size())
    throw DataError("kappa inputs must have equal length");
  if (a.empty()) throw DataError("kappa inputs must be non-empty");
  const double n = static_cast<double>(a.size());
  double agree = 0.0;
  std::array<double, 3> count_a{}, count_b{};
  auto idx = [](SentimentLabel l) {
    return static_cast<std::size_t>(static_cast<int>(l) + 1);
  };
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) ++agree;
    ++count_a[idx(a[i])];
    ++count_b[idx(b[i])];
  }
  double po = agree / n;
  double pe = 0.0;
  for (std::size_t c = 0; c < 3; ++c) pe += (count_a[c] / n) * (count_b[c] / n);
  if (pe == 1.0) return 1.0;  // both degenerate on one category
  return (po - pe) / (1.0 - pe);
}

AgreementReport agreement_report(const AnnotationMatrix& m,
                                 const NeutralBand& band) {
  if (m.annotators.size() < 2)
    throw DataError("agreement needs at least two annotators");
  AgreementReport report;
  const std::size_t n_annot = m.annotators.size();
  const std::size_t n_items = m.items.size();
  for (const auto& a : m.annotators) report.annotators.push_back(a.id);

  std::vector<std::vector<SentimentLabel>> labels(
      n_annot, std::vector<SentimentLabel>(n_items));
  for (std::size_t a = 0; a < n_annot; ++a) {
    for (std::size_t i = 0; i < n_items; ++i)
      labels[a][i] = to_label(m.score(i, a), band);
  }

  report.pairwise_kappa.assign(n_annot, std::vector<double>(n_annot, 1.0));
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < n_annot; ++a) {
    for (std::size_t b = a + 1; b < n_annot; ++b) {
      double kappa = cohen_kappa(labels[a], labels[b]);
      report.pairwise_kappa[a][b] = kappa;
      report.pairwise_kappa[b][a] = kappa;
      sum += kappa;
      ++pairs;
    }
  }
  report.mean_kappa = sum / static_cast<double>(pairs);

  std::vector<std::size_t> flags(n_annot, 0);
  for (std::size_t i = 0; i < n_items; ++i) {
    for (std::size_t a : detect_outliers(m, i)) ++flags[a];
  }
  for (std::size_t a = 0; a < n_annot; ++a) {
    report.outlier_rate[m.annotators[a].id] =
        n_items == 0 ? 0.0
                     : static_cast<double>(flags[a]) /
                           static_cast<double>(n_items);
  }
  return report;
}

}  // namespace envsent
