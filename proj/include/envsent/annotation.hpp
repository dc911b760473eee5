#ifndef ENVSENT_ANNOTATION_HPP_
#define ENVSENT_ANNOTATION_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "envsent/sentiment.hpp"

namespace envsent {

struct Annotator {
  std::string id;
  double weight = 1.0;  // experts default to 2
  bool is_expert = false;
};

// Dense items x annotators score grid; every cell present, scores in
// [-5, +5].
struct AnnotationMatrix {
  std::vector<std::string> items;
  std::vector<Annotator> annotators;
  std::vector<int> scores;  // row-major by item

  int score(std::size_t item, std::size_t annotator) const {
    return scores[item * annotators.size() + annotator];
  }
  std::size_t item_index(const std::string& id) const;  // throws DataError
};

// Annotation CSV: header "item_id,<annotator>,..."; one integer score per
// cell. The sidecar JSON declares weights and expert flags:
//   {"annotators": {"EA1": {"weight": 2, "expert": true}, ...}}
// Experts without an explicit weight get 2, everyone else 1.
AnnotationMatrix load_annotation_csv(const std::filesystem::path& csv_path,
                                     const std::filesystem::path& weights_path);

// Eq-style weighted mean over the matrix's annotators. Throws DataError when
// the matrix has no annotators.
double weighted_score(const AnnotationMatrix& m, std::size_t item);

// Annotator indices whose score deviates from the item mean by strictly
// more than the population standard deviation (both computed over all
// annotators, the candidate included).
std::set<std::size_t> detect_outliers(const AnnotationMatrix& m,
                                      std::size_t item);

struct ScreenReport {
  std::map<std::string, double> outlier_rate;  // fraction of items flagged
  std::vector<std::string> dropped;
};

struct ScreenResult {
  AnnotationMatrix matrix;
  ScreenReport report;
};

// Removes annotators whose outlier rate reaches drop_fraction.
ScreenResult screen_annotators(const AnnotationMatrix& m,
                               double drop_fraction = 0.6);

// Same banding contract as classify().
SentimentLabel to_label(double score, const NeutralBand& band = {});

// Chance-corrected agreement over label sequences; defined as 1 when both
// observed and expected agreement are exactly 1. Throws DataError on length
// mismatch or empty input.
double cohen_kappa(std::span<const SentimentLabel> a,
                   std::span<const SentimentLabel> b);

struct AgreementReport {
  std::vector<std::string> annotators;
  std::vector<std::vector<double>> pairwise_kappa;  // symmetric, 1 on diagonal
  double mean_kappa = 0.0;                          // over unordered pairs
  std::map<std::string, double> outlier_rate;
};

// Converts each annotator's scores to labels via the band, then computes
// pairwise kappa over all unordered pairs and their unweighted mean.
AgreementReport agreement_report(const AnnotationMatrix& m,
                                 const NeutralBand& band = {});

}  // namespace envsent

#endif  // ENVSENT_ANNOTATION_HPP_
