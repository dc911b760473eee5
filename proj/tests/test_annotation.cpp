#include <doctest.h>

#include <cmath>
#include <random>

#include "envsent/annotation.hpp"
#include "envsent/errors.hpp"
#include "support/testutil.hpp"

using namespace envsent;

namespace {

// Six annotators, two experts at weight 2, six items.
AnnotationMatrix example_matrix() {
  AnnotationMatrix m;
  m.items = {"1", "2", "3", "4", "5", "100"};
  m.annotators = {{"EA1", 2.0, true}, {"EA2", 2.0, true}, {"A3", 1.0, false},
                  {"A4", 1.0, false}, {"A5", 1.0, false}, {"A6", 1.0, false}};
  m.scores = {
      3,  2,  3,  3,  1,  4,   // 1
      -2, 0,  0,  -2, -1, -2,  // 2
      0,  0,  1,  -1, 0,  2,   // 3
      4,  5,  3,  2,  3,  3,   // 4
      -4, -1, -2, 3,  -2, 3,   // 5
      5,  4,  5,  4,  3,  4,   // 100
  };
  return m;
}

AnnotationMatrix matrix_from(const std::vector<std::string>& items,
                             std::size_t n_annotators,
                             const std::vector<int>& scores) {
  AnnotationMatrix m;
  m.items = items;
  for (std::size_t a = 0; a < n_annotators; ++a)
    m.annotators.push_back({"A" + std::to_string(a + 1), 1.0, false});
  m.scores = scores;
  return m;
}

}  // namespace

TEST_CASE("weighted scores reproduce the annotation example") {
  auto m = example_matrix();
  const double expected[] = {2.625, -1.125, 0.25, 3.625, -1.0, 4.25};
  const SentimentLabel labels[] = {
      SentimentLabel::positive, SentimentLabel::negative,
      SentimentLabel::positive, SentimentLabel::positive,
      SentimentLabel::negative, SentimentLabel::positive};
  for (std::size_t i = 0; i < m.items.size(); ++i) {
    double score = weighted_score(m, i);
    CHECK(score == doctest::Approx(expected[i]).epsilon(1e-12));
    CHECK(to_label(score) == labels[i]);
  }
}

TEST_CASE("weighted score of constant scores is that constant") {
  auto m = matrix_from({"only"}, 4, {3, 3, 3, 3});
  m.annotators[0].weight = 2.0;
  CHECK(weighted_score(m, 0) == doctest::Approx(3.0));
}

TEST_CASE("weighted score with no annotators is an error") {
  AnnotationMatrix m;
  m.items = {"x"};
  CHECK_THROWS_AS(weighted_score(m, 0), DataError);
}

TEST_CASE("weighted score is translation-equivariant") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> score(-4, 4);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = matrix_from({"i"}, 5,
                         {score(rng), score(rng), score(rng), score(rng),
                          score(rng)});
    m.annotators[1].weight = 2.0;
    auto shifted = m;
    for (auto& s : shifted.scores) s += 1;
    CHECK(weighted_score(shifted, 0) ==
          doctest::Approx(weighted_score(m, 0) + 1.0).epsilon(1e-12));
  }
}

TEST_CASE("outlier detection uses strict deviation vs population std") {
  SUBCASE("all equal: deviation 0 is not > std 0") {
    auto m = matrix_from({"i"}, 4, {3, 3, 3, 3});
    CHECK(detect_outliers(m, 0).empty());
  }
  SUBCASE("single extreme annotator flagged") {
    auto m = matrix_from({"i"}, 5, {0, 0, 0, 0, 5});
    // mean 1, population std 2, |5-1|=4 > 2
    CHECK(detect_outliers(m, 0) == std::set<std::size_t>{4});
  }
  SUBCASE("two-annotator boundary is not an outlier") {
    auto m = matrix_from({"i"}, 2, {-5, 5});
    // mean 0, std 5, |5-0| = 5 is not > 5
    CHECK(detect_outliers(m, 0).empty());
  }
  SUBCASE("single annotator has no peers") {
    auto m = matrix_from({"i"}, 1, {4});
    CHECK(detect_outliers(m, 0).empty());
  }
  SUBCASE("invariant under adding a constant") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> score(-4, 4);
    for (int trial = 0; trial < 100; ++trial) {
      auto m = matrix_from({"i"}, 6,
                           {score(rng), score(rng), score(rng), score(rng),
                            score(rng), score(rng)});
      auto shifted = m;
      for (auto& s : shifted.scores) s += 1;
      CHECK(detect_outliers(shifted, 0) == detect_outliers(m, 0));
    }
  }
}

namespace {

// 100-item, 5-annotator matrix with outlier counts 8/25/29/35/36.
// Items either flag one annotator (pattern 5,0,0,0,0) or two (5,-5,0,0,0).
AnnotationMatrix engineered_rates_matrix() {
  // 33 items double-flag annotators 3 and 4, leaving 2 and 3 flags for
  // them among the single-flag items.
  const std::size_t singles[] = {8, 25, 29, 2, 3};
  AnnotationMatrix m;
  for (std::size_t a = 0; a < 5; ++a)
    m.annotators.push_back({"R" + std::to_string(a + 1), 1.0, false});
  std::size_t item = 0;
  auto add_item = [&](const std::array<int, 5>& row) {
    m.items.push_back("t" + std::to_string(++item));
    for (int s : row) m.scores.push_back(s);
  };
  for (std::size_t a = 0; a < 5; ++a) {
    for (std::size_t i = 0; i < singles[a]; ++i) {
      std::array<int, 5> row{};
      row[a] = 5;
      add_item(row);
    }
  }
  for (std::size_t i = 0; i < 33; ++i) {
    std::array<int, 5> row{};
    row[3] = 5;
    row[4] = -5;
    add_item(row);
  }
  return m;
}

}  // namespace

TEST_CASE("screening drops annotators at 60 percent outliers") {
  SUBCASE("60 of 100 items flagged -> dropped") {
    AnnotationMatrix m;
    for (std::size_t a = 0; a < 6; ++a)
      m.annotators.push_back({"A" + std::to_string(a + 1), 1.0, false});
    for (int i = 0; i < 100; ++i) {
      m.items.push_back("t" + std::to_string(i));
      // First 60 items: annotator A6 gives 5, everyone else 0 -> A6 flagged.
      int outlier_score = i < 60 ? 5 : 2;
      for (std::size_t a = 0; a < 5; ++a) m.scores.push_back(i < 60 ? 0 : 2);
      m.scores.push_back(outlier_score);
    }
    auto result = screen_annotators(m);
    CHECK(result.report.outlier_rate.at("A6") == doctest::Approx(0.6));
    CHECK(result.report.dropped == std::vector<std::string>{"A6"});
    CHECK(result.matrix.annotators.size() == 5);
    CHECK(result.matrix.scores.size() == 500);
  }
  SUBCASE("sub-threshold outlier-rate vector drops nobody") {
    auto m = engineered_rates_matrix();
    auto result = screen_annotators(m);
    CHECK(result.report.outlier_rate.at("R1") == doctest::Approx(0.08));
    CHECK(result.report.outlier_rate.at("R2") == doctest::Approx(0.25));
    CHECK(result.report.outlier_rate.at("R3") == doctest::Approx(0.29));
    CHECK(result.report.outlier_rate.at("R4") == doctest::Approx(0.35));
    CHECK(result.report.outlier_rate.at("R5") == doctest::Approx(0.36));
    CHECK(result.report.dropped.empty());
    CHECK(result.matrix.annotators.size() == 5);
  }
  SUBCASE("a single annotator is never dropped") {
    auto m = matrix_from({"a", "b"}, 1, {5, -5});
    auto result = screen_annotators(m);
    CHECK(result.matrix.annotators.size() == 1);
    CHECK(result.report.dropped.empty());
  }
}

TEST_CASE("to_label shares the classify band") {
  CHECK(to_label(2.63) == SentimentLabel::positive);
  CHECK(to_label(-1.13) == SentimentLabel::negative);
  CHECK(to_label(0.25) == SentimentLabel::positive);
  CHECK(to_label(0.05) == SentimentLabel::neutral);
  CHECK(to_label(-0.1) == SentimentLabel::neutral);
}

namespace {

std::vector<SentimentLabel> labels_of(std::initializer_list<int> values) {
  std::vector<SentimentLabel> out;
  for (int v : values) out.push_back(static_cast<SentimentLabel>(v));
  return out;
}

}  // namespace

TEST_CASE("cohen kappa examples") {
  auto a1 = labels_of({1, 1, -1, -1});
  CHECK(cohen_kappa(a1, a1) == 1.0);

  // Po = 0.75, Pe = 0.5 -> kappa = 0.5
  auto b1 = labels_of({1, -1, -1, -1});
  CHECK(cohen_kappa(a1, b1) == doctest::Approx(0.5).epsilon(1e-12));

  // Po = 0, Pe = 0.5 -> kappa = -1
  auto a2 = labels_of({1, -1});
  auto b2 = labels_of({-1, 1});
  CHECK(cohen_kappa(a2, b2) == doctest::Approx(-1.0).epsilon(1e-12));

  // both degenerate on the same category: defined as 1
  auto c = labels_of({1, 1, 1});
  CHECK(cohen_kappa(c, c) == 1.0);

  auto short_seq = labels_of({1});
  CHECK_THROWS_AS(cohen_kappa(a1, short_seq), DataError);
  CHECK_THROWS_AS(
      cohen_kappa(std::vector<SentimentLabel>{}, std::vector<SentimentLabel>{}),
      DataError);
}

TEST_CASE("cohen kappa properties on random label pairs") {
  std::mt19937 rng(616);
  std::uniform_int_distribution<int> label(-1, 1);
  std::uniform_int_distribution<int> len(1, 24);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = len(rng);
    std::vector<SentimentLabel> a, b;
    for (int i = 0; i < n; ++i) {
      a.push_back(static_cast<SentimentLabel>(label(rng)));
      b.push_back(static_cast<SentimentLabel>(label(rng)));
    }
    double ab = cohen_kappa(a, b);
    CHECK(ab == cohen_kappa(b, a));
    CHECK(ab >= -1.0 - 1e-12);
    CHECK(ab <= 1.0 + 1e-12);
    CHECK(cohen_kappa(a, a) == 1.0);
  }
}

TEST_CASE("agreement report") {
  SUBCASE("two identical annotators agree perfectly") {
    auto m = matrix_from({"a", "b", "c"}, 2, {3, 3, -2, -2, 0, 0});
    auto report = agreement_report(m);
    CHECK(report.mean_kappa == doctest::Approx(1.0));
    CHECK(report.pairwise_kappa[0][1] == doctest::Approx(1.0));
  }
  SUBCASE("mean is the unweighted mean over unordered pairs") {
    auto m = matrix_from({"a", "b", "c", "d"}, 3,
                         {// item rows: A1, A2, A3
                          3, 3, 3,
                          2, -2, 2,
                          -3, -3, 3,
                          0, 0, -1});
    auto report = agreement_report(m);
    std::vector<std::vector<SentimentLabel>> labels(3);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t i = 0; i < 4; ++i)
        labels[a].push_back(to_label(m.score(i, a)));
    double k01 = cohen_kappa(labels[0], labels[1]);
    double k02 = cohen_kappa(labels[0], labels[2]);
    double k12 = cohen_kappa(labels[1], labels[2]);
    CHECK(report.mean_kappa ==
          doctest::Approx((k01 + k02 + k12) / 3.0).epsilon(1e-12));
    CHECK(report.pairwise_kappa[1][2] == doctest::Approx(k12));
    CHECK(report.pairwise_kappa[2][1] == doctest::Approx(k12));
  }
  SUBCASE("needs two annotators") {
    auto m = matrix_from({"a"}, 1, {1});
    CHECK_THROWS_AS(agreement_report(m), DataError);
  }
}

TEST_CASE("annotation csv and weights sidecar") {
  testutil::TempDir dir;
  auto csv = dir.write("ann.csv",
                       "item_id,EA1,EA2,A3\n"
                       "t1,3,2,1\n"
                       "t2,-5,5,0\n");
  auto weights = dir.write("weights.json",
                           R"({"annotators":{"EA1":{"expert":true},)"
                           R"("EA2":{"expert":true,"weight":2.5}}})");
  auto m = load_annotation_csv(csv, weights);
  CHECK(m.items == std::vector<std::string>{"t1", "t2"});
  REQUIRE(m.annotators.size() == 3);
  CHECK(m.annotators[0].weight == 2.0);  // expert default
  CHECK(m.annotators[1].weight == 2.5);  // explicit override
  CHECK(m.annotators[2].weight == 1.0);
  CHECK(m.annotators[2].is_expert == false);
  CHECK(m.score(1, 1) == 5);

  SUBCASE("missing cell") {
    auto bad = dir.write("bad.csv",
                         "item_id,A1,A2\n"
                         "t1,3\n");
    CHECK_THROWS_AS(load_annotation_csv(bad, weights), DataError);
  }
  SUBCASE("score out of range") {
    auto bad = dir.write("bad2.csv",
                         "item_id,A1,A2\n"
                         "t1,3,6\n");
    CHECK_THROWS_AS(load_annotation_csv(bad, weights), DataError);
  }
  SUBCASE("non-integer score") {
    auto bad = dir.write("bad3.csv",
                         "item_id,A1,A2\n"
                         "t1,3,x\n");
    CHECK_THROWS_AS(load_annotation_csv(bad, weights), DataError);
  }
  SUBCASE("bad header") {
    auto bad = dir.write("bad4.csv", "wrong,A1\nt1,3\n");
    CHECK_THROWS_AS(load_annotation_csv(bad, weights), FormatError);
  }
}
