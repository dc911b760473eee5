#include <doctest.h>

#include <random>

#include "envsent/corpus.hpp"
#include "envsent/errors.hpp"
#include "envsent/preprocess.hpp"
#include "support/testutil.hpp"

using namespace envsent;

namespace {

Post make_post(Platform platform, std::int64_t likes = 0,
               std::int64_t retweets = 0, std::int64_t upvotes = 0) {
  Post p;
  p.id = "p1";
  p.platform = platform;
  p.text = "text";
  p.created_at = 1600000000;
  p.likes = likes;
  p.retweets = retweets;
  p.upvotes = upvotes;
  return p;
}

}  // namespace

TEST_CASE("iso8601 parsing") {
  CHECK(parse_iso8601_utc("1970-01-01T00:00:00Z") == 0);
  CHECK(parse_iso8601_utc("1970-01-02 00:00:00") == 86400);
  CHECK(parse_iso8601_utc("1970-01-01T01:00:00+01:00") == 0);
  CHECK(parse_iso8601_utc("1969-12-31T23:00:00-01:00") == 0);
  CHECK(parse_iso8601_utc("2014-06-15T12:00:00Z").has_value());
  CHECK_FALSE(parse_iso8601_utc("2014-13-01T00:00:00Z").has_value());
  CHECK_FALSE(parse_iso8601_utc("2014-02-30T00:00:00Z").has_value());
  CHECK_FALSE(parse_iso8601_utc("garbage").has_value());
  CHECK_FALSE(parse_iso8601_utc("2014-06-15").has_value());
  auto ts = parse_iso8601_utc("2021-03-04T05:06:07Z");
  REQUIRE(ts.has_value());
  CHECK(format_iso8601_utc(*ts) == "2021-03-04T05:06:07Z");
  CHECK(utc_year(*ts) == 2021);
  CHECK(utc_year(-1) == 1969);
}

TEST_CASE("load_posts basic and malformed records") {
  testutil::TempDir dir;
  SUBCASE("empty file") {
    auto result = load_posts(dir.write("posts.jsonl", ""), Platform::twitter);
    CHECK(result.posts.empty());
    CHECK(result.errors.empty());
  }
  SUBCASE("one valid one malformed") {
    auto path = dir.write(
        "posts.jsonl",
        R"({"id":"a","text":"hi","created_at":"2020-01-01T00:00:00Z","likes":3})"
        "\n"
        "{not json\n");
    auto result = load_posts(path, Platform::twitter);
    REQUIRE(result.posts.size() == 1);
    CHECK(result.posts[0].id == "a");
    CHECK(result.posts[0].likes == 3);
    CHECK(result.posts[0].replies == 0);  // absent counters default 0
    REQUIRE(result.errors.size() == 1);
    CHECK(result.errors[0].line == 2);
  }
  SUBCASE("negative counter rejected") {
    auto path = dir.write(
        "posts.jsonl",
        R"({"id":"a","text":"x","created_at":"2020-01-01T00:00:00Z","likes":-1})"
        "\n");
    auto result = load_posts(path, Platform::twitter);
    CHECK(result.posts.empty());
    REQUIRE(result.errors.size() == 1);
    CHECK(result.errors[0].message.find("likes") != std::string::npos);
  }
  SUBCASE("platform mismatch rejected") {
    auto path = dir.write(
        "posts.jsonl",
        R"({"id":"a","platform":"reddit","text":"x","created_at":"2020-01-01T00:00:00Z"})"
        "\n");
    auto result = load_posts(path, Platform::twitter);
    CHECK(result.posts.empty());
    CHECK(result.errors.size() == 1);
  }
  SUBCASE("year window enforced") {
    auto path = dir.write(
        "posts.jsonl",
        R"({"id":"a","text":"x","created_at":"1999-01-01T00:00:00Z"})"
        "\n");
    LoadOptions opts;
    opts.min_year = 2013;
    opts.max_year = 2023;
    auto result = load_posts(path, Platform::twitter, opts);
    CHECK(result.posts.empty());
    CHECK(result.errors.size() == 1);
  }
  SUBCASE("unreadable file throws") {
    CHECK_THROWS_AS(load_posts(dir.path() / "nope.jsonl", Platform::twitter),
                    DataError);
  }
}

TEST_CASE("post serialization round-trips byte-identically") {
  testutil::TempDir dir;
  auto path = dir.write(
      "posts.jsonl",
      R"({"id":"a","text":"Hello #tag","created_at":"2020-01-01T00:00:00Z","likes":3,"retweets":2})"
      "\n"
      R"({"id":"b","text":"second","created_at":"2021-06-30T23:59:59Z","quotes":1})"
      "\n");
  auto first = load_posts(path, Platform::twitter);
  REQUIRE(first.errors.empty());
  std::string serialized = serialize_posts(first.posts);
  auto path2 = dir.write("round.jsonl", serialized);
  auto second = load_posts(path2, Platform::twitter);
  REQUIRE(second.errors.empty());
  CHECK(second.posts == first.posts);
  CHECK(serialize_posts(second.posts) == serialized);
}

TEST_CASE("default keyword list") {
  const auto& kw = KeywordList::default_list();
  CHECK(kw.keywords.size() == 21);
  for (const auto& phrase : kw.keywords) {
    CHECK_FALSE(phrase.empty());
    CHECK(phrase == case_fold(phrase));
  }
}

TEST_CASE("filter_by_keywords") {
  KeywordList nature{{"nature"}};
  SUBCASE("case-folded substring match") {
    std::vector<LabeledDoc> docs = {{"I love Nature walks", Polarity::positive}};
    auto result = filter_by_keywords(docs, nature);
    REQUIRE(result.records.size() == 1);
    CHECK(result.counts.at("nature") == 1);
  }
  SUBCASE("no match dropped") {
    std::vector<LabeledDoc> docs = {{"hello world", Polarity::negative}};
    auto result = filter_by_keywords(docs, KeywordList::default_list());
    CHECK(result.records.empty());
  }
  SUBCASE("multi-keyword match counts each") {
    std::vector<Post> posts = {make_post(Platform::twitter)};
    posts[0].text = "Nature and climate in one post";
    auto result = filter_by_keywords(posts, KeywordList{{"nature", "climate"}});
    REQUIRE(result.records.size() == 1);
    CHECK(result.counts.at("nature") == 1);
    CHECK(result.counts.at("climate") == 1);
    CHECK(result.records[0].matched_keywords ==
          std::set<std::string>{"nature", "climate"});
  }
  SUBCASE("substring semantics: greenhouse matches greenhouses") {
    std::vector<LabeledDoc> docs = {{"many greenhouses here", Polarity::positive}};
    auto result = filter_by_keywords(docs, KeywordList{{"greenhouse"}});
    CHECK(result.records.size() == 1);
  }
  SUBCASE("empty keyword list is a configuration error") {
    std::vector<LabeledDoc> docs = {{"x", Polarity::positive}};
    CHECK_THROWS_AS(filter_by_keywords(docs, KeywordList{}), ConfigError);
  }
}

TEST_CASE("filter_by_keywords is idempotent") {
  std::mt19937 rng(7);
  const char* texts[] = {"save our nature", "plastic everywhere {}",
                         "NATURE!",          "irrelevant post",
                         "smog and smog",    "Carbon Dioxide rising"};
  KeywordList kw{{"nature", "plastic", "smog", "carbon dioxide"}};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<LabeledDoc> docs;
    std::uniform_int_distribution<int> n(0, 12), pick(0, 5);
    int count = n(rng);
    for (int i = 0; i < count; ++i)
      docs.push_back({texts[pick(rng)], Polarity::positive});
    auto once = filter_by_keywords(docs, kw);
    auto twice = filter_by_keywords(once.records, kw);
    CHECK(twice.records == once.records);
    CHECK(twice.counts == once.counts);
  }
}

TEST_CASE("is_popular per platform") {
  CHECK(is_popular(make_post(Platform::twitter, /*likes=*/1)));
  CHECK_FALSE(is_popular(make_post(Platform::twitter, 0, /*retweets=*/5)));
  CHECK_FALSE(is_popular(make_post(Platform::reddit, 0, 0, /*upvotes=*/0)));
  CHECK(is_popular(make_post(Platform::reddit, 0, 0, 1)));
  CHECK(is_popular(make_post(Platform::youtube, 1)));
}

TEST_CASE("is_viral per platform at default thresholds") {
  CHECK(is_viral(make_post(Platform::twitter, 0, 30)));
  CHECK_FALSE(is_viral(make_post(Platform::twitter, 0, 29)));
  CHECK_FALSE(is_viral(make_post(Platform::reddit, 0, 0, 199)));
  CHECK(is_viral(make_post(Platform::reddit, 0, 0, 200)));
  CHECK(is_viral(make_post(Platform::youtube, 100)));
  CHECK_FALSE(is_viral(make_post(Platform::youtube, 99)));
  SUBCASE("custom thresholds") {
    ViralThresholds t;
    t.twitter_retweets = 5;
    CHECK(is_viral(make_post(Platform::twitter, 0, 5), t));
  }
}

TEST_CASE("viral implies popular on single-counter platforms") {
  // Reddit and YouTube gate virality and popularity on the same counter, so
  // the implication holds by construction there.
  std::mt19937 rng(21);
  std::uniform_int_distribution<std::int64_t> count(0, 400);
  for (int i = 0; i < 500; ++i) {
    Post reddit = make_post(Platform::reddit, 0, 0, count(rng));
    if (is_viral(reddit)) CHECK(is_popular(reddit));
    Post youtube = make_post(Platform::youtube, count(rng));
    if (is_viral(youtube)) CHECK(is_popular(youtube));
  }
}

TEST_CASE("load_labeled_csv") {
  testutil::TempDir dir;
  SUBCASE("label code mapping") {
    auto path = dir.write("docs.csv",
                          "0,awful smog today\n"
                          "4,lovely nature walk\n");
    auto result = load_labeled_csv(path);
    REQUIRE(result.docs.size() == 2);
    CHECK(result.docs[0].label == Polarity::negative);
    CHECK(result.docs[1].label == Polarity::positive);
    CHECK(result.errors.empty());
  }
  SUBCASE("sentiment140 column order with quoting") {
    auto path = dir.write(
        "s140.csv",
        "\"0\",\"123\",\"Mon Jun 01\",\"NO_QUERY\",\"user\",\"bad, bad air\"\n"
        "\"4\",\"124\",\"Mon Jun 01\",\"NO_QUERY\",\"user\",\"clean parks\"\n");
    auto result = load_labeled_csv(path, CsvColumnMap::sentiment140());
    REQUIRE(result.docs.size() == 2);
    CHECK(result.docs[0].text == "bad, bad air");
    CHECK(result.docs[0].label == Polarity::negative);
  }
  SUBCASE("bad label code reported with line") {
    auto path = dir.write("docs.csv",
                          "0,ok\n"
                          "2,mystery\n"
                          "4,fine\n");
    auto result = load_labeled_csv(path);
    CHECK(result.docs.size() == 2);
    REQUIRE(result.errors.size() == 1);
    CHECK(result.errors[0].line == 2);
  }
  SUBCASE("missing file throws") {
    CHECK_THROWS_AS(load_labeled_csv(dir.path() / "none.csv"), DataError);
  }
}

TEST_CASE("keyword file loading") {
  testutil::TempDir dir;
  auto path = dir.write("kw.txt", "# header\nNature\nsmog\n");
  auto kw = load_keyword_file(path);
  CHECK(kw.keywords == std::vector<std::string>{"nature", "smog"});
  CHECK_THROWS_AS(load_keyword_file(dir.write("empty.txt", "")), ConfigError);
}
