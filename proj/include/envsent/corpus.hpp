#ifndef ENVSENT_CORPUS_HPP_
#define ENVSENT_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace envsent {

enum class Platform { twitter, reddit, youtube };

std::string_view to_string(Platform p);
std::optional<Platform> platform_from_string(std::string_view name);

// One social-media item. Engagement counters are all present but only the
// platform's own metrics are meaningful (retweets/quotes: twitter,
// upvotes: reddit).
struct Post {
  std::string id;
  Platform platform = Platform::twitter;
  std::string text;
  std::int64_t created_at = 0;  // UTC seconds since epoch
  std::int64_t likes = 0;
  std::int64_t replies = 0;
  std::int64_t retweets = 0;
  std::int64_t quotes = 0;
  std::int64_t upvotes = 0;
  std::set<std::string> matched_keywords;

  bool operator==(const Post&) const = default;
};

enum class Polarity { negative, positive };

// Training text with a binary sentiment label (source codes 0 and 4).
struct LabeledDoc {
  std::string text;
  Polarity label = Polarity::negative;

  bool operator==(const LabeledDoc&) const = default;
};

struct KeywordList {
  std::vector<std::string> keywords;  // lowercase phrases, matched as substrings

  // The stock 21-phrase environmental list.
  static const KeywordList& default_list();
};

KeywordList load_keyword_file(const std::filesystem::path& path);

struct LoadError {
  std::size_t line = 0;
  std::string message;
};

struct PostLoadResult {
  std::vector<Post> posts;
  std::vector<LoadError> errors;
};

struct LoadOptions {
  int min_year = 1970;
  int max_year = 2100;
};

// JSONL, one object per line: id, platform, text, created_at (ISO-8601),
// likes, replies, retweets, quotes, upvotes; absent counters default to 0.
// Malformed lines are reported in the result, not thrown.
PostLoadResult load_posts(const std::filesystem::path& path, Platform platform,
                          const LoadOptions& options = {});

// Canonical JSONL form; load(serialize(posts)) reproduces posts exactly.
std::string serialize_posts(const std::vector<Post>& posts);

struct CsvColumnMap {
  std::size_t label_col = 0;
  std::size_t text_col = 1;

  // Sentiment140 order: target,id,date,flag,user,text.
  static CsvColumnMap sentiment140() { return {0, 5}; }
};

struct LabeledLoadResult {
  std::vector<LabeledDoc> docs;
  std::vector<LoadError> errors;
};

// CSV with a label column (0=negative, 4=positive) and a text column.
LabeledLoadResult load_labeled_csv(const std::filesystem::path& path,
                                   const CsvColumnMap& columns = {});

// Keywords matched in the case-folded text; empty when none match.
std::set<std::string> match_keywords(std::string_view text,
                                     const KeywordList& keywords);

template <typename Record>
struct KeywordFilterResult {
  std::vector<Record> records;
  std::map<std::string, std::uint64_t> counts;  // per-keyword matched records
};

// Retains records where at least one keyword matches. For posts the matched
// set is recorded on each retained Post. Throws ConfigError on an empty list.
KeywordFilterResult<Post> filter_by_keywords(const std::vector<Post>& posts,
                                             const KeywordList& keywords);
KeywordFilterResult<LabeledDoc> filter_by_keywords(
    const std::vector<LabeledDoc>& docs, const KeywordList& keywords);

// Minimal-engagement filter: >=1 like (twitter, youtube) or upvote (reddit).
bool is_popular(const Post& post);

struct ViralThresholds {
  std::int64_t twitter_retweets = 30;
  std::int64_t reddit_upvotes = 200;
  std::int64_t youtube_likes = 100;
};

// High-engagement filter, inclusive thresholds.
bool is_viral(const Post& post, const ViralThresholds& thresholds = {});

// "YYYY-MM-DDTHH:MM:SS" with optional 'Z' or +/-HH:MM offset; returns UTC
// epoch seconds, or nullopt when unparseable.
std::optional<std::int64_t> parse_iso8601_utc(std::string_view text);
std::string format_iso8601_utc(std::int64_t epoch_seconds);
int utc_year(std::int64_t epoch_seconds);

}  // namespace envsent

#endif  // ENVSENT_CORPUS_HPP_
