#include "envsent/corpus.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "envsent/csv.hpp"
#include "envsent/errors.hpp"
#include "envsent/preprocess.hpp"

namespace envsent {

using nlohmann::json;

std::string_view to_string(Platform p) {
  switch (p) {
    case Platform::twitter: return "twitter";
    case Platform::reddit: return "reddit";
    case Platform::youtube: return "youtube";
  }
  return "twitter";
}

std::optional<Platform> platform_from_string(std::string_view name) {
  if (name == "twitter") return Platform::twitter;
  if (name == "reddit") return Platform::reddit;
  if (name == "youtube") return Platform::youtube;
  return std::nullopt;
}

const KeywordList& KeywordList::default_list() {
  static const KeywordList list{{
      "climate", "global warming", "environment", "nature", "pollution",
      "plastic", "green energy", "food waste", "water waste", "greenhouse",
      "recycling", "air quality", "eco-friendly", "emission",
      "renewable energy", "sustainable", "zero waste", "carbon dioxide",
      "ecology", "smog", "biodiversity",
  }};
  return list;
}

KeywordList load_keyword_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open keyword file: " + path.string());
  KeywordList list;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
      line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    list.keywords.push_back(case_fold(line));
  }
  if (list.keywords.empty())
    throw ConfigError("keyword file is empty: " + path.string());
  return list;
}

std::optional<std::int64_t> parse_iso8601_utc(std::string_view text) {
  int year, month, day, hour, minute, second;
  char sep;
  int consumed = 0;
  std::string buf(text);
  if (std::sscanf(buf.c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d%n", &year, &month,
                  &day, &sep, &hour, &minute, &second, &consumed) != 7)
    return std::nullopt;
  if (sep != 'T' && sep != ' ') return std::nullopt;
  std::string_view rest = text.substr(static_cast<std::size_t>(consumed));
  int offset_seconds = 0;
  if (rest == "Z" || rest.empty()) {
    // UTC
  } else if (rest.size() == 6 && (rest[0] == '+' || rest[0] == '-') &&
             rest[3] == ':') {
    int oh, om;
    if (std::sscanf(std::string(rest).c_str(), "%*c%2d:%2d", &oh, &om) != 2)
      return std::nullopt;
    if (oh > 23 || om > 59) return std::nullopt;
    offset_seconds = (oh * 3600 + om * 60) * (rest[0] == '-' ? -1 : 1);
  } else {
    return std::nullopt;
  }
  using namespace std::chrono;
  year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                     std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) return std::nullopt;
  if (hour > 23 || minute > 59 || second > 60) return std::nullopt;
  std::int64_t days = sys_days{ymd}.time_since_epoch().count();
  return days * 86400 + hour * 3600 + minute * 60 + second - offset_seconds;
}

std::string format_iso8601_utc(std::int64_t epoch_seconds) {
  using namespace std::chrono;
  std::int64_t days = epoch_seconds / 86400;
  std::int64_t rem = epoch_seconds % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  year_month_day ymd{sys_days{std::chrono::days{days}}};
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ",
                int(ymd.year()), unsigned(ymd.month()), unsigned(ymd.day()),
                int(rem / 3600), int((rem / 60) % 60), int(rem % 60));
  return buf;
}

int utc_year(std::int64_t epoch_seconds) {
  using namespace std::chrono;
  std::int64_t days = epoch_seconds / 86400;
  if (epoch_seconds % 86400 < 0) --days;
  return int(year_month_day{sys_days{std::chrono::days{days}}}.year());
}

namespace {

// Returns nullopt with `error` set when the record is malformed.
std::optional<Post> parse_post(const json& rec, Platform platform,
                               const LoadOptions& options,
                               std::string& error) {
  if (!rec.is_object()) {
    error = "record is not a JSON object";
    return std::nullopt;
  }
  Post post;
  post.platform = platform;
  if (!rec.contains("id") || !rec["id"].is_string() ||
      rec["id"].get<std::string>().empty()) {
    error = "missing or invalid 'id'";
    return std::nullopt;
  }
  post.id = rec["id"].get<std::string>();
  if (rec.contains("platform")) {
    auto p = rec["platform"].is_string()
                 ? platform_from_string(rec["platform"].get<std::string>())
                 : std::nullopt;
    if (!p) {
      error = "invalid 'platform'";
      return std::nullopt;
    }
    if (*p != platform) {
      error = "platform mismatch: expected " + std::string(to_string(platform));
      return std::nullopt;
    }
  }
  if (!rec.contains("text") || !rec["text"].is_string()) {
    error = "missing or invalid 'text'";
    return std::nullopt;
  }
  post.text = rec["text"].get<std::string>();
  if (!rec.contains("created_at") || !rec["created_at"].is_string()) {
    error = "missing or invalid 'created_at'";
    return std::nullopt;
  }
  auto ts = parse_iso8601_utc(rec["created_at"].get<std::string>());
  if (!ts) {
    error = "unparseable 'created_at'";
    return std::nullopt;
  }
  post.created_at = *ts;
  int year = utc_year(post.created_at);
  if (year < options.min_year || year > options.max_year) {
    error = "created_at year " + std::to_string(year) + " outside [" +
            std::to_string(options.min_year) + ", " +
            std::to_string(options.max_year) + "]";
    return std::nullopt;
  }
  struct Counter {
    const char* key;
    std::int64_t* value;
  };
  const Counter counters[] = {{"likes", &post.likes},
                              {"replies", &post.replies},
                              {"retweets", &post.retweets},
                              {"quotes", &post.quotes},
                              {"upvotes", &post.upvotes}};
  for (const auto& c : counters) {
    if (!rec.contains(c.key)) continue;
    if (!rec[c.key].is_number_integer()) {
      error = std::string("invalid '") + c.key + "'";
      return std::nullopt;
    }
    std::int64_t v = rec[c.key].get<std::int64_t>();
    if (v < 0) {
      error = std::string("negative '") + c.key + "'";
      return std::nullopt;
    }
    *c.value = v;
  }
  if (rec.contains("matched_keywords")) {
    if (!rec["matched_keywords"].is_array()) {
      error = "invalid 'matched_keywords'";
      return std::nullopt;
    }
    for (const auto& kw : rec["matched_keywords"]) {
      if (!kw.is_string()) {
        error = "invalid 'matched_keywords'";
        return std::nullopt;
      }
      post.matched_keywords.insert(kw.get<std::string>());
    }
  }
  return post;
}

}  // namespace

PostLoadResult load_posts(const std::filesystem::path& path, Platform platform,
                          const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open posts file: " + path.string());
  PostLoadResult result;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded()) {
      result.errors.push_back({lineno, "invalid JSON"});
      continue;
    }
    std::string error;
    auto post = parse_post(rec, platform, options, error);
    if (!post) {
      result.errors.push_back({lineno, error});
      continue;
    }
    result.posts.push_back(std::move(*post));
  }
  return result;
}

std::string serialize_posts(const std::vector<Post>& posts) {
  std::string out;
  for (const auto& post : posts) {
    json rec;
    rec["id"] = post.id;
    rec["platform"] = std::string(to_string(post.platform));
    rec["text"] = post.text;
    rec["created_at"] = format_iso8601_utc(post.created_at);
    rec["likes"] = post.likes;
    rec["replies"] = post.replies;
    rec["retweets"] = post.retweets;
    rec["quotes"] = post.quotes;
    rec["upvotes"] = post.upvotes;
    rec["matched_keywords"] =
        std::vector<std::string>(post.matched_keywords.begin(),
                                 post.matched_keywords.end());
    out += rec.dump();
    out.push_back('\n');
  }
  return out;
}

LabeledLoadResult load_labeled_csv(const std::filesystem::path& path,
                                   const CsvColumnMap& columns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open labeled CSV: " + path.string());
  LabeledLoadResult result;
  CsvReader reader(in);
  std::vector<std::string> fields;
  std::size_t needed = std::max(columns.label_col, columns.text_col) + 1;
  while (reader.next(fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    if (fields.size() < needed) {
      result.errors.push_back({reader.record_line(), "too few columns"});
      continue;
    }
    const std::string& code = fields[columns.label_col];
    Polarity label;
    if (code == "0") {
      label = Polarity::negative;
    } else if (code == "4") {
      label = Polarity::positive;
    } else {
      result.errors.push_back(
          {reader.record_line(), "label code must be 0 or 4, got '" + code + "'"});
      continue;
    }
    result.docs.push_back({fields[columns.text_col], label});
  }
  return result;
}

std::set<std::string> match_keywords(std::string_view text,
                                     const KeywordList& keywords) {
  std::set<std::string> matched;
  std::string folded = case_fold(text);
  for (const auto& kw : keywords.keywords) {
    if (folded.find(kw) != std::string::npos) matched.insert(kw);
  }
  return matched;
}

namespace {

template <typename Record, typename GetText, typename OnMatch>
KeywordFilterResult<Record> filter_records(const std::vector<Record>& records,
                                           const KeywordList& keywords,
                                           GetText get_text, OnMatch on_match) {
  if (keywords.keywords.empty())
    throw ConfigError("keyword list must not be empty");
  KeywordFilterResult<Record> result;
  for (const auto& kw : keywords.keywords) result.counts[kw] = 0;
  for (const auto& rec : records) {
    auto matched = match_keywords(get_text(rec), keywords);
    if (matched.empty()) continue;
    for (const auto& kw : matched) ++result.counts[kw];
    result.records.push_back(rec);
    on_match(result.records.back(), matched);
  }
  return result;
}

}  // namespace

KeywordFilterResult<Post> filter_by_keywords(const std::vector<Post>& posts,
                                             const KeywordList& keywords) {
  return filter_records(
      posts, keywords, [](const Post& p) -> std::string_view { return p.text; },
      [](Post& p, const std::set<std::string>& matched) {
        p.matched_keywords = matched;
      });
}

KeywordFilterResult<LabeledDoc> filter_by_keywords(
    const std::vector<LabeledDoc>& docs, const KeywordList& keywords) {
  return filter_records(
      docs, keywords,
      [](const LabeledDoc& d) -> std::string_view { return d.text; },
      [](LabeledDoc&, const std::set<std::string>&) {});
}

bool is_popular(const Post& post) {
  switch (post.platform) {
    case Platform::twitter: return post.likes >= 1;
    case Platform::reddit: return post.upvotes >= 1;
    case Platform::youtube: return post.likes >= 1;
  }
  return false;
}

bool is_viral(const Post& post, const ViralThresholds& thresholds) {
  switch (post.platform) {
    case Platform::twitter: return post.retweets >= thresholds.twitter_retweets;
    case Platform::reddit: return post.upvotes >= thresholds.reddit_upvotes;
    case Platform::youtube: return post.likes >= thresholds.youtube_likes;
  }
  return false;
}

}  // namespace envsent
