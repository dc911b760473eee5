// envsent: corpus analytics for social-media sentiment and emotion.
//
// Subcommands: train, classify, emotions, report, agree, bias-fit.
// Exit codes: 0 ok, 2 usage/config error, 3 data/model error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "envsent/analytics.hpp"
#include "envsent/annotation.hpp"
#include "envsent/corpus.hpp"
#include "envsent/csv.hpp"
#include "envsent/emotion.hpp"
#include "envsent/errors.hpp"
#include "envsent/io.hpp"
#include "envsent/preprocess.hpp"
#include "envsent/sentiment.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace envsent;

namespace {

struct RunConfig {
  fs::path slang;
  fs::path stopwords;
  fs::path emotion_lexicon;
  fs::path seeds_positive;
  fs::path seeds_negative;
  fs::path keywords;
  TrainConfig train;
  Platform platform = Platform::twitter;
  LoadOptions years;
  ViralThresholds viral;
  int bias_degree = 2;
  double drop_fraction = 0.6;
  fs::path out_dir = "out";
  std::string format = "csv";  // csv | json
};

fs::path require_file(const json& j, const char* key, const fs::path& base) {
  fs::path p = j.at(key).get<std::string>();
  if (p.is_relative()) p = base / p;
  if (!fs::exists(p))
    throw ConfigError(std::string("configured ") + key +
                      " does not exist: " + p.string());
  return p;
}

RunConfig load_run_config(const fs::path& path) {
  RunConfig config;
  if (path.empty()) return config;
  json j = json::parse(read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw ConfigError("config file is not valid JSON: " + path.string());
  const fs::path base = path.parent_path();
  if (j.contains("resources")) {
    const json& r = j["resources"];
    if (r.contains("slang")) config.slang = require_file(r, "slang", base);
    if (r.contains("stopwords"))
      config.stopwords = require_file(r, "stopwords", base);
    if (r.contains("emotion_lexicon"))
      config.emotion_lexicon = require_file(r, "emotion_lexicon", base);
    if (r.contains("seeds_positive"))
      config.seeds_positive = require_file(r, "seeds_positive", base);
    if (r.contains("seeds_negative"))
      config.seeds_negative = require_file(r, "seeds_negative", base);
    if (r.contains("keywords"))
      config.keywords = require_file(r, "keywords", base);
  }
  if (j.contains("train")) {
    const json& t = j["train"];
    if (t.contains("mode")) {
      std::string mode = t["mode"].get<std::string>();
      if (mode == "class_label") {
        config.train.mode = TrainMode::class_label;
      } else if (mode == "seed_words") {
        config.train.mode = TrainMode::seed_words;
      } else {
        throw ConfigError("train.mode must be class_label or seed_words");
      }
    }
    if (t.contains("smoothing_k")) {
      config.train.smoothing_k = t["smoothing_k"].get<double>();
      if (config.train.smoothing_k <= 0)
        throw ConfigError("train.smoothing_k must be > 0");
    }
    if (t.contains("min_freq"))
      config.train.min_freq = t["min_freq"].get<std::uint64_t>();
    if (t.contains("neutral_band")) {
      config.train.neutral_band.low = t["neutral_band"].at(0).get<double>();
      config.train.neutral_band.high = t["neutral_band"].at(1).get<double>();
      if (config.train.neutral_band.low >= config.train.neutral_band.high)
        throw ConfigError("neutral_band must satisfy low < high");
    }
  }
  if (j.contains("platform")) {
    auto p = platform_from_string(j["platform"].get<std::string>());
    if (!p) throw ConfigError("platform must be twitter, reddit or youtube");
    config.platform = *p;
  }
  if (j.contains("years")) {
    config.years.min_year = j["years"].at(0).get<int>();
    config.years.max_year = j["years"].at(1).get<int>();
  }
  if (j.contains("viral")) {
    const json& v = j["viral"];
    if (v.contains("twitter_retweets"))
      config.viral.twitter_retweets = v["twitter_retweets"].get<std::int64_t>();
    if (v.contains("reddit_upvotes"))
      config.viral.reddit_upvotes = v["reddit_upvotes"].get<std::int64_t>();
    if (v.contains("youtube_likes"))
      config.viral.youtube_likes = v["youtube_likes"].get<std::int64_t>();
  }
  if (j.contains("bias_degree")) config.bias_degree = j["bias_degree"].get<int>();
  if (j.contains("drop_fraction"))
    config.drop_fraction = j["drop_fraction"].get<double>();
  if (j.contains("output")) {
    const json& o = j["output"];
    if (o.contains("dir")) {
      config.out_dir = fs::path(o["dir"].get<std::string>());
      if (config.out_dir.is_relative()) config.out_dir = base / config.out_dir;
    }
    if (o.contains("format")) {
      config.format = o["format"].get<std::string>();
      if (config.format != "csv" && config.format != "json")
        throw ConfigError("output.format must be csv or json");
    }
  }
  return config;
}

ResourceSet load_resources(const RunConfig& config) {
  ResourceSet resources;
  if (!config.slang.empty()) load_slang_file(config.slang, resources);
  if (!config.stopwords.empty())
    load_stopword_file(config.stopwords, resources);
  return resources;
}

KeywordList keywords_for(const RunConfig& config) {
  if (!config.keywords.empty()) return load_keyword_file(config.keywords);
  return KeywordList::default_list();
}

std::set<std::string> load_word_list(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open word list: " + path.string());
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
      line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    words.insert(case_fold(line));
  }
  return words;
}

void report_load_errors(const std::vector<LoadError>& errors,
                        const std::string& what) {
  if (errors.empty()) return;
  std::cerr << "warning: " << errors.size() << " malformed " << what
            << " record(s) skipped";
  std::size_t shown = 0;
  for (const auto& e : errors) {
    if (shown++ == 5) {
      std::cerr << "; ...";
      break;
    }
    std::cerr << (shown == 1 ? ": " : "; ") << "line " << e.line << ": "
              << e.message;
  }
  std::cerr << "\n";
}

void ensure_out_dir(const RunConfig& config) {
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec && !fs::is_directory(config.out_dir))
    throw ConfigError("cannot create output directory: " +
                      config.out_dir.string());
}

void write_csv_table(const fs::path& path,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
  std::string out = csv_join(header) + "\n";
  for (const auto& row : rows) out += csv_join(row) + "\n";
  write_file_atomic(path, out);
}

void write_json_doc(const fs::path& path, const json& doc) {
  write_file_atomic(path, doc.dump(2) + "\n");
}

std::string label_as_int(SentimentLabel label) {
  return std::to_string(static_cast<int>(label));
}

// ---------------------------------------------------------------------------
// train

struct TrainArgs {
  std::string input;
  std::string model_out;
  bool sentiment140 = false;
  std::size_t label_col = 0;
  std::size_t text_col = 1;
  bool no_keyword_filter = false;
};

int cmd_train(const RunConfig& config, const TrainArgs& args) {
  CsvColumnMap columns;
  if (args.sentiment140) {
    columns = CsvColumnMap::sentiment140();
  } else {
    columns = {args.label_col, args.text_col};
  }
  auto loaded = load_labeled_csv(args.input, columns);
  report_load_errors(loaded.errors, "labeled CSV");
  if (loaded.docs.empty()) throw DataError("no usable training documents");
  const std::size_t n_loaded = loaded.docs.size() + loaded.errors.size();

  std::map<std::string, std::uint64_t> keyword_counts;
  std::vector<LabeledDoc> docs;
  if (args.no_keyword_filter) {
    docs = std::move(loaded.docs);
  } else {
    auto filtered = filter_by_keywords(loaded.docs, keywords_for(config));
    keyword_counts = std::move(filtered.counts);
    docs = std::move(filtered.records);
    if (docs.empty())
      throw DataError("keyword filter removed every training document");
  }

  TrainConfig train_config = config.train;
  if (train_config.mode == TrainMode::seed_words) {
    if (config.seeds_positive.empty() || config.seeds_negative.empty())
      throw ConfigError(
          "seed_words mode requires resources.seeds_positive and "
          "resources.seeds_negative");
    train_config.seeds = SeedLexicons{load_word_list(config.seeds_positive),
                                      load_word_list(config.seeds_negative)};
  }

  ResourceSet resources = load_resources(config);
  std::vector<LabeledTokens> corpus;
  corpus.reserve(docs.size());
  std::uint64_t n_pos = 0;
  for (const auto& doc : docs) {
    if (doc.label == Polarity::positive) ++n_pos;
    corpus.push_back({pipeline(doc.text, resources), doc.label});
  }

  SentimentModel model = train(corpus, train_config);

  ensure_out_dir(config);
  fs::path model_path = args.model_out.empty()
                            ? config.out_dir / "model.json"
                            : fs::path(args.model_out);
  save_model(model, model_path);

  json summary;
  summary["docs_loaded"] = n_loaded;
  summary["parse_errors"] = loaded.errors.size();
  summary["docs_trained"] = docs.size();
  summary["positive"] = n_pos;
  summary["negative"] = docs.size() - n_pos;
  summary["vocab_size"] = model.so.size();
  summary["keyword_counts"] = keyword_counts;
  summary["model_file"] = model_path.string();
  if (model.so.empty())
    std::cerr << "warning: trained model has an empty vocabulary "
                 "(min_freq too high?)\n";

  if (config.format == "json") {
    write_json_doc(config.out_dir / "train_summary.json", summary);
  } else {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"docs_loaded", std::to_string(n_loaded)});
    rows.push_back({"parse_errors", std::to_string(loaded.errors.size())});
    rows.push_back({"docs_trained", std::to_string(docs.size())});
    rows.push_back({"positive", std::to_string(n_pos)});
    rows.push_back({"negative", std::to_string(docs.size() - n_pos)});
    rows.push_back({"vocab_size", std::to_string(model.so.size())});
    for (const auto& [kw, count] : keyword_counts)
      rows.push_back({"keyword:" + kw, std::to_string(count)});
    write_csv_table(config.out_dir / "train_summary.csv", {"key", "value"},
                    rows);
  }
  std::cout << "trained " << model.so.size() << " words from " << docs.size()
            << " documents -> " << model_path.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// classify

struct ClassifyArgs {
  std::string model;
  std::string posts;
  std::string out;
};

int cmd_classify(const RunConfig& config, const ClassifyArgs& args) {
  SentimentModel model = load_model(args.model);
  if (model.so.empty())
    std::cerr << "warning: model vocabulary is empty; every post will score "
                 "0 (neutral)\n";
  auto loaded = load_posts(args.posts, config.platform, config.years);
  report_load_errors(loaded.errors, "post");

  ResourceSet resources = load_resources(config);
  std::vector<std::vector<std::string>> rows;
  rows.reserve(loaded.posts.size());
  for (const auto& post : loaded.posts) {
    double score = score_document(model, pipeline(post.text, resources));
    SentimentLabel label = classify(score, model.config.neutral_band);
    rows.push_back(
        {post.id, format_double(score), std::string(to_string(label))});
  }
  ensure_out_dir(config);
  fs::path out = args.out.empty() ? config.out_dir / "classified.csv"
                                  : fs::path(args.out);
  write_csv_table(out, {"id", "score", "label"}, rows);
  std::cout << "classified " << rows.size() << " posts -> " << out.string()
            << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// emotions

struct EmotionsArgs {
  std::string posts;
  std::string lexicon;
  std::string out;
};

int cmd_emotions(const RunConfig& config, const EmotionsArgs& args) {
  fs::path lexicon_path =
      args.lexicon.empty() ? config.emotion_lexicon : fs::path(args.lexicon);
  if (lexicon_path.empty())
    throw ConfigError("no emotion lexicon configured (resources."
                      "emotion_lexicon or --lexicon)");
  EmotionLexicon lexicon = load_emotion_lexicon(lexicon_path);
  if (lexicon.assoc.empty())
    std::cerr << "warning: emotion lexicon is empty\n";

  auto loaded = load_posts(args.posts, config.platform, config.years);
  report_load_errors(loaded.errors, "post");
  ResourceSet resources = load_resources(config);

  std::vector<std::string> header = {"id"};
  for (Emotion e : kAllEmotions) header.push_back(std::string(to_string(e)));
  header.push_back("matched_tokens");
  header.push_back("total_tokens");

  std::vector<std::vector<std::string>> rows;
  for (const auto& post : loaded.posts) {
    EmotionProfile profile =
        emotion_profile(lexicon, pipeline(post.text, resources));
    std::vector<std::string> row = {post.id};
    for (Emotion e : kAllEmotions) row.push_back(format_double(profile[e]));
    row.push_back(std::to_string(profile.matched_tokens));
    row.push_back(std::to_string(profile.total_tokens));
    rows.push_back(std::move(row));
  }
  ensure_out_dir(config);
  fs::path out = args.out.empty() ? config.out_dir / "emotions.csv"
                                  : fs::path(args.out);
  write_csv_table(out, header, rows);
  std::cout << "profiled " << rows.size() << " posts -> " << out.string()
            << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// report

struct ReportArgs {
  std::string posts;
  std::string scores;
  std::string emotions;
  std::string gold;
  std::vector<std::string> predictions;  // name=path
  bool all_posts_emotion = false;
  int degree = -1;  // -1: use config
};

struct ScoredRow {
  double score = 0.0;
  SentimentLabel label = SentimentLabel::neutral;
};

std::map<std::string, ScoredRow> load_scores_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open scores CSV: " + path.string());
  CsvReader reader(in);
  std::vector<std::string> fields;
  std::map<std::string, ScoredRow> rows;
  bool first = true;
  while (reader.next(fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (first && fields.size() >= 3 && fields[0] == "id") {
      first = false;
      continue;
    }
    first = false;
    if (fields.size() < 3)
      throw DataError(path.string() + ":" +
                      std::to_string(reader.record_line()) +
                      ": expected id,score,label");
    ScoredRow row;
    try {
      row.score = std::stod(fields[1]);
    } catch (const std::exception&) {
      throw DataError(path.string() + ":" +
                      std::to_string(reader.record_line()) +
                      ": bad score '" + fields[1] + "'");
    }
    auto label = label_from_string(fields[2]);
    if (!label)
      throw DataError(path.string() + ":" +
                      std::to_string(reader.record_line()) +
                      ": bad label '" + fields[2] + "'");
    row.label = *label;
    rows[fields[0]] = row;
  }
  return rows;
}

std::map<std::string, SentimentLabel> load_label_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open label CSV: " + path.string());
  CsvReader reader(in);
  std::vector<std::string> fields;
  std::map<std::string, SentimentLabel> rows;
  bool first = true;
  while (reader.next(fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (first && fields.size() >= 2 && fields[0] == "id") {
      first = false;
      continue;
    }
    first = false;
    if (fields.size() < 2)
      throw DataError(path.string() + ":" +
                      std::to_string(reader.record_line()) +
                      ": expected id,label");
    auto label = label_from_string(fields[1]);
    if (!label)
      throw DataError(path.string() + ":" +
                      std::to_string(reader.record_line()) +
                      ": bad label '" + fields[1] + "'");
    rows[fields[0]] = *label;
  }
  return rows;
}

std::map<std::string, EmotionProfile> load_emotions_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open emotions CSV: " + path.string());
  CsvReader reader(in);
  std::vector<std::string> fields;
  std::map<std::string, EmotionProfile> rows;
  bool first = true;
  while (reader.next(fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (first) {
      first = false;
      if (!fields.empty() && fields[0] == "id") continue;
    }
    if (fields.size() < 1 + kEmotionCount)
      throw DataError(path.string() + ":" +
                      std::to_string(reader.record_line()) +
                      ": expected id plus 8 intensities");
    EmotionProfile profile;
    for (std::size_t i = 0; i < kEmotionCount; ++i) {
      try {
        profile.intensity[i] = std::stod(fields[1 + i]);
      } catch (const std::exception&) {
        throw DataError(path.string() + ":" +
                        std::to_string(reader.record_line()) +
                        ": bad intensity '" + fields[1 + i] + "'");
      }
    }
    if (fields.size() >= 2 + kEmotionCount)
      profile.matched_tokens =
          std::strtoull(fields[1 + kEmotionCount].c_str(), nullptr, 10);
    if (fields.size() >= 3 + kEmotionCount)
      profile.total_tokens =
          std::strtoull(fields[2 + kEmotionCount].c_str(), nullptr, 10);
    rows[fields[0]] = profile;
  }
  return rows;
}

template <typename Map>
void require_id_cover(const std::vector<Post>& posts, const Map& by_id,
                      const std::string& what) {
  std::vector<std::string> missing;
  for (const auto& post : posts) {
    if (!by_id.count(post.id)) missing.push_back(post.id);
  }
  if (missing.empty()) return;
  std::string msg = what + " is missing " + std::to_string(missing.size()) +
                    " post id(s):";
  for (std::size_t i = 0; i < missing.size() && i < 10; ++i)
    msg += " " + missing[i];
  if (missing.size() > 10) msg += " ...";
  throw DataError(msg);
}

std::string emotion_cell(const std::optional<Emotion>& e) {
  return e ? std::string(to_string(*e)) : "-";
}

void emit_trends(const RunConfig& config,
                 const std::vector<TrendRow>& rows) {
  if (config.format == "json") {
    json doc = json::array();
    for (const auto& row : rows) {
      json r;
      if (row.is_total)
        r["year"] = "total";
      else
        r["year"] = row.year;
      r["popular"] = row.popular;
      r["positive"] = row.positive;
      r["positive_pct"] = row.positive_pct;
      r["negative"] = row.negative;
      r["negative_pct"] = row.negative_pct;
      r["neutral"] = row.neutral;
      r["neutral_pct"] = row.neutral_pct;
      r["emotion"] = emotion_cell(row.emotion);
      doc.push_back(r);
    }
    write_json_doc(config.out_dir / "trends.json", doc);
  } else {
    std::vector<std::vector<std::string>> table;
    for (const auto& row : rows) {
      table.push_back({row.is_total ? "total" : std::to_string(row.year),
                       std::to_string(row.popular),
                       std::to_string(row.positive),
                       format_fixed2(row.positive_pct),
                       std::to_string(row.negative),
                       format_fixed2(row.negative_pct),
                       std::to_string(row.neutral),
                       format_fixed2(row.neutral_pct),
                       emotion_cell(row.emotion)});
    }
    write_csv_table(config.out_dir / "trends.csv",
                    {"year", "popular", "positive", "positive_pct", "negative",
                     "negative_pct", "neutral", "neutral_pct", "emotion"},
                    table);
  }
}

void emit_emotion_trends(const RunConfig& config,
                         const std::vector<ClassifiedPost>& posts,
                         const std::vector<EmotionProfile>& profiles,
                         bool all_posts) {
  std::map<int, std::pair<std::array<double, kEmotionCount>, std::uint64_t>>
      by_year;
  for (std::size_t i = 0; i < posts.size(); ++i) {
    if (!all_posts && posts[i].label != SentimentLabel::negative) continue;
    auto& [sums, n] = by_year[utc_year(posts[i].post.created_at)];
    for (std::size_t e = 0; e < kEmotionCount; ++e)
      sums[e] += profiles[i].intensity[e];
    ++n;
  }
  if (config.format == "json") {
    json doc = json::array();
    for (const auto& [year, entry] : by_year) {
      json r;
      r["year"] = year;
      r["documents"] = entry.second;
      for (Emotion e : kAllEmotions) {
        r[std::string(to_string(e))] =
            entry.first[static_cast<std::size_t>(e)] /
            static_cast<double>(entry.second);
      }
      doc.push_back(r);
    }
    write_json_doc(config.out_dir / "emotion_trends.json", doc);
  } else {
    std::vector<std::string> header = {"year", "documents"};
    for (Emotion e : kAllEmotions) header.push_back(std::string(to_string(e)));
    std::vector<std::vector<std::string>> table;
    for (const auto& [year, entry] : by_year) {
      std::vector<std::string> row = {std::to_string(year),
                                      std::to_string(entry.second)};
      for (std::size_t e = 0; e < kEmotionCount; ++e) {
        row.push_back(format_double(entry.first[e] /
                                    static_cast<double>(entry.second)));
      }
      table.push_back(std::move(row));
    }
    write_csv_table(config.out_dir / "emotion_trends.csv", header, table);
  }
}

json metrics_to_json(const MetricsReport& report) {
  json doc;
  doc["accuracy"] = report.accuracy;
  const char* names[] = {"negative", "neutral", "positive"};
  for (std::size_t c = 0; c < 3; ++c) {
    json cls;
    cls["precision"] = report.per_class[c].precision;
    cls["recall"] = report.per_class[c].recall;
    cls["f1"] = report.per_class[c].f1;
    cls["support"] = report.per_class[c].support;
    doc["per_class"][names[c]] = cls;
  }
  doc["macro"] = {{"precision", report.macro_precision},
                  {"recall", report.macro_recall},
                  {"f1", report.macro_f1}};
  doc["weighted"] = {{"precision", report.weighted_precision},
                     {"recall", report.weighted_recall},
                     {"f1", report.weighted_f1}};
  doc["zero_division"] = report.zero_division;
  return doc;
}

void emit_metrics(const RunConfig& config, const MetricsReport& report) {
  if (config.format == "json") {
    write_json_doc(config.out_dir / "metrics.json", metrics_to_json(report));
    return;
  }
  const char* names[] = {"negative", "neutral", "positive"};
  std::vector<std::vector<std::string>> table;
  table.push_back({"accuracy", format_double(report.accuracy)});
  for (std::size_t c = 0; c < 3; ++c) {
    table.push_back({std::string(names[c]) + "_precision",
                     format_double(report.per_class[c].precision)});
    table.push_back({std::string(names[c]) + "_recall",
                     format_double(report.per_class[c].recall)});
    table.push_back({std::string(names[c]) + "_f1",
                     format_double(report.per_class[c].f1)});
    table.push_back({std::string(names[c]) + "_support",
                     std::to_string(report.per_class[c].support)});
  }
  table.push_back({"macro_precision", format_double(report.macro_precision)});
  table.push_back({"macro_recall", format_double(report.macro_recall)});
  table.push_back({"macro_f1", format_double(report.macro_f1)});
  table.push_back(
      {"weighted_precision", format_double(report.weighted_precision)});
  table.push_back({"weighted_recall", format_double(report.weighted_recall)});
  table.push_back({"weighted_f1", format_double(report.weighted_f1)});
  table.push_back({"zero_division", report.zero_division ? "true" : "false"});
  write_csv_table(config.out_dir / "metrics.csv", {"key", "value"}, table);
}

void emit_bias_fit(const RunConfig& config, const BiasFit& fit) {
  if (config.format == "json") {
    json doc;
    doc["degree"] = fit.degree;
    doc["coefficients"] = fit.coefficients;
    doc["n_points"] = fit.n_points;
    doc["rmse"] = fit.rmse;
    write_json_doc(config.out_dir / "bias_fit.json", doc);
  } else {
    std::vector<std::vector<std::string>> table;
    table.push_back({"degree", std::to_string(fit.degree)});
    table.push_back({"n_points", std::to_string(fit.n_points)});
    table.push_back({"rmse", format_double(fit.rmse)});
    for (std::size_t j = 0; j < fit.coefficients.size(); ++j) {
      table.push_back({"c" + std::to_string(j),
                       format_double(fit.coefficients[j])});
    }
    write_csv_table(config.out_dir / "bias_fit.csv", {"key", "value"}, table);
  }
}

int cmd_report(const RunConfig& config, const ReportArgs& args) {
  auto loaded = load_posts(args.posts, config.platform, config.years);
  report_load_errors(loaded.errors, "post");
  auto scores = load_scores_csv(args.scores);
  require_id_cover(loaded.posts, scores, "scores CSV");

  std::map<std::string, EmotionProfile> profiles_by_id;
  bool have_profiles = !args.emotions.empty();
  if (have_profiles) {
    profiles_by_id = load_emotions_csv(args.emotions);
    require_id_cover(loaded.posts, profiles_by_id, "emotions CSV");
  }

  // Popular posts drive the trend, keyword and engagement artifacts.
  std::vector<ClassifiedPost> popular;
  std::vector<EmotionProfile> popular_profiles;
  std::vector<Post> popular_posts;
  std::vector<ClassifiedPost> all_classified;
  for (const auto& post : loaded.posts) {
    const ScoredRow& row = scores.at(post.id);
    ClassifiedPost cp{post, row.score, row.label};
    all_classified.push_back(cp);
    if (!is_popular(post)) continue;
    popular.push_back(cp);
    popular_posts.push_back(post);
    if (have_profiles) popular_profiles.push_back(profiles_by_id.at(post.id));
  }

  ensure_out_dir(config);
  auto trends = yearly_trends(popular,
                              have_profiles ? &popular_profiles : nullptr,
                              args.all_posts_emotion);
  emit_trends(config, trends);
  if (have_profiles)
    emit_emotion_trends(config, popular, popular_profiles,
                        args.all_posts_emotion);

  {
    auto counts = keyword_frequency(popular_posts, keywords_for(config));
    if (config.format == "json") {
      write_json_doc(config.out_dir / "keywords.json", json(counts));
    } else {
      std::vector<std::vector<std::string>> table;
      for (const auto& [kw, count] : counts)
        table.push_back({kw, std::to_string(count)});
      write_csv_table(config.out_dir / "keywords.csv", {"keyword", "count"},
                      table);
    }
  }

  {
    auto means = engagement_by_sentiment(popular);
    if (config.format == "json") {
      json doc;
      for (const auto& [label, mean] : means)
        doc[std::string(to_string(label))] = mean;
      write_json_doc(config.out_dir / "engagement.json", doc);
    } else {
      std::vector<std::vector<std::string>> table;
      for (const auto& [label, mean] : means)
        table.push_back({std::string(to_string(label)), format_double(mean)});
      write_csv_table(config.out_dir / "engagement.csv",
                      {"label", "mean_engagement"}, table);
    }
  }

  {
    std::vector<std::pair<double, double>> points;
    for (const auto& cp : all_classified) {
      if (!is_viral(cp.post, config.viral)) continue;
      double engagement = 0.0;
      switch (cp.post.platform) {
        case Platform::twitter:
          engagement = static_cast<double>(cp.post.retweets);
          break;
        case Platform::reddit:
          engagement = static_cast<double>(cp.post.upvotes);
          break;
        case Platform::youtube:
          engagement = static_cast<double>(cp.post.likes);
          break;
      }
      points.emplace_back(cp.score, engagement);
    }
    int degree = args.degree >= 0 ? args.degree : config.bias_degree;
    if (points.size() >= static_cast<std::size_t>(degree) + 1) {
      emit_bias_fit(config, fit_bias_curve(points, degree));
    } else {
      std::cerr << "warning: " << points.size()
                << " viral post(s); skipping bias fit (need degree+1)\n";
    }
  }

  if (args.gold.empty() && !args.predictions.empty())
    std::cerr << "warning: --pred requires --gold; comparison table skipped\n";
  if (!args.gold.empty()) {
    auto gold = load_label_csv(args.gold);
    require_id_cover(loaded.posts, gold, "gold labels CSV");
    std::vector<SentimentLabel> gold_seq, pred_seq;
    for (const auto& cp : all_classified) {
      gold_seq.push_back(gold.at(cp.post.id));
      pred_seq.push_back(cp.label);
    }
    emit_metrics(config, metrics(confusion(gold_seq, pred_seq)));

    std::vector<std::pair<std::string, std::map<std::string, SentimentLabel>>>
        systems;
    for (const auto& spec : args.predictions) {
      auto eq = spec.find('=');
      if (eq == std::string::npos || eq == 0)
        throw ConfigError("--pred expects NAME=PATH, got '" + spec + "'");
      systems.emplace_back(spec.substr(0, eq),
                           load_label_csv(spec.substr(eq + 1)));
    }
    std::vector<std::vector<std::string>> table;
    auto add_row = [&](const std::string& name,
                       const std::vector<SentimentLabel>& pred) {
      auto m = metrics(confusion(gold_seq, pred));
      table.push_back({name, format_double(m.accuracy),
                       format_double(m.weighted_precision),
                       format_double(m.weighted_recall),
                       format_double(m.weighted_f1)});
    };
    add_row("pmi", pred_seq);
    for (const auto& [name, labels] : systems) {
      require_id_cover(loaded.posts, labels, "prediction CSV for " + name);
      std::vector<SentimentLabel> pred;
      for (const auto& cp : all_classified) pred.push_back(labels.at(cp.post.id));
      add_row(name, pred);
    }
    if (!systems.empty() || !table.empty()) {
      if (config.format == "json") {
        json doc = json::array();
        for (const auto& row : table) {
          doc.push_back({{"classifier", row[0]},
                         {"accuracy", std::stod(row[1])},
                         {"precision", std::stod(row[2])},
                         {"recall", std::stod(row[3])},
                         {"f1", std::stod(row[4])}});
        }
        write_json_doc(config.out_dir / "comparison.json", doc);
      } else {
        write_csv_table(config.out_dir / "comparison.csv",
                        {"classifier", "accuracy", "precision", "recall", "f1"},
                        table);
      }
    }
  }
  std::cout << "report written to " << config.out_dir.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// agree

struct AgreeArgs {
  std::string annotations;
  std::string weights;
  double drop_fraction = -1.0;  // <0: use config
};

int cmd_agree(const RunConfig& config, const AgreeArgs& args) {
  AnnotationMatrix matrix =
      load_annotation_csv(args.annotations, args.weights);
  double drop =
      args.drop_fraction >= 0 ? args.drop_fraction : config.drop_fraction;
  ScreenResult screened = screen_annotators(matrix, drop);
  for (const auto& id : screened.report.dropped)
    std::cerr << "annotator excluded (outlier rate >= " << drop << "): " << id
              << "\n";

  ensure_out_dir(config);
  std::vector<std::vector<std::string>> item_rows;
  for (std::size_t i = 0; i < screened.matrix.items.size(); ++i) {
    double score = weighted_score(screened.matrix, i);
    SentimentLabel label = to_label(score, config.train.neutral_band);
    item_rows.push_back({screened.matrix.items[i], format_double(score),
                         label_as_int(label)});
  }
  write_csv_table(config.out_dir / "items.csv",
                  {"item_id", "weighted_score", "label"}, item_rows);

  AgreementReport agreement =
      agreement_report(screened.matrix, config.train.neutral_band);

  json doc;
  doc["annotators"] = agreement.annotators;
  doc["mean_kappa"] = agreement.mean_kappa;
  doc["pairwise_kappa"] = agreement.pairwise_kappa;
  doc["outlier_rate"] = screened.report.outlier_rate;
  doc["dropped"] = screened.report.dropped;
  write_json_doc(config.out_dir / "agreement.json", doc);

  std::vector<std::string> header = {"annotator"};
  for (const auto& id : agreement.annotators) header.push_back(id);
  std::vector<std::vector<std::string>> kappa_rows;
  for (std::size_t a = 0; a < agreement.annotators.size(); ++a) {
    std::vector<std::string> row = {agreement.annotators[a]};
    for (double value : agreement.pairwise_kappa[a])
      row.push_back(format_double(value));
    kappa_rows.push_back(std::move(row));
  }
  write_csv_table(config.out_dir / "kappa.csv", header, kappa_rows);

  std::cout << "mean kappa " << format_double(agreement.mean_kappa) << " over "
            << agreement.annotators.size() << " annotators -> "
            << config.out_dir.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// bias-fit

struct BiasFitArgs {
  std::string points;
  int degree = -1;
};

int cmd_bias_fit(const RunConfig& config, const BiasFitArgs& args) {
  std::ifstream in(args.points, std::ios::binary);
  if (!in) throw DataError("cannot open points CSV: " + args.points);
  CsvReader reader(in);
  std::vector<std::string> fields;
  std::vector<std::pair<double, double>> points;
  bool first = true;
  while (reader.next(fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() < 2)
      throw DataError(args.points + ":" +
                      std::to_string(reader.record_line()) +
                      ": expected score,engagement");
    try {
      points.emplace_back(std::stod(fields[0]), std::stod(fields[1]));
    } catch (const std::exception&) {
      if (first) {  // tolerate a header row
        first = false;
        continue;
      }
      throw DataError(args.points + ":" +
                      std::to_string(reader.record_line()) +
                      ": non-numeric point");
    }
    first = false;
  }
  int degree = args.degree >= 0 ? args.degree : config.bias_degree;
  ensure_out_dir(config);
  BiasFit fit = fit_bias_curve(points, degree);
  emit_bias_fit(config, fit);
  std::cout << "fit degree " << degree << " over " << fit.n_points
            << " points, rmse " << format_double(fit.rmse) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PMI sentiment and emotion analytics for social-media corpora"};
  app.require_subcommand(1);

  std::string config_path;
  if (const char* env = std::getenv("ENVSENT_CONFIG")) config_path = env;
  std::string out_dir_flag, format_flag, platform_flag;
  app.add_option("--config", config_path, "JSON run configuration file");
  app.add_option("--out-dir", out_dir_flag, "output directory (overrides config)");
  app.add_option("--format", format_flag, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--platform", platform_flag,
                 "posts platform: twitter, reddit or youtube")
      ->check(CLI::IsMember({"twitter", "reddit", "youtube"}));

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "train a sentiment model");
  train_cmd->add_option("--input", train_args.input, "labeled CSV")->required();
  train_cmd->add_option("--model", train_args.model_out, "model output path");
  train_cmd->add_flag("--s140", train_args.sentiment140,
                      "input uses the Sentiment140 column order");
  train_cmd->add_option("--label-col", train_args.label_col,
                        "0-based label column");
  train_cmd->add_option("--text-col", train_args.text_col,
                        "0-based text column");
  train_cmd->add_flag("--no-keyword-filter", train_args.no_keyword_filter,
                      "train on the full corpus without keyword filtering");

  ClassifyArgs classify_args;
  auto* classify_cmd = app.add_subcommand("classify", "score posts JSONL");
  classify_cmd->add_option("--model", classify_args.model, "model file")
      ->required();
  classify_cmd->add_option("--posts", classify_args.posts, "posts JSONL")
      ->required();
  classify_cmd->add_option("--out", classify_args.out, "output CSV path");

  EmotionsArgs emotions_args;
  auto* emotions_cmd =
      app.add_subcommand("emotions", "emotion profiles for posts JSONL");
  emotions_cmd->add_option("--posts", emotions_args.posts, "posts JSONL")
      ->required();
  emotions_cmd->add_option("--lexicon", emotions_args.lexicon,
                           "emotion lexicon TSV");
  emotions_cmd->add_option("--out", emotions_args.out, "output CSV path");

  ReportArgs report_args;
  auto* report_cmd =
      app.add_subcommand("report", "trend/bias/metrics artifacts");
  report_cmd->add_option("--posts", report_args.posts, "posts JSONL")
      ->required();
  report_cmd->add_option("--scores", report_args.scores,
                         "classified CSV from the classify command")
      ->required();
  report_cmd->add_option("--emotions", report_args.emotions,
                         "emotion profiles CSV from the emotions command");
  report_cmd->add_option("--gold", report_args.gold, "gold labels CSV");
  report_cmd->add_option("--pred", report_args.predictions,
                         "external prediction CSV as NAME=PATH (repeatable)");
  report_cmd->add_flag("--all-posts-emotion", report_args.all_posts_emotion,
                       "derive yearly emotion from all posts, not only "
                       "negative ones");
  report_cmd->add_option("--degree", report_args.degree,
                         "bias fit polynomial degree");

  AgreeArgs agree_args;
  auto* agree_cmd =
      app.add_subcommand("agree", "aggregate human annotations");
  agree_cmd->add_option("--annotations", agree_args.annotations,
                        "annotation CSV")
      ->required();
  agree_cmd->add_option("--weights", agree_args.weights,
                        "annotator weights JSON")
      ->required();
  agree_cmd->add_option("--drop-fraction", agree_args.drop_fraction,
                        "outlier rate at which annotators are dropped");

  BiasFitArgs bias_args;
  auto* bias_cmd =
      app.add_subcommand("bias-fit", "fit engagement against sentiment");
  bias_cmd->add_option("--points", bias_args.points,
                       "CSV of score,engagement pairs")
      ->required();
  bias_cmd->add_option("--degree", bias_args.degree, "polynomial degree");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    RunConfig config = load_run_config(
        config_path.empty() ? fs::path() : fs::path(config_path));
    if (!out_dir_flag.empty()) config.out_dir = out_dir_flag;
    if (!format_flag.empty()) config.format = format_flag;
    if (!platform_flag.empty())
      config.platform = *platform_from_string(platform_flag);

    if (*train_cmd) return cmd_train(config, train_args);
    if (*classify_cmd) return cmd_classify(config, classify_args);
    if (*emotions_cmd) return cmd_emotions(config, emotions_args);
    if (*report_cmd) return cmd_report(config, report_args);
    if (*agree_cmd) return cmd_agree(config, agree_args);
    if (*bias_cmd) return cmd_bias_fit(config, bias_args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
