#ifndef ENVSENT_PREPROCESS_HPP_
#define ENVSENT_PREPROCESS_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace envsent {

// Lowercase, whitespace-free tokens in document order.
using TokenSeq = std::vector<std::string>;

// Shared read-only lookup tables for the text pipeline. Keys and expansion
// values are stored case-folded so they match pipeline output.
struct ResourceSet {
  std::unordered_map<std::string, std::string> slang;
  std::unordered_set<std::string> stopwords;
};

// Slang file: UTF-8 TSV, "slang<TAB>expansion"; lines starting with '#'
// are comments. Throws FormatError on rows without two non-empty columns.
void load_slang_file(const std::filesystem::path& path, ResourceSet& out);

// Stopword file: UTF-8, one word per line.
void load_stopword_file(const std::filesystem::path& path, ResourceSet& out);

// Strips URLs (http/https/www tokens), @-mentions, the '#' of hashtags
// (keeping the tag body) and any character that is not a letter, digit,
// whitespace or apostrophe. Whitespace runs collapse to single spaces and
// the result is trimmed.
std::string clean(std::string_view raw);

// Unicode-aware lowercase for ASCII, Latin-1/Latin Extended-A, Greek and
// Cyrillic; other code points pass through unchanged. Idempotent.
std::string case_fold(std::string_view text);

// Splits on whitespace; tokens consisting solely of apostrophes are dropped.
TokenSeq tokenize(std::string_view text);

// Replaces each token that is a slang key with its expansion, re-tokenizing
// multiword expansions. Single pass: expansions are not looked up again.
TokenSeq expand_slang(const TokenSeq& tokens, const ResourceSet& resources);

// Order-preserving removal of exact-match stopwords.
TokenSeq remove_stopwords(const TokenSeq& tokens, const ResourceSet& resources);

// clean -> case_fold -> tokenize -> expand_slang -> remove_stopwords.
TokenSeq pipeline(std::string_view raw, const ResourceSet& resources);

}  // namespace envsent

#endif  // ENVSENT_PREPROCESS_HPP_
