#include "envsent/preprocess.hpp"

#include <cstdint>
#include <fstream>

#include "envsent/errors.hpp"

namespace envsent {
namespace {

bool is_ascii_space(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' ||
         cp == U'\f' || cp == U'\v';
}

bool is_space(char32_t cp) { return is_ascii_space(cp) || cp == 0x00A0; }

bool is_ascii_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

bool is_word_char(char32_t cp) {
  return is_ascii_digit(cp) || (cp >= U'a' && cp <= U'z') ||
         (cp >= U'A' && cp <= U'Z') || cp == U'_';
}

// Letter ranges kept by clean(). ASCII plus the common European scripts;
// everything else counts as a special character.
bool is_letter(char32_t cp) {
  if ((cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z')) return true;
  if (cp >= 0x00C0 && cp <= 0x024F) return cp != 0x00D7 && cp != 0x00F7;
  if (cp >= 0x0386 && cp <= 0x03FF) return true;  // Greek
  if (cp >= 0x0400 && cp <= 0x04FF) return true;  // Cyrillic
  return false;
}

char32_t fold_codepoint(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 32;
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 32;
  // Latin Extended-A pairs upper/lower alternately.
  if (cp >= 0x0100 && cp <= 0x0177 && (cp % 2) == 0) return cp + 1;
  if (cp >= 0x0179 && cp <= 0x017D && (cp % 2) == 1) return cp + 1;
  if (cp >= 0x0391 && cp <= 0x03A9 && cp != 0x03A2) return cp + 32;  // Greek
  if (cp >= 0x0410 && cp <= 0x042F) return cp + 32;                  // Cyrillic
  if (cp >= 0x0400 && cp <= 0x040F) return cp + 80;
  return cp;
}

// Decodes one UTF-8 code point at i, advancing i. Invalid bytes decode to
// U+FFFD one byte at a time so they get stripped as special characters.
char32_t next_codepoint(std::string_view s, std::size_t& i) {
  const auto byte = [&](std::size_t k) -> std::uint8_t {
    return static_cast<std::uint8_t>(s[k]);
  };
  std::uint8_t b0 = byte(i);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++i;
    return 0xFFFD;
  }
  if (i + static_cast<std::size_t>(len) > s.size()) {
    ++i;
    return 0xFFFD;
  }
  for (int k = 1; k < len; ++k) {
    std::uint8_t b = byte(i + static_cast<std::size_t>(k));
    if ((b & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  i += static_cast<std::size_t>(len);
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool starts_with_icase(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    char a = s[k];
    if (a >= 'A' && a <= 'Z') a = static_cast<char>(a + 32);
    if (a != prefix[k]) return false;
  }
  return true;
}

bool is_url_token(std::string_view tok) {
  return starts_with_icase(tok, "http://") || starts_with_icase(tok, "https://") ||
         starts_with_icase(tok, "www.");
}

std::string trim_line(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.pop_back();
  return s;
}

}  // namespace

std::string clean(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  std::size_t i = 0;
  while (i < raw.size()) {
    // Whitespace-delimited segment start: URL tokens drop whole.
    std::size_t seg_end = i;
    {
      std::size_t j = i;
      while (j < raw.size()) {
        std::size_t k = j;
        char32_t cp = next_codepoint(raw, k);
        if (is_space(cp)) break;
        j = k;
      }
      seg_end = j;
    }
    std::string_view token = raw.substr(i, seg_end - i);
    if (!is_url_token(token)) {
      std::size_t p = 0;
      while (p < token.size()) {
        char32_t cp = next_codepoint(token, p);
        if (cp == U'@') {
          // Mentions: '@' followed by word characters, both removed.
          std::size_t q = p;
          bool any = false;
          while (q < token.size()) {
            std::size_t r = q;
            char32_t wc = next_codepoint(token, r);
            if (!is_word_char(wc)) break;
            q = r;
            any = true;
          }
          if (any) {
            p = q;
            continue;
          }
        }
        if (cp == 0x2019) cp = U'\'';  // curly apostrophe normalized
        if (is_letter(cp) || is_ascii_digit(cp) || cp == U'\'') {
          if (pending_space && !out.empty()) out.push_back(' ');
          pending_space = false;
          append_utf8(out, cp);
        }
      }
    }
    // Consume the whitespace run after the segment.
    i = seg_end;
    bool saw_space = false;
    while (i < raw.size()) {
      std::size_t k = i;
      char32_t cp = next_codepoint(raw, k);
      if (!is_space(cp)) break;
      i = k;
      saw_space = true;
    }
    if (saw_space) pending_space = true;
  }
  return out;
}

std::string case_fold(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    append_utf8(out, fold_codepoint(next_codepoint(text, i)));
  }
  return out;
}

TokenSeq tokenize(std::string_view text) {
  TokenSeq tokens;
  std::string current;
  std::size_t i = 0;
  auto flush = [&] {
    if (current.empty()) return;
    bool only_apostrophes = true;
    for (char c : current) {
      if (c != '\'') {
        only_apostrophes = false;
        break;
      }
    }
    if (!only_apostrophes) tokens.push_back(current);
    current.clear();
  };
  while (i < text.size()) {
    std::size_t start = i;
    char32_t cp = next_codepoint(text, i);
    if (is_space(cp)) {
      flush();
    } else {
      current.append(text.substr(start, i - start));
    }
  }
  flush();
  return tokens;
}

TokenSeq expand_slang(const TokenSeq& tokens, const ResourceSet& resources) {
  TokenSeq out;
  out.reserve(tokens.size());
  for (const auto& tok : tokens) {
    auto it = resources.slang.find(tok);
    if (it == resources.slang.end()) {
      out.push_back(tok);
      continue;
    }
    for (auto& piece : tokenize(it->second)) out.push_back(std::move(piece));
  }
  return out;
}

TokenSeq remove_stopwords(const TokenSeq& tokens, const ResourceSet& resources) {
  TokenSeq out;
  out.reserve(tokens.size());
  for (const auto& tok : tokens) {
    if (resources.stopwords.count(tok) == 0) out.push_back(tok);
  }
  return out;
}

TokenSeq pipeline(std::string_view raw, const ResourceSet& resources) {
  return remove_stopwords(
      expand_slang(tokenize(case_fold(clean(raw))), resources), resources);
}

void load_slang_file(const std::filesystem::path& path, ResourceSet& out) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open slang file: " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim_line(line);
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) +
                        ": expected 'slang<TAB>expansion'");
    }
    out.slang[case_fold(line.substr(0, tab))] = case_fold(line.substr(tab + 1));
  }
}

void load_stopword_file(const std::filesystem::path& path, ResourceSet& out) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open stopword file: " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    line = trim_line(line);
    if (line.empty()) continue;
    out.stopwords.insert(case_fold(line));
  }
}

}  // namespace envsent
