#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "error.hpp"
#include "text.hpp"
#include "types.hpp"

namespace stancekit {

using WordSet = std::unordered_set<std::string>;

struct RawToken {
  std::string text;
  TokenClass cls = TokenClass::word;

  friend bool operator==(const RawToken&, const RawToken&) = default;
};

/// Maps a lowercase out-of-vocabulary variant to its canonical word.
class NormalizationLexicon {
 public:
  NormalizationLexicon() = default;

  void add(std::string_view variant, std::string_view canonical) {
    if (variant.empty() || canonical.empty())
      throw Error(ErrorCode::validation,
                  "normalization lexicon entries must be non-empty");
    entries_.insert_or_assign(text::to_lower(variant), std::string(canonical));
  }

  const std::string* find(const std::string& lowercase_variant) const {
    auto it = entries_.find(lowercase_variant);
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::unordered_map<std::string, std::string> entries_;
};

namespace detail {

inline bool is_detachable_lead(char c) noexcept {
  return text::is_ascii_punct(c) && c != '#' && c != '@';
}

inline bool is_num_shaped(std::string_view s) noexcept {
  bool digit = false;
  for (char c : s) {
    if (text::is_ascii_digit(c))
      digit = true;
    else if (c != '.' && c != ',' && c != '%')
      return false;
  }
  return digit;
}

inline bool is_all_punct(std::string_view s) noexcept {
  if (s.empty()) return false;
  for (char c : s)
    if (!text::is_ascii_punct(c)) return false;
  return true;
}

inline bool starts_url(std::string_view chunk) {
  const std::string low = text::to_lower(chunk.substr(0, 8));
  return low.starts_with("http://") || low.starts_with("https://") ||
         low.starts_with("http:") || low.starts_with("www.");
}

// Length of the trailing punctuation run that gets detached. A '%' directly
// after a digit stays attached so "50%" remains one NUM token.
inline std::size_t trailing_punct(std::string_view core, std::size_t keep) {
  std::size_t end = core.size();
  while (end > keep && text::is_ascii_punct(core[end - 1])) {
    if (core[end - 1] == '%' && end >= 2 && text::is_ascii_digit(core[end - 2]))
      break;
    --end;
  }
  return core.size() - end;
}

inline std::size_t utf8_length(unsigned char lead) noexcept {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xe) return 3;
  if ((lead >> 3) == 0x1e) return 4;
  return 1;
}

}  // namespace detail

/// Token class of an already-separated token.
inline TokenClass classify_token(std::string_view tok) {
  if (tok.empty()) return TokenClass::word;
  if (tok.front() == '#') return TokenClass::hashtag;
  if (tok.front() == '@' && tok.size() > 1) return TokenClass::mention;
  if (detail::starts_url(tok)) return TokenClass::url;
  if (detail::is_num_shaped(tok)) return TokenClass::num;
  if (detail::is_all_punct(tok)) return TokenClass::punct;
  return TokenClass::word;
}

/// Whitespace split, then leading/trailing punctuation is detached from each
/// chunk. A '#' inside a chunk starts a new hashtag token ("love#prolife").
inline std::vector<RawToken> tokenize(std::string_view input) {
  std::vector<RawToken> out;
  auto emit = [&out](std::string_view s) {
    if (!s.empty()) out.push_back({std::string(s), classify_token(s)});
  };

  for (std::string_view chunk : text::split_whitespace(input)) {
    if (detail::starts_url(chunk)) {
      std::size_t end = chunk.size();
      while (end > 0 && std::string_view(".,;:!?)\"'").find(chunk[end - 1]) !=
                            std::string_view::npos)
        --end;
      emit(chunk.substr(0, end));
      emit(chunk.substr(end));
      continue;
    }

    // Split before every '#' that follows a non-'#' character.
    std::vector<std::string_view> pieces;
    std::size_t start = 0;
    for (std::size_t i = 1; i < chunk.size(); ++i) {
      if (chunk[i] == '#' && chunk[i - 1] != '#') {
        pieces.push_back(chunk.substr(start, i - start));
        start = i;
      }
    }
    pieces.push_back(chunk.substr(start));

    for (std::string_view piece : pieces) {
      std::size_t lead = 0;
      while (lead < piece.size() && detail::is_detachable_lead(piece[lead]))
        ++lead;
      emit(piece.substr(0, lead));
      std::string_view core = piece.substr(lead);
      if (core.empty()) continue;

      std::size_t keep = 0;  // marker characters that trailing detach must not eat
      if (core.front() == '#' || core.front() == '@') {
        while (keep < core.size() && core[keep] == core.front()) ++keep;
      }
      const std::size_t trail = detail::trailing_punct(core, keep);
      emit(core.substr(0, core.size() - trail));
      emit(core.substr(core.size() - trail));
    }
  }
  return out;
}

/// Every maximal run of three or more identical characters (UTF-8 code points)
/// shrinks to exactly two.
inline std::string squeeze_repeats(std::string_view token) {
  std::string out;
  out.reserve(token.size());
  std::string_view prev;
  int run = 0;
  std::size_t i = 0;
  while (i < token.size()) {
    std::size_t len =
        detail::utf8_length(static_cast<unsigned char>(token[i]));
    if (i + len > token.size()) len = token.size() - i;
    std::string_view cp = token.substr(i, len);
    run = (cp == prev) ? run + 1 : 1;
    if (run <= 2) out.append(cp);
    prev = cp;
    i += len;
  }
  return out;
}

/// Dictionary words pass through; other WORD tokens are replaced by their
/// lexicon variant when one exists. Non-WORD tokens never change.
inline std::string normalize_token(std::string_view token,
                                   const WordSet& dictionary,
                                   const NormalizationLexicon& lexicon) {
  if (classify_token(token) != TokenClass::word) return std::string(token);
  const std::string low = text::to_lower(token);
  if (dictionary.contains(low)) return std::string(token);
  if (const std::string* canonical = lexicon.find(low)) return *canonical;
  return std::string(token);
}

/// The full per-token pipeline: lowercase, squeeze repeats, lexicon lookup.
/// URLs, mentions and numbers are only lowercased; squeezing would corrupt them.
class Normalizer {
 public:
  Normalizer() = default;
  Normalizer(WordSet dictionary, NormalizationLexicon lexicon)
      : dictionary_(std::move(dictionary)), lexicon_(std::move(lexicon)) {}

  std::string normalize(const RawToken& tok) const {
    std::string low = text::to_lower(tok.text);
    switch (tok.cls) {
      case TokenClass::url:
      case TokenClass::mention:
      case TokenClass::num:
        return low;
      case TokenClass::hashtag:
      case TokenClass::punct:
        return squeeze_repeats(low);
      case TokenClass::word:
        break;
    }
    return normalize_token(squeeze_repeats(low), dictionary_, lexicon_);
  }

  const WordSet& dictionary() const noexcept { return dictionary_; }
  const NormalizationLexicon& lexicon() const noexcept { return lexicon_; }

 private:
  WordSet dictionary_;
  NormalizationLexicon lexicon_;
};

/// POS = token class, arcs chain left to right: token 1 is the root and every
/// later token hangs off its predecessor.
inline Parse fallback_parse(const std::vector<RawToken>& raw,
                            const Normalizer& normalizer = {}) {
  Parse p;
  p.tokens.reserve(raw.size());
  p.arcs.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const int index = static_cast<int>(i) + 1;
    p.tokens.push_back({index, raw[i].text, normalizer.normalize(raw[i]),
                        std::string(to_string(raw[i].cls))});
    p.arcs.push_back({index - 1, index});
  }
  return p;
}

inline ParsedTweet fallback_parsed_tweet(const Tweet& tweet,
                                         const Normalizer& normalizer = {}) {
  Parse p = fallback_parse(tokenize(tweet.text), normalizer);
  return {tweet, std::move(p.tokens), std::move(p.arcs), true};
}

/// HASHTAG under the fallback tagset, '#' under the Twitter POS tagset, or any
/// surface starting with '#'.
inline bool is_hashtag_token(const Token& t) noexcept {
  return t.pos == "HASHTAG" || t.pos == "#" ||
         (!t.surface.empty() && t.surface.front() == '#');
}

/// Removes hashtag tokens, recompacts indices from 1, drops arcs touching a
/// removed token and renumbers the rest.
inline ParsedTweet strip_hashtags(const ParsedTweet& parsed) {
  ParsedTweet out;
  out.tweet = parsed.tweet;
  out.fallback = parsed.fallback;
  std::vector<int> remap(parsed.tokens.size() + 1, 0);
  for (const Token& t : parsed.tokens) {
    if (is_hashtag_token(t)) continue;
    Token kept = t;
    kept.index = static_cast<int>(out.tokens.size()) + 1;
    if (t.index >= 1 && static_cast<std::size_t>(t.index) < remap.size())
      remap[static_cast<std::size_t>(t.index)] = kept.index;
    out.tokens.push_back(std::move(kept));
  }
  for (const DepArc& a : parsed.arcs) {
    const int child = remap[static_cast<std::size_t>(a.child)];
    if (child == 0) continue;
    int head = a.head;
    if (head >= 1) {
      head = remap[static_cast<std::size_t>(head)];
      if (head == 0) continue;
    }
    out.arcs.push_back({head, child});
  }
  return out;
}

inline WordSet load_word_set(const std::filesystem::path& path) {
  WordSet words;
  for (const std::string& line : text::read_lines(path)) {
    std::string_view w = text::trim(line);
    if (w.empty()) continue;
    words.insert(text::to_lower(w));
  }
  return words;
}

/// TSV variant<TAB>canonical; '#' lines are comments.
inline NormalizationLexicon load_normalization_lexicon(
    const std::filesystem::path& path) {
  NormalizationLexicon lex;
  const auto lines = text::read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = text::trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    auto fields = text::split(line, '\t');
    if (fields.size() != 2 || text::trim(fields[0]).empty() ||
        text::trim(fields[1]).empty())
      throw Error(ErrorCode::parse, path.string() + ":" +
                                        std::to_string(i + 1) +
                                        ": expected variant<TAB>canonical");
    lex.add(text::trim(fields[0]), text::trim(fields[1]));
  }
  return lex;
}

}  // namespace stancekit
