#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace stancekit {

enum class StanceLabel { favor = 0, against = 1, none = 2 };

inline constexpr std::array<StanceLabel, 3> kAllLabels = {
    StanceLabel::favor, StanceLabel::against, StanceLabel::none};

inline constexpr std::size_t label_index(StanceLabel l) noexcept {
  return static_cast<std::size_t>(l);
}

inline std::string_view to_string(StanceLabel l) noexcept {
  switch (l) {
    case StanceLabel::favor: return "FAVOR";
    case StanceLabel::against: return "AGAINST";
    case StanceLabel::none: return "NONE";
  }
  return "NONE";
}

inline std::optional<StanceLabel> parse_label(std::string_view s) noexcept {
  if (s == "FAVOR") return StanceLabel::favor;
  if (s == "AGAINST") return StanceLabel::against;
  if (s == "NONE") return StanceLabel::none;
  return std::nullopt;
}

enum class TweetSource { official, harvested, random_pool };

inline std::string_view to_string(TweetSource s) noexcept {
  switch (s) {
    case TweetSource::official: return "official";
    case TweetSource::harvested: return "harvested";
    case TweetSource::random_pool: return "random_pool";
  }
  return "harvested";
}

inline std::optional<TweetSource> parse_source(std::string_view s) noexcept {
  if (s == "official") return TweetSource::official;
  if (s == "harvested") return TweetSource::harvested;
  if (s == "random_pool") return TweetSource::random_pool;
  return std::nullopt;
}

struct Tweet {
  std::string id;
  std::string text;
  std::string topic;
  std::optional<StanceLabel> gold_stance;
  TweetSource source = TweetSource::harvested;

  friend bool operator==(const Tweet&, const Tweet&) = default;
};

// Fallback tagset; also the token classes produced by the tokenizer.
enum class TokenClass { hashtag, mention, url, num, punct, word };

inline std::string_view to_string(TokenClass c) noexcept {
  switch (c) {
    case TokenClass::hashtag: return "HASHTAG";
    case TokenClass::mention: return "MENTION";
    case TokenClass::url: return "URL";
    case TokenClass::num: return "NUM";
    case TokenClass::punct: return "PUNCT";
    case TokenClass::word: return "WORD";
  }
  return "WORD";
}

struct Token {
  int index = 0;  // 1-based
  std::string surface;
  std::string normalized;
  std::string pos;

  friend bool operator==(const Token&, const Token&) = default;
};

inline constexpr int kRootHead = 0;
inline constexpr int kExcludedHead = -1;

struct DepArc {
  int head = kRootHead;
  int child = 1;

  friend bool operator==(const DepArc&, const DepArc&) = default;
};

struct Parse {
  std::vector<Token> tokens;
  std::vector<DepArc> arcs;

  friend bool operator==(const Parse&, const Parse&) = default;
};

struct ParsedTweet {
  Tweet tweet;
  std::vector<Token> tokens;
  std::vector<DepArc> arcs;
  bool fallback = false;  // parse came from the internal fallback, not a file

  friend bool operator==(const ParsedTweet&, const ParsedTweet&) = default;
};

/// Throws unless indices run 1..n, every arc references valid tokens, heads
/// differ from children and no child carries two arcs.
inline void validate_parse(const std::vector<Token>& tokens,
                           const std::vector<DepArc>& arcs,
                           std::string_view where) {
  const int n = static_cast<int>(tokens.size());
  for (int i = 0; i < n; ++i) {
    if (tokens[i].index != i + 1)
      throw Error(ErrorCode::validation,
                  std::string(where) + ": token indices not contiguous from 1");
    if (tokens[i].normalized.empty())
      throw Error(ErrorCode::validation,
                  std::string(where) + ": empty normalized form at token " +
                      std::to_string(i + 1));
  }
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (const auto& a : arcs) {
    if (a.child < 1 || a.child > n)
      throw Error(ErrorCode::validation, std::string(where) + ": arc child " +
                                             std::to_string(a.child) +
                                             " out of range");
    if (a.head < kExcludedHead || a.head > n)
      throw Error(ErrorCode::validation, std::string(where) + ": arc head " +
                                             std::to_string(a.head) +
                                             " out of range");
    if (a.head == a.child)
      throw Error(ErrorCode::validation, std::string(where) +
                                             ": token " + std::to_string(a.child) +
                                             " is its own head");
    if (seen[static_cast<std::size_t>(a.child)])
      throw Error(ErrorCode::validation, std::string(where) +
                                             ": two arcs for child " +
                                             std::to_string(a.child));
    seen[static_cast<std::size_t>(a.child)] = true;
  }
}

}  // namespace stancekit
