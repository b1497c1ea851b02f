#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "error.hpp"
#include "normalize.hpp"
#include "text.hpp"
#include "types.hpp"

namespace stancekit {

inline constexpr const char* kNegateCategory = "negate";

/// LIWC-style dictionary: exact words plus trailing-wildcard prefixes, each
/// mapped to one or more categories.
class CategoryLexicon {
 public:
  CategoryLexicon() = default;
  explicit CategoryLexicon(std::vector<std::string> categories) {
    for (auto& c : categories) declare(std::move(c));
  }

  void declare(std::string category) {
    if (category.empty())
      throw Error(ErrorCode::validation, "empty category name");
    if (known_.insert(category).second) categories_.push_back(std::move(category));
  }

  /// `entry` ending in '*' is a prefix entry; the marker is not stored.
  void add(std::string_view entry, const std::vector<std::string>& cats) {
    std::string key = text::to_lower(entry);
    bool prefix = false;
    if (!key.empty() && key.back() == '*') {
      key.pop_back();
      prefix = true;
    }
    if (key.empty())
      throw Error(ErrorCode::validation, "empty category lexicon entry");
    auto& target = prefix ? prefixes_[key] : exact_[key];
    for (const auto& c : cats) {
      if (!known_.contains(c))
        throw Error(ErrorCode::validation,
                    "entry '" + std::string(entry) + "' uses undeclared category '" + c + "'");
      target.insert(c);
    }
    if (prefix) max_prefix_ = std::max(max_prefix_, key.size());
  }

  /// Exact-entry categories united with those of the longest matching prefix.
  std::set<std::string> lookup(std::string_view word) const {
    std::set<std::string> out;
    if (auto it = exact_.find(std::string(word)); it != exact_.end())
      out.insert(it->second.begin(), it->second.end());
    for (std::size_t len = std::min(word.size(), max_prefix_); len > 0; --len) {
      auto it = prefixes_.find(std::string(word.substr(0, len)));
      if (it != prefixes_.end()) {
        out.insert(it->second.begin(), it->second.end());
        break;
      }
    }
    return out;
  }

  bool has(std::string_view word, const std::string& category) const {
    return lookup(word).contains(category);
  }

  const std::vector<std::string>& categories() const noexcept { return categories_; }
  bool empty() const noexcept { return exact_.empty() && prefixes_.empty(); }

 private:
  std::vector<std::string> categories_;
  std::unordered_set<std::string> known_;
  std::unordered_map<std::string, std::set<std::string>> exact_;
  std::unordered_map<std::string, std::set<std::string>> prefixes_;
  std::size_t max_prefix_ = 0;
};

inline std::set<std::string> lookup_categories(std::string_view word,
                                               const CategoryLexicon& lex) {
  return lex.lookup(word);
}

/// Header line of comma-separated categories, then "entry<TAB>cat1,cat2" lines.
/// Blank lines and lines starting with "//" are ignored.
inline CategoryLexicon load_category_lexicon(const std::filesystem::path& path) {
  CategoryLexicon lex;
  bool header = false;
  const auto lines = text::read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = text::trim(lines[i]);
    if (line.empty() || line.starts_with("//")) continue;
    const std::string where = path.string() + ":" + std::to_string(i + 1);
    if (!header) {
      for (auto c : text::split(line, ',')) {
        c = text::trim(c);
        if (c.empty()) throw Error(ErrorCode::parse, where + ": empty category in header");
        lex.declare(std::string(c));
      }
      header = true;
      continue;
    }
    const auto fields = text::split(line, '\t');
    if (fields.size() != 2)
      throw Error(ErrorCode::parse, where + ": expected entry<TAB>categories");
    std::vector<std::string> cats;
    for (auto c : text::split(fields[1], ',')) {
      c = text::trim(c);
      if (!c.empty()) cats.emplace_back(c);
    }
    if (cats.empty()) throw Error(ErrorCode::parse, where + ": entry without categories");
    try {
      lex.add(text::trim(fields[0]), cats);
    } catch (const Error& e) {
      throw Error(ErrorCode::parse, where + ": " + e.what());
    }
  }
  if (!header) throw Error(ErrorCode::parse, path.string() + ": missing category header");
  return lex;
}

/// Integer valence in [-5, 5] per word (AFINN layout).
class ScoredLexicon {
 public:
  void add(std::string_view word, int score) {
    if (score < -5 || score > 5)
      throw Error(ErrorCode::validation,
                  "score for '" + std::string(word) + "' outside [-5, 5]");
    scores_.insert_or_assign(text::to_lower(word), score);
  }
  std::optional<int> find(const std::string& word) const {
    auto it = scores_.find(word);
    if (it == scores_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t size() const noexcept { return scores_.size(); }

 private:
  std::unordered_map<std::string, int> scores_;
};

/// word<TAB>integer. Multi-word entries are skipped.
inline ScoredLexicon load_scored_lexicon(const std::filesystem::path& path) {
  ScoredLexicon lex;
  const auto lines = text::read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = text::trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const std::string where = path.string() + ":" + std::to_string(i + 1);
    const auto fields = text::split(line, '\t');
    int score = 0;
    if (fields.size() != 2 || !text::parse_int(text::trim(fields[1]), score))
      throw Error(ErrorCode::parse, where + ": expected word<TAB>integer");
    const auto word = text::trim(fields[0]);
    if (word.empty()) throw Error(ErrorCode::parse, where + ": empty word");
    if (word.find(' ') != std::string_view::npos) continue;
    try {
      lex.add(word, score);
    } catch (const Error& e) {
      throw Error(ErrorCode::parse, where + ": " + e.what());
    }
  }
  return lex;
}

class PolarityLexicon {
 public:
  PolarityLexicon() = default;
  /// Words listed on both sides contradict themselves and are dropped from both.
  PolarityLexicon(WordSet positive, WordSet negative) {
    for (const auto& w : positive)
      if (!negative.contains(w)) positive_.insert(w);
    for (const auto& w : negative)
      if (!positive.contains(w)) negative_.insert(w);
  }

  bool positive(const std::string& w) const { return positive_.contains(w); }
  bool negative(const std::string& w) const { return negative_.contains(w); }
  std::size_t size() const noexcept { return positive_.size() + negative_.size(); }

 private:
  WordSet positive_;
  WordSet negative_;
};

/// One word per line; ';' lines are comments (opinion-lexicon layout).
inline WordSet load_polarity_words(const std::filesystem::path& path) {
  WordSet words;
  for (const auto& raw : text::read_lines(path)) {
    std::string_view w = text::trim(raw);
    if (w.empty() || w.front() == ';') continue;
    words.insert(text::to_lower(w));
  }
  return words;
}

inline PolarityLexicon load_polarity_lexicon(const std::filesystem::path& positive,
                                             const std::filesystem::path& negative) {
  return {load_polarity_words(positive), load_polarity_words(negative)};
}

/// Agreement between the scored and polarity lexicons, in {-2..2}: both agree
/// gives +-2, only one lists the word gives +-1, contradiction or neither gives 0.
/// A scored value of 0 counts as unlisted.
inline int combined_sentiment(const std::string& word, const ScoredLexicon& scored,
                              const PolarityLexicon& polarity) {
  int a = 0;
  if (auto s = scored.find(word)) a = (*s > 0) - (*s < 0);
  int b = 0;
  if (polarity.positive(word))
    b = 1;
  else if (polarity.negative(word))
    b = -1;
  if (a != 0 && b != 0) return a == b ? 2 * a : 0;
  return a + b;
}

/// Inverts `score` when either of the two tokens before the 1-based `position`
/// is in the "negate" category.
inline int apply_negation(int score, int position, const std::vector<Token>& tokens,
                          const CategoryLexicon& lex) {
  if (score == 0) return 0;
  for (int back = 1; back <= 2; ++back) {
    const int idx = position - back;  // 1-based
    if (idx < 1 || idx > static_cast<int>(tokens.size())) continue;
    if (lex.has(tokens[static_cast<std::size_t>(idx - 1)].normalized, kNegateCategory))
      return -score;
  }
  return score;
}

}  // namespace stancekit
