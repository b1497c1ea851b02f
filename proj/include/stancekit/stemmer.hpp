#pragma once

#include <string>
#include <string_view>

namespace stancekit {

// Porter suffix-stripping stemmer, following the reference C implementation
// (words of one or two letters are left alone, "bli"->"ble", "logi"->"log").
namespace porter {

class Word {
 public:
  explicit Word(std::string w) : w_(std::move(w)) {}

  const std::string& str() const noexcept { return w_; }

  // 'y' is a consonant at the start or after a vowel, a vowel after a consonant.
  bool consonant(std::size_t i) const noexcept {
    bool flip = false;
    while (w_[i] == 'y') {
      if (i == 0) return !flip;
      flip = !flip;
      --i;
    }
    const char c = w_[i];
    const bool cons = c != 'a' && c != 'e' && c != 'i' && c != 'o' && c != 'u';
    return cons != flip;
  }

  // m() of the first `len` characters: number of VC sequences.
  int measure(std::size_t len) const noexcept {
    int m = 0;
    bool prev_vowel = false;
    for (std::size_t i = 0; i < len; ++i) {
      const bool c = consonant(i);
      if (c && prev_vowel) ++m;
      prev_vowel = !c;
    }
    return m;
  }

  bool has_vowel(std::size_t len) const noexcept {
    for (std::size_t i = 0; i < len; ++i)
      if (!consonant(i)) return true;
    return false;
  }

  bool double_consonant(std::size_t len) const noexcept {
    return len >= 2 && w_[len - 1] == w_[len - 2] && consonant(len - 1);
  }

  // *o: ends consonant-vowel-consonant, the last not w, x or y.
  bool cvc(std::size_t len) const noexcept {
    if (len < 3) return false;
    if (!consonant(len - 3) || consonant(len - 2) || !consonant(len - 1)) return false;
    const char c = w_[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends(std::string_view suffix) const noexcept {
    return std::string_view(w_).ends_with(suffix);
  }

  std::size_t stem_len(std::string_view suffix) const noexcept {
    return w_.size() - suffix.size();
  }

  void replace_suffix(std::string_view suffix, std::string_view with) {
    w_.replace(stem_len(suffix), suffix.size(), with);
  }

  void chop(std::size_t n) { w_.resize(w_.size() - n); }
  void append(std::string_view s) { w_.append(s); }
  std::size_t size() const noexcept { return w_.size(); }
  char back() const noexcept { return w_.back(); }

 private:
  std::string w_;
};

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
};

// First rule whose suffix matches decides; it fires only if the remaining stem
// has measure > min_measure.
template <std::size_t N>
inline void apply_first(Word& w, const Rule (&rules)[N], int min_measure) {
  for (const Rule& r : rules) {
    if (!w.ends(r.suffix)) continue;
    if (w.measure(w.stem_len(r.suffix)) > min_measure)
      w.replace_suffix(r.suffix, r.replacement);
    return;
  }
}

inline void step1a(Word& w) {
  if (w.ends("sses")) w.replace_suffix("sses", "ss");
  else if (w.ends("ies")) w.replace_suffix("ies", "i");
  else if (w.ends("ss")) return;
  else if (w.ends("s")) w.chop(1);
}

inline void step1b(Word& w) {
  if (w.ends("eed")) {
    if (w.measure(w.stem_len("eed")) > 0) w.chop(1);
    return;
  }
  std::string_view suffix;
  if (w.ends("ed") && w.has_vowel(w.stem_len("ed"))) suffix = "ed";
  else if (w.ends("ing") && w.has_vowel(w.stem_len("ing"))) suffix = "ing";
  else return;
  w.chop(suffix.size());

  if (w.ends("at") || w.ends("bl") || w.ends("iz")) {
    w.append("e");
  } else if (w.double_consonant(w.size())) {
    const char c = w.back();
    if (c != 'l' && c != 's' && c != 'z') w.chop(1);
  } else if (w.measure(w.size()) == 1 && w.cvc(w.size())) {
    w.append("e");
  }
}

inline void step1c(Word& w) {
  if (w.ends("y") && w.has_vowel(w.size() - 1)) w.replace_suffix("y", "i");
}

inline void step2(Word& w) {
  static constexpr Rule rules[] = {
      {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
      {"izer", "ize"},    {"bli", "ble"},     {"alli", "al"},   {"entli", "ent"},
      {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
      {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
      {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"}, {"biliti", "ble"},
      {"logi", "log"},
  };
  apply_first(w, rules, 0);
}

inline void step3(Word& w) {
  static constexpr Rule rules[] = {
      {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
      {"ical", "ic"},  {"ful", ""},   {"ness", ""},
  };
  apply_first(w, rules, 0);
}

inline void step4(Word& w) {
  static constexpr std::string_view suffixes[] = {
      "al",  "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement", "ment",
      "ent", "ion",  "ou",   "ism", "ate", "iti",  "ous",  "ive", "ize",
  };
  for (std::string_view s : suffixes) {
    if (!w.ends(s)) continue;
    const std::size_t len = w.stem_len(s);
    bool ok = w.measure(len) > 1;
    if (s == "ion") ok = ok && len > 0 && (w.str()[len - 1] == 's' || w.str()[len - 1] == 't');
    if (ok) w.chop(s.size());
    return;
  }
}

inline void step5(Word& w) {
  if (w.ends("e")) {
    const std::size_t len = w.size() - 1;
    const int m = w.measure(len);
    if (m > 1 || (m == 1 && !w.cvc(len))) w.chop(1);
  }
  if (w.ends("ll") && w.measure(w.size() - 1) > 1) w.chop(1);
}

}  // namespace porter

inline bool stemmable(std::string_view word) noexcept {
  for (char c : word)
    if (c < 'a' || c > 'z') return false;
  return true;
}

/// Porter stem of a lowercase word. Tokens with characters outside a-z
/// (hashtags, numbers, punctuation) come back unchanged.
inline std::string stem(std::string_view word) {
  if (word.size() <= 2 || !stemmable(word)) return std::string(word);
  porter::Word w{std::string(word)};
  porter::step1a(w);
  porter::step1b(w);
  porter::step1c(w);
  porter::step2(w);
  porter::step3(w);
  porter::step4(w);
  porter::step5(w);
  return w.str();
}

}  // namespace stancekit
