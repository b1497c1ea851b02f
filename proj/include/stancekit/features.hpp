#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "feature_vector.hpp"
#include "lexicons.hpp"
#include "normalize.hpp"
#include "pmi.hpp"
#include "stemmer.hpp"
#include "text.hpp"
#include "types.hpp"

namespace stancekit {

enum class FeatureFamily {
  unigram,
  bigram,
  dep,
  liwc_dep,
  opinion_dep,
  pos_bigram,
  pos_trigram,
  liwc,
  pmi_count,
  pmi_max,
  pmi_intopic,
};

inline constexpr std::size_t kFamilyCount = 11;

inline constexpr std::array<FeatureFamily, kFamilyCount> kAllFamilies = {
    FeatureFamily::unigram,     FeatureFamily::bigram,      FeatureFamily::dep,
    FeatureFamily::liwc_dep,    FeatureFamily::opinion_dep, FeatureFamily::pos_bigram,
    FeatureFamily::pos_trigram, FeatureFamily::liwc,        FeatureFamily::pmi_count,
    FeatureFamily::pmi_max,     FeatureFamily::pmi_intopic,
};

inline std::string_view to_string(FeatureFamily f) noexcept {
  switch (f) {
    case FeatureFamily::unigram: return "unigram";
    case FeatureFamily::bigram: return "bigram";
    case FeatureFamily::dep: return "dep";
    case FeatureFamily::liwc_dep: return "liwc_dep";
    case FeatureFamily::opinion_dep: return "opinion_dep";
    case FeatureFamily::pos_bigram: return "POS_bigram";
    case FeatureFamily::pos_trigram: return "POS_trigram";
    case FeatureFamily::liwc: return "LIWC";
    case FeatureFamily::pmi_count: return "high_pmi_n-gram_count";
    case FeatureFamily::pmi_max: return "max_pmi";
    case FeatureFamily::pmi_intopic: return "high_pmi_in_topic";
  }
  return "?";
}

/// Family names (case-insensitive), including group aliases:
/// ngram, pos, all_dep|dependencies, pmi|pmi:*.
inline std::vector<FeatureFamily> parse_families(std::string_view name) {
  const std::string n = text::to_lower(text::trim(name));
  using F = FeatureFamily;
  for (F f : kAllFamilies)
    if (n == text::to_lower(to_string(f))) return {f};
  if (n == "pos2") return {F::pos_bigram};
  if (n == "pos3") return {F::pos_trigram};
  if (n == "pmi_count") return {F::pmi_count};
  if (n == "pmi_max") return {F::pmi_max};
  if (n == "pmi_intopic") return {F::pmi_intopic};
  if (n == "ngram") return {F::unigram, F::bigram};
  if (n == "pos") return {F::pos_bigram, F::pos_trigram};
  if (n == "all_dep" || n == "dependencies") return {F::dep, F::liwc_dep, F::opinion_dep};
  if (n == "pmi" || n == "pmi:*") return {F::pmi_count, F::pmi_max, F::pmi_intopic};
  throw Error(ErrorCode::invalid_argument, "unknown feature family '" + std::string(name) + "'");
}

struct FeatureConfig {
  std::array<bool, kFamilyCount> families{};
  bool use_stemmed = false;
  bool use_unstemmed = true;
  bool strip_hashtags = false;

  bool enabled(FeatureFamily f) const noexcept {
    return families[static_cast<std::size_t>(f)];
  }
  FeatureConfig& enable(FeatureFamily f, bool on = true) {
    families[static_cast<std::size_t>(f)] = on;
    return *this;
  }
  FeatureConfig& only(const std::vector<FeatureFamily>& fs) {
    families.fill(false);
    for (auto f : fs) enable(f);
    return *this;
  }
  bool any_ngram() const noexcept {
    return enabled(FeatureFamily::unigram) || enabled(FeatureFamily::bigram);
  }
  bool any_pmi() const noexcept {
    return enabled(FeatureFamily::pmi_count) || enabled(FeatureFamily::pmi_max) ||
           enabled(FeatureFamily::pmi_intopic);
  }

  void validate() const {
    bool any = false;
    for (bool b : families) any = any || b;
    if (!any) throw Error(ErrorCode::validation, "feature config enables no family");
    if (any_ngram() && !use_stemmed && !use_unstemmed)
      throw Error(ErrorCode::validation,
                  "n-gram features need stemmed or unstemmed forms enabled");
  }

  /// Comma-separated enabled families, in canonical order.
  std::string describe() const {
    std::vector<std::string> names;
    for (FeatureFamily f : kAllFamilies)
      if (enabled(f)) names.emplace_back(to_string(f));
    return text::join(names, ",");
  }
};

inline FeatureConfig config_from_names(const std::vector<std::string>& names) {
  FeatureConfig cfg;
  for (const auto& n : names)
    for (FeatureFamily f : parse_families(n)) cfg.enable(f);
  return cfg;
}

/// Lexicons and models the extractors read. Null members are simply absent.
struct FeatureResources {
  const CategoryLexicon* category = nullptr;
  const ScoredLexicon* scored = nullptr;
  const PolarityLexicon* polarity = nullptr;
  const PmiModel* pmi = nullptr;
};

namespace detail {

inline const std::string& norm_at(const std::vector<Token>& toks, int index) {
  return toks[static_cast<std::size_t>(index - 1)].normalized;
}

inline bool real_arc(const DepArc& a, std::size_t n) {
  return a.head >= 1 && static_cast<std::size_t>(a.head) <= n && a.child >= 1 &&
         static_cast<std::size_t>(a.child) <= n;
}

inline std::string signed_score(int s) {
  return (s > 0 ? "+" : "") + std::to_string(s);
}

}  // namespace detail

/// Unigram/bigram counts over normalized tokens: "u:"/"b:" unstemmed,
/// "us:"/"bs:" stemmed; bigram parts join with '_'.
inline FeatureVector ngram_features(const ParsedTweet& parsed, const FeatureConfig& cfg) {
  FeatureVector fv;
  const auto& toks = parsed.tokens;
  std::vector<std::string> stems;
  if (cfg.use_stemmed)
    for (const auto& t : toks) stems.push_back(stem(t.normalized));
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (cfg.enabled(FeatureFamily::unigram)) {
      if (cfg.use_unstemmed) fv.add("u:" + toks[i].normalized);
      if (cfg.use_stemmed) fv.add("us:" + stems[i]);
    }
    if (cfg.enabled(FeatureFamily::bigram) && i + 1 < toks.size()) {
      if (cfg.use_unstemmed) fv.add("b:" + toks[i].normalized + "_" + toks[i + 1].normalized);
      if (cfg.use_stemmed) fv.add("bs:" + stems[i] + "_" + stems[i + 1]);
    }
  }
  return fv;
}

inline FeatureVector pos_ngram_features(const ParsedTweet& parsed, bool bigrams = true,
                                        bool trigrams = true) {
  FeatureVector fv;
  const auto& t = parsed.tokens;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (bigrams && i + 1 < t.size()) fv.add("pos2:" + t[i].pos + "_" + t[i + 1].pos);
    if (trigrams && i + 2 < t.size())
      fv.add("pos3:" + t[i].pos + "_" + t[i + 1].pos + "_" + t[i + 2].pos);
  }
  return fv;
}

inline FeatureVector category_count_features(const ParsedTweet& parsed,
                                             const CategoryLexicon& lex) {
  FeatureVector fv;
  for (const auto& t : parsed.tokens)
    for (const auto& c : lex.lookup(t.normalized)) fv.add("liwc:" + c);
  return fv;
}

/// "dep:<head>_<child>" per arc, "dep:ROOT_<child>" for the root, excluded
/// (head -1) tokens skipped.
inline FeatureVector dep_features(const ParsedTweet& parsed) {
  FeatureVector fv;
  const auto& toks = parsed.tokens;
  for (const auto& a : parsed.arcs) {
    if (a.child < 1 || static_cast<std::size_t>(a.child) > toks.size()) continue;
    if (a.head == kRootHead) {
      fv.add("dep:ROOT_" + detail::norm_at(toks, a.child));
    } else if (detail::real_arc(a, toks.size())) {
      fv.add("dep:" + detail::norm_at(toks, a.head) + "_" + detail::norm_at(toks, a.child));
    }
  }
  return fv;
}

/// One element of each arc stays lexical, the other becomes each of its
/// categories: "ldep:<head>_[K]" and "ldep:[K]_<child>".
inline FeatureVector liwc_dep_features(const ParsedTweet& parsed, const CategoryLexicon& lex) {
  FeatureVector fv;
  const auto& toks = parsed.tokens;
  for (const auto& a : parsed.arcs) {
    if (!detail::real_arc(a, toks.size())) continue;
    const auto& h = detail::norm_at(toks, a.head);
    const auto& c = detail::norm_at(toks, a.child);
    for (const auto& k : lex.lookup(c)) fv.add("ldep:" + h + "_[" + k + "]");
    for (const auto& k : lex.lookup(h)) fv.add("ldep:[" + k + "]_" + c);
  }
  return fv;
}

/// Like liwc_dep but the generalized element becomes its negation-adjusted
/// combined sentiment score: "odep:<head>_+2", "odep:-1_<child>".
inline FeatureVector opinion_dep_features(const ParsedTweet& parsed, const ScoredLexicon& scored,
                                          const PolarityLexicon& polarity,
                                          const CategoryLexicon& catlex) {
  FeatureVector fv;
  const auto& toks = parsed.tokens;
  auto score_at = [&](int index) {
    return apply_negation(combined_sentiment(detail::norm_at(toks, index), scored, polarity),
                          index, toks, catlex);
  };
  for (const auto& a : parsed.arcs) {
    if (!detail::real_arc(a, toks.size())) continue;
    const int sc = score_at(a.child);
    const int sh = score_at(a.head);
    if (sc != 0)
      fv.add("odep:" + detail::norm_at(toks, a.head) + "_" + detail::signed_score(sc));
    if (sh != 0)
      fv.add("odep:" + detail::signed_score(sh) + "_" + detail::norm_at(toks, a.child));
  }
  return fv;
}

inline std::vector<std::string> normalized_tokens(const ParsedTweet& parsed) {
  std::vector<std::string> out;
  out.reserve(parsed.tokens.size());
  for (const auto& t : parsed.tokens) out.push_back(t.normalized);
  return out;
}

/// Name of the 0.1-wide bin of [-1, 1] holding v, e.g. "(0.9,1.0]". The first
/// bin also holds -1.
inline std::string pmi_bin(double v) {
  int k = static_cast<int>(std::ceil(v * 10.0 - 1e-9));
  k = std::clamp(k, -9, 10);
  char buf[32];
  std::snprintf(buf, sizeof buf, "(%.1f,%.1f]", (k - 1) / 10.0, k / 10.0);
  return buf;
}

struct PmiFeatureSelection {
  bool count = true;
  bool max = true;
  bool intopic = true;
};

/// "pmi:count" distinct pooled n-grams; "pmi:max:<bin>" indicator of the
/// highest nPMI among n-grams in the table; "pmi:intopic" when that argmax
/// n-gram is pooled.
inline FeatureVector pmi_features(const ParsedTweet& parsed, const PmiModel& model,
                                  PmiFeatureSelection which = {}) {
  FeatureVector fv;
  std::size_t pooled = 0;
  const std::string* best = nullptr;
  double best_v = 0;
  const auto grams = distinct_ngrams(normalized_tokens(parsed));
  for (const auto& g : grams) {
    if (model.in_pool(g)) ++pooled;
    if (const double* v = model.find(g); v && (!best || *v > best_v)) {
      best = &g;
      best_v = *v;
    }
  }
  if (which.count) fv.add("pmi:count", static_cast<double>(pooled));
  if (best) {
    if (which.max) fv.add("pmi:max:" + pmi_bin(best_v));
    if (which.intopic && model.in_pool(*best)) fv.add("pmi:intopic");
  }
  return fv;
}

/// Throws if an enabled family lacks the resource it reads.
inline void check_resources(const FeatureConfig& cfg, const FeatureResources& res) {
  auto need = [&](FeatureFamily f, const void* r, const char* what) {
    if (cfg.enabled(f) && !r)
      throw Error(ErrorCode::missing_resource, "feature family '" + std::string(to_string(f)) +
                                                   "' needs " + what);
  };
  need(FeatureFamily::liwc, res.category, "a category lexicon");
  need(FeatureFamily::liwc_dep, res.category, "a category lexicon");
  need(FeatureFamily::opinion_dep, res.scored, "a scored lexicon");
  need(FeatureFamily::opinion_dep, res.polarity, "a polarity lexicon");
  need(FeatureFamily::opinion_dep, res.category, "a category lexicon (negations)");
  need(FeatureFamily::pmi_count, res.pmi, "a PMI model");
  need(FeatureFamily::pmi_max, res.pmi, "a PMI model");
  need(FeatureFamily::pmi_intopic, res.pmi, "a PMI model");
}

/// Union of every enabled family; hashtags are stripped first when configured.
inline FeatureVector featurize(const ParsedTweet& input, const FeatureConfig& cfg,
                               const FeatureResources& res) {
  cfg.validate();
  check_resources(cfg, res);
  const ParsedTweet stripped = cfg.strip_hashtags ? strip_hashtags(input) : ParsedTweet{};
  const ParsedTweet& parsed = cfg.strip_hashtags ? stripped : input;
  using F = FeatureFamily;

  FeatureVector fv;
  if (cfg.any_ngram()) fv.merge(ngram_features(parsed, cfg));
  if (cfg.enabled(F::pos_bigram) || cfg.enabled(F::pos_trigram))
    fv.merge(pos_ngram_features(parsed, cfg.enabled(F::pos_bigram), cfg.enabled(F::pos_trigram)));
  if (cfg.enabled(F::liwc)) fv.merge(category_count_features(parsed, *res.category));
  if (cfg.enabled(F::dep)) fv.merge(dep_features(parsed));
  if (cfg.enabled(F::liwc_dep)) fv.merge(liwc_dep_features(parsed, *res.category));
  if (cfg.enabled(F::opinion_dep))
    fv.merge(opinion_dep_features(parsed, *res.scored, *res.polarity, *res.category));
  if (cfg.any_pmi())
    fv.merge(pmi_features(parsed, *res.pmi,
                          {cfg.enabled(F::pmi_count), cfg.enabled(F::pmi_max),
                           cfg.enabled(F::pmi_intopic)}));
  return fv;
}

}  // namespace stancekit
