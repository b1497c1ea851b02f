#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "error.hpp"
#include "normalize.hpp"
#include "random.hpp"
#include "text.hpp"
#include "types.hpp"

namespace stancekit {

/// A conjunction of terms that, when all present, labels a tweet for `topic`.
/// "#x" terms must occur as hashtags; bare terms as whole word tokens or as a
/// hashtag body.
struct SeedRule {
  std::string topic;
  StanceLabel stance = StanceLabel::favor;
  std::vector<std::string> terms;

  std::string describe() const {
    return topic + "/" + std::string(to_string(stance)) + ":" + text::join(terms, "^");
  }
};

class SeedRuleSet {
 public:
  void add(std::string topic, StanceLabel stance, std::vector<std::string> terms) {
    if (stance == StanceLabel::none)
      throw Error(ErrorCode::validation, "seed rules label FAVOR or AGAINST only");
    if (topic.empty())
      throw Error(ErrorCode::validation, "seed rule with empty topic");
    if (terms.empty())
      throw Error(ErrorCode::validation, "seed rule for " + topic + " has no terms");
    for (auto& t : terms) {
      t = text::to_lower(text::trim(t));
      if (t.empty() || t == "#")
        throw Error(ErrorCode::validation, "seed rule for " + topic + " has an empty term");
    }
    rules_.push_back({std::move(topic), stance, std::move(terms)});
  }

  /// Every topic with rules needs at least one rule per stance.
  void validate() const {
    std::map<std::string, std::pair<bool, bool>> seen;
    for (const auto& r : rules_) {
      auto& [f, a] = seen[r.topic];
      (r.stance == StanceLabel::favor ? f : a) = true;
    }
    for (const auto& [topic, fa] : seen)
      if (!fa.first || !fa.second)
        throw Error(ErrorCode::validation,
                    "topic '" + topic + "' needs both FAVOR and AGAINST seed rules");
  }

  const std::vector<SeedRule>& rules() const noexcept { return rules_; }

  std::vector<std::string> topics() const {
    std::set<std::string> t;
    for (const auto& r : rules_) t.insert(r.topic);
    return {t.begin(), t.end()};
  }

 private:
  std::vector<SeedRule> rules_;
};

/// Case-folded hashtags and words of one tweet, the view rules match against.
struct TermIndex {
  std::unordered_set<std::string> hashtags;
  std::unordered_set<std::string> words;

  explicit TermIndex(std::string_view tweet_text) {
    for (const RawToken& tok : tokenize(tweet_text)) {
      const std::string low = text::to_lower(tok.text);
      if (tok.cls == TokenClass::hashtag) {
        hashtags.insert(low);
        const auto body = low.find_first_not_of('#');
        if (body != std::string::npos) words.insert(low.substr(body));
      } else if (tok.cls == TokenClass::word) {
        words.insert(low);
      }
    }
  }

  bool contains(const std::string& term) const {
    if (!term.empty() && term.front() == '#') return hashtags.contains(term);
    return words.contains(term);
  }
};

inline bool match_rule(const TermIndex& index, const SeedRule& rule) {
  return std::all_of(rule.terms.begin(), rule.terms.end(),
                     [&](const std::string& t) { return index.contains(t); });
}

inline bool match_rule(const Tweet& tweet, const SeedRule& rule) {
  return match_rule(TermIndex(tweet.text), rule);
}

struct LabeledTweet {
  Tweet tweet;
  StanceLabel label = StanceLabel::none;
};

struct WeakLabelResult {
  std::vector<LabeledTweet> labeled;
  std::vector<Tweet> unmatched;   // eligible for the NONE pool
  std::vector<Tweet> conflicted;  // matched by both stances, or by several topics
};

/// Tweets with a topic are checked against that topic's rules only; tweets
/// without one against every topic and must be claimed by exactly one.
inline WeakLabelResult weak_label(const std::vector<Tweet>& tweets,
                                  const SeedRuleSet& ruleset) {
  WeakLabelResult out;
  for (const Tweet& t : tweets) {
    const TermIndex index(t.text);
    std::map<std::string, std::pair<bool, bool>> hits;  // topic -> (favor, against)
    for (const SeedRule& r : ruleset.rules()) {
      if (!t.topic.empty() && r.topic != t.topic) continue;
      if (!match_rule(index, r)) continue;
      auto& [f, a] = hits[r.topic];
      (r.stance == StanceLabel::favor ? f : a) = true;
    }
    if (hits.empty()) {
      out.unmatched.push_back(t);
      continue;
    }
    if (hits.size() > 1 || (hits.begin()->second.first && hits.begin()->second.second)) {
      out.conflicted.push_back(t);
      continue;
    }
    LabeledTweet lt{t, hits.begin()->second.first ? StanceLabel::favor
                                                   : StanceLabel::against};
    lt.tweet.topic = hits.begin()->first;
    lt.tweet.gold_stance = lt.label;
    out.labeled.push_back(std::move(lt));
  }
  return out;
}

inline std::vector<std::string> unigram_set(std::string_view tweet_text) {
  std::vector<std::string> toks;
  for (const RawToken& t : tokenize(tweet_text)) toks.push_back(text::to_lower(t.text));
  std::sort(toks.begin(), toks.end());
  toks.erase(std::unique(toks.begin(), toks.end()), toks.end());
  return toks;
}

inline constexpr double kDuplicateOverlap = 0.8;

/// Greedy single pass: a tweet survives when its Jaccard overlap with every
/// tweet kept so far is below 0.8. Two empty token sets count as identical.
inline std::vector<Tweet> filter_duplicates(const std::vector<Tweet>& tweets) {
  std::vector<Tweet> kept;
  std::vector<std::size_t> kept_size;
  std::unordered_map<std::string, std::vector<std::size_t>> postings;
  bool kept_empty = false;
  std::vector<std::size_t> shared;  // per kept tweet, reused scratch
  for (const Tweet& t : tweets) {
    const auto terms = unigram_set(t.text);
    if (terms.empty()) {
      if (kept_empty) continue;
      kept_empty = true;
      kept.push_back(t);
      kept_size.push_back(0);
      shared.push_back(0);
      continue;
    }
    std::vector<std::size_t> touched;
    for (const auto& term : terms) {
      auto it = postings.find(term);
      if (it == postings.end()) continue;
      for (std::size_t k : it->second) {
        if (shared[k]++ == 0) touched.push_back(k);
      }
    }
    bool duplicate = false;
    for (std::size_t k : touched) {
      const std::size_t inter = shared[k];
      const std::size_t uni = terms.size() + kept_size[k] - inter;
      // inter / uni >= 0.8, in integers.
      if (5 * inter >= 4 * uni) duplicate = true;
      shared[k] = 0;
    }
    if (duplicate) continue;
    const std::size_t id = kept.size();
    for (const auto& term : terms) postings[term].push_back(id);
    kept.push_back(t);
    kept_size.push_back(terms.size());
    shared.push_back(0);
  }
  return kept;
}

inline constexpr std::size_t kMinDictionaryWords = 4;

inline std::size_t count_dictionary_words(std::string_view tweet_text,
                                          const WordSet& dictionary) {
  std::size_t n = 0;
  for (const RawToken& t : tokenize(tweet_text))
    if (t.cls == TokenClass::word && dictionary.contains(text::to_lower(t.text))) ++n;
  return n;
}

/// Keeps tweets with at least `min_words` dictionary word tokens, counting
/// repeats.
inline std::vector<Tweet> filter_min_dictionary(const std::vector<Tweet>& tweets,
                                                const WordSet& dictionary,
                                                std::size_t min_words = kMinDictionaryWords) {
  if (dictionary.empty())
    throw Error(ErrorCode::invalid_argument, "dictionary filter needs a non-empty dictionary");
  std::vector<Tweet> out;
  for (const Tweet& t : tweets)
    if (count_dictionary_words(t.text, dictionary) >= min_words) out.push_back(t);
  return out;
}

enum class NoneSource { other_topics, random_pool };

struct BalanceConfig {
  std::optional<std::size_t> per_class_cap;
  std::vector<NoneSource> none_sources = {NoneSource::other_topics,
                                          NoneSource::random_pool};
  std::uint64_t rng_seed = 0;
};

/// Equal FAVOR/AGAINST/NONE counts for one topic. Oversized classes are
/// subsampled; NONE is drawn without replacement from the pool groups in
/// `none_sources` order. Each class keeps its input order in the output.
inline std::vector<Tweet> balance_classes(const std::vector<LabeledTweet>& labeled,
                                          const std::vector<Tweet>& pool,
                                          const BalanceConfig& cfg) {
  if (cfg.per_class_cap && *cfg.per_class_cap == 0)
    throw Error(ErrorCode::invalid_argument, "per_class_cap must be positive");
  std::vector<const Tweet*> favor, against;
  std::string topic;
  for (const auto& lt : labeled) {
    if (lt.label == StanceLabel::none) continue;
    if (topic.empty()) topic = lt.tweet.topic;
    if (lt.tweet.topic != topic)
      throw Error(ErrorCode::invalid_argument,
                  "balance_classes expects a single topic, saw '" + topic +
                      "' and '" + lt.tweet.topic + "'");
    (lt.label == StanceLabel::favor ? favor : against).push_back(&lt.tweet);
  }
  if (favor.empty() || against.empty())
    throw Error(ErrorCode::validation, "balance_classes needs FAVOR and AGAINST tweets");

  std::size_t n = std::min(favor.size(), against.size());
  if (cfg.per_class_cap) n = std::min(n, *cfg.per_class_cap);

  Rng rng(cfg.rng_seed);
  auto pick = [&](std::vector<const Tweet*>& from) {
    if (from.size() > n) {
      auto idx = rng.permutation(from.size());
      idx.resize(n);
      std::sort(idx.begin(), idx.end());
      std::vector<const Tweet*> chosen;
      for (auto i : idx) chosen.push_back(from[i]);
      from = std::move(chosen);
    }
  };
  pick(favor);
  pick(against);

  std::vector<const Tweet*> none;
  for (NoneSource src : cfg.none_sources) {
    std::vector<const Tweet*> group;
    for (const Tweet& t : pool) {
      const bool random = t.source == TweetSource::random_pool;
      if (src == NoneSource::random_pool ? random : (!random && t.topic != topic))
        group.push_back(&t);
    }
    rng.shuffle(group);
    for (const Tweet* t : group) {
      if (none.size() == n) break;
      none.push_back(t);
    }
  }
  if (none.size() < n)
    throw Error(ErrorCode::validation,
                "NONE pool too small for topic '" + topic + "': need " +
                    std::to_string(n) + ", have " + std::to_string(none.size()) +
                    " (deficit " + std::to_string(n - none.size()) + ")");

  std::vector<Tweet> out;
  out.reserve(3 * n);
  auto append = [&](const std::vector<const Tweet*>& cls, StanceLabel label) {
    for (const Tweet* t : cls) {
      Tweet copy = *t;
      copy.topic = topic;
      copy.gold_stance = label;
      out.push_back(std::move(copy));
    }
  };
  append(favor, StanceLabel::favor);
  append(against, StanceLabel::against);
  append(none, StanceLabel::none);
  return out;
}

struct RuleReportRow {
  SeedRule rule;
  std::size_t matches = 0;
  std::vector<std::string> sample_ids;
};

/// Per-rule match counts with the first few matching tweet ids, for checking
/// hashtag precision by hand.
inline std::vector<RuleReportRow> rule_report(const std::vector<Tweet>& tweets,
                                              const SeedRuleSet& ruleset,
                                              std::size_t samples = 5) {
  std::vector<RuleReportRow> rows;
  for (const auto& r : ruleset.rules()) rows.push_back({r, 0, {}});
  for (const Tweet& t : tweets) {
    const TermIndex index(t.text);
    for (auto& row : rows) {
      if (!t.topic.empty() && row.rule.topic != t.topic) continue;
      if (!match_rule(index, row.rule)) continue;
      ++row.matches;
      if (row.sample_ids.size() < samples) row.sample_ids.push_back(t.id);
    }
  }
  return rows;
}

}  // namespace stancekit
