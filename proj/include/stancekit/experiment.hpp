#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "corpus_io.hpp"
#include "error.hpp"
#include "eval.hpp"
#include "features.hpp"
#include "naive_bayes.hpp"
#include "parallel.hpp"
#include "pmi.hpp"
#include "random.hpp"
#include "selection.hpp"

namespace stancekit {

/// One trainable system: feature families plus selection and smoothing.
struct ExperimentConfig {
  std::string name;
  FeatureConfig features;
  SelectionMethod selection = SelectionMethod::none;
  std::size_t select_k = kDefaultSelectK;
  double alpha = 1.0;
};

/// Featurizes labeled tweets; every tweet must carry a gold stance.
inline std::vector<LabeledVector> featurize_all(const std::vector<ParsedTweet>& tweets,
                                                const FeatureConfig& cfg,
                                                const FeatureResources& res) {
  cfg.validate();
  check_resources(cfg, res);
  std::vector<LabeledVector> out(tweets.size());
  parallel_for(tweets.size(), [&](std::size_t i) {
    const auto& t = tweets[i];
    if (!t.tweet.gold_stance)
      throw Error(ErrorCode::validation, "tweet '" + t.tweet.id + "' has no gold stance");
    out[i] = {t.tweet.id, featurize(t, cfg, res), *t.tweet.gold_stance};
  });
  return out;
}

struct TrainedSystem {
  NbModel model;
  std::optional<SelectionReport> selection;
};

/// Optional feature selection on the training vectors, then NB over the classes
/// present in them.
inline TrainedSystem train_system(const std::vector<LabeledVector>& train,
                                  const ExperimentConfig& cfg) {
  TrainedSystem sys;
  if (cfg.selection != SelectionMethod::none && present_classes(train).size() >= 2 &&
      train.size() >= 2) {
    sys.selection = rank_features(cfg.selection, train);
    sys.selection->k = std::min(cfg.select_k, sys.selection->ranked.size());
    sys.model = train_nb(select_features(train, *sys.selection, std::max<std::size_t>(1, sys.selection->k)),
                         cfg.alpha, present_classes(train));
  } else {
    sys.model = train_nb(train, cfg.alpha, present_classes(train));
  }
  return sys;
}

struct ExperimentResult {
  EvalReport report;
  std::vector<StanceLabel> predictions;
};

inline ExperimentResult evaluate_vectors(const std::vector<LabeledVector>& train,
                                         const std::vector<LabeledVector>& test,
                                         const ExperimentConfig& cfg) {
  const TrainedSystem sys = train_system(train, cfg);
  ExperimentResult r;
  std::vector<StanceLabel> gold;
  for (const auto& ex : test) {
    r.predictions.push_back(sys.model.predict(ex.features).label);
    gold.push_back(ex.label);
  }
  r.report = evaluate(r.predictions, gold);
  return r;
}

inline ExperimentResult run_experiment(const std::vector<ParsedTweet>& train,
                                       const std::vector<ParsedTweet>& test,
                                       const ExperimentConfig& cfg, const FeatureResources& res) {
  return evaluate_vectors(featurize_all(train, cfg.features, res),
                          featurize_all(test, cfg.features, res), cfg);
}

struct FamilySubset {
  std::string name;
  std::vector<FeatureFamily> families;
};

/// Parses "unigram", "pos2+pos3", "pmi" style subset names.
inline FamilySubset parse_subset(const std::string& spec) {
  FamilySubset s{spec, {}};
  for (auto part : text::split(spec, '+'))
    for (FeatureFamily f : parse_families(part)) s.families.push_back(f);
  return s;
}

/// Rows of the feature-ablation table: unigram, all dependencies, POS n-grams,
/// LIWC, PMI.
inline std::vector<FamilySubset> default_ablation_subsets() {
  return {parse_subset("unigram"), parse_subset("all_dep"), parse_subset("pos"),
          parse_subset("liwc"), parse_subset("pmi")};
}

struct AblationRow {
  std::string name;
  EvalReport report;
};

/// One train/evaluate cycle per subset. Each subset replaces the base config's
/// families; stemming, hashtag stripping, selection and alpha carry over.
inline std::vector<AblationRow> run_ablation(const std::vector<ParsedTweet>& train,
                                             const std::vector<ParsedTweet>& test,
                                             const ExperimentConfig& base,
                                             const std::vector<FamilySubset>& subsets,
                                             const FeatureResources& res) {
  std::vector<ExperimentConfig> cfgs;
  for (const auto& s : subsets) {
    ExperimentConfig c = base;
    c.name = s.name;
    c.features.only(s.families);
    c.features.validate();
    check_resources(c.features, res);
    cfgs.push_back(std::move(c));
  }
  std::vector<AblationRow> rows(cfgs.size());
  parallel_for(cfgs.size(), [&](std::size_t i) {
    rows[i] = {cfgs[i].name, run_experiment(train, test, cfgs[i], res).report};
  });
  return rows;
}

struct CurvePoint {
  std::size_t train_size = 0;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, EvalReport>> scores;  // per config, input order

  double semeval_avg(std::size_t config) const { return scores.at(config).second.semeval_avg; }
};

/// Nested subsamples: one seeded permutation of the training set, the first s
/// examples for each size s. Every config trains on the same subsample and is
/// scored on the full test set.
inline std::vector<CurvePoint> learning_curve(const std::vector<ParsedTweet>& train,
                                              const std::vector<ParsedTweet>& test,
                                              const std::vector<ExperimentConfig>& cfgs,
                                              const std::vector<std::size_t>& sizes,
                                              std::uint64_t seed, const FeatureResources& res) {
  if (sizes.empty()) throw Error(ErrorCode::invalid_argument, "learning curve needs sizes");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] == 0) throw Error(ErrorCode::invalid_argument, "training sizes must be positive");
    if (i && sizes[i] <= sizes[i - 1])
      throw Error(ErrorCode::invalid_argument, "training sizes must be strictly increasing");
  }
  if (sizes.back() > train.size())
    throw Error(ErrorCode::invalid_argument,
                "training size " + std::to_string(sizes.back()) + " exceeds corpus of " +
                    std::to_string(train.size()));

  const auto order = Rng(seed).permutation(train.size());
  std::vector<std::vector<LabeledVector>> train_vecs(cfgs.size()), test_vecs(cfgs.size());
  for (std::size_t c = 0; c < cfgs.size(); ++c) {
    train_vecs[c] = featurize_all(train, cfgs[c].features, res);
    test_vecs[c] = featurize_all(test, cfgs[c].features, res);
  }

  std::vector<CurvePoint> points(sizes.size());
  for (std::size_t p = 0; p < sizes.size(); ++p) {
    points[p].train_size = sizes[p];
    points[p].seed = seed;
    points[p].scores.resize(cfgs.size());
  }
  parallel_for(sizes.size() * cfgs.size(), [&](std::size_t cell) {
    const std::size_t p = cell / cfgs.size(), c = cell % cfgs.size();
    std::vector<LabeledVector> subset;
    subset.reserve(sizes[p]);
    for (std::size_t i = 0; i < sizes[p]; ++i) subset.push_back(train_vecs[c][order[i]]);
    points[p].scores[c] = {cfgs[c].name, evaluate_vectors(subset, test_vecs[c], cfgs[c]).report};
  });
  return points;
}

inline std::vector<ReportRow> curve_rows(const std::string& topic,
                                         const std::vector<CurvePoint>& points,
                                         bool strip_hashtags) {
  std::vector<ReportRow> rows;
  for (const auto& p : points)
    for (const auto& [name, rep] : p.scores)
      rows.push_back({topic, name, rep, p.train_size, p.seed, strip_hashtags});
  return rows;
}

/// Tokens for PMI counting, normalized the same way tweets are.
inline std::vector<PmiDocument> pmi_documents(const std::vector<TopicDocument>& docs,
                                              const Normalizer& normalizer,
                                              bool strip = false) {
  std::vector<PmiDocument> out;
  out.reserve(docs.size());
  for (const auto& d : docs) {
    PmiDocument p{d.topic, {}};
    for (const RawToken& t : tokenize(d.text)) {
      if (strip && t.cls == TokenClass::hashtag) continue;
      p.tokens.push_back(normalizer.normalize(t));
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace stancekit
