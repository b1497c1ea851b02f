#pragma once

#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <stancekit/stancekit.hpp>

#include "config.hpp"
#include "io.hpp"

namespace stancekit::cli {

/// Flags shared by every subcommand. Unset optionals fall back to the config.
struct CommonOptions {
  fs::path config;
  std::string topic;
  std::optional<bool> strip_hashtags;
  std::optional<std::uint64_t> seed;
  fs::path out_dir = ".";
  std::vector<std::string> argv;  // recorded in manifests for re-running
};

struct Session {
  ConfigFile file;
  TopicRunConfig cfg;
  LoadedResources res;
  Manifest manifest;
};

inline Session open_session(const CommonOptions& o, const std::string& command) {
  if (o.topic.empty()) throw Error(ErrorCode::invalid_argument, "--topic is required");
  Session s{read_config(o.config), {}, {}, Manifest(command)};
  s.cfg = resolve_topic(s.file, o.topic);
  if (o.strip_hashtags) s.cfg.experiment.features.strip_hashtags = *o.strip_hashtags;
  if (o.seed) s.cfg.seed = *o.seed;
  s.cfg.balance.rng_seed = s.cfg.seed;
  s.res = load_resources(s.cfg);
  fs::create_directories(o.out_dir);
  if (!o.argv.empty()) s.manifest.set("argv", o.argv);
  s.manifest.set("topic", s.cfg.topic);
  s.manifest.set("seed", s.cfg.seed);
  s.manifest.set("strip_hashtags", s.cfg.strip_hashtags());
  s.manifest.set("features", s.cfg.experiment.features.describe());
  s.manifest.set("config_sha256", sha256_hex(s.file.raw));
  return s;
}

inline void finish(Session& s, const fs::path& primary) {
  s.manifest.output(primary);
  s.manifest.write(fs::path(primary.string() + ".manifest.json"));
}

/// Tweets of the session topic, each with its external parse when one exists.
inline std::vector<ParsedTweet> parsed_corpus(Session& s, const fs::path& input,
                                              const std::optional<fs::path>& parses,
                                              const std::string& role) {
  std::vector<Tweet> tweets;
  for (auto& t : load_tweets(input))
    if (t.topic == s.cfg.topic) tweets.push_back(std::move(t));
  if (tweets.empty())
    throw Error(ErrorCode::validation, input.string() + ": no tweets for topic '" + s.cfg.topic + "'");
  s.manifest.input(role, input);
  ParseMap pm;
  const auto ppath = parses ? parses : s.cfg.resources.parses;
  if (ppath) {
    pm = load_parses(*ppath);
    s.manifest.input(role + "_parses", *ppath);
  }
  return attach_parses(tweets, pm, s.res.normalizer);
}

inline PmiModel build_topic_pmi(Session& s, const std::vector<TopicDocument>& docs) {
  return build_pmi_model(pmi_documents(docs, s.res.normalizer, s.cfg.strip_hashtags()), s.cfg.topic,
                         s.cfg.pmi_top_percent, s.cfg.pmi_min_df);
}

/// Loads --pmi when given; otherwise builds from the configured PMI corpus.
/// Without either, PMI families fail later with a missing-resource error.
inline void prepare_pmi(Session& s, const std::optional<fs::path>& pmi) {
  if (pmi) {
    s.res.pmi = load_pmi_model(*pmi);
    if (s.res.pmi->topic() != s.cfg.topic)
      throw Error(ErrorCode::validation, pmi->string() + ": PMI model is for topic '" +
                                             s.res.pmi->topic() + "', not '" + s.cfg.topic + "'");
    s.manifest.input("pmi", *pmi);
  } else if (s.cfg.resources.pmi_corpus) {
    s.res.pmi = build_topic_pmi(s, load_topic_documents(*s.cfg.resources.pmi_corpus));
    s.manifest.input("pmi_corpus", *s.cfg.resources.pmi_corpus);
  }
}

inline std::vector<Tweet> apply_filters(const Session& s, std::vector<Tweet> tweets) {
  if (!s.cfg.apply_filters) return tweets;
  tweets = filter_duplicates(tweets);
  if (!s.res.dictionary.empty()) tweets = filter_min_dictionary(tweets, s.res.dictionary);
  return tweets;
}

// harvest: weak labels from seed rules, filtering, class balancing.
inline fs::path cmd_harvest(const CommonOptions& o, const fs::path& input,
                            const std::optional<fs::path>& pool_path) {
  Session s = open_session(o, "harvest");
  if (!s.cfg.resources.rules) throw Error(ErrorCode::missing_resource, "config: no rules file");
  const SeedRuleSet rules = load_rules(*s.cfg.resources.rules);
  s.manifest.input("rules", *s.cfg.resources.rules);
  s.manifest.input("input", input);
  const auto tweets = load_tweets(input);
  const auto labeled = weak_label(tweets, rules);

  std::vector<Tweet> mine;
  for (const auto& lt : labeled.labeled)
    if (lt.tweet.topic == s.cfg.topic) mine.push_back(lt.tweet);
  const auto kept = apply_filters(s, mine);
  std::set<std::string> kept_ids;
  for (const auto& t : kept) kept_ids.insert(t.id);
  std::vector<LabeledTweet> topic_labeled;
  for (const auto& lt : labeled.labeled)
    if (lt.tweet.topic == s.cfg.topic && kept_ids.contains(lt.tweet.id)) topic_labeled.push_back(lt);

  // NONE candidates: other topics' labeled tweets, plus the random pool.
  std::vector<Tweet> pool;
  for (const auto& lt : labeled.labeled)
    if (lt.tweet.topic != s.cfg.topic) pool.push_back(lt.tweet);
  for (const auto& t : labeled.unmatched)
    if (t.source == TweetSource::random_pool) pool.push_back(t);
  if (pool_path) {
    s.manifest.input("pool", *pool_path);
    for (auto t : load_tweets(*pool_path)) {
      t.source = TweetSource::random_pool;
      pool.push_back(std::move(t));
    }
  }
  pool = apply_filters(s, pool);
  const auto balanced = balance_classes(topic_labeled, pool, s.cfg.balance);

  const fs::path out = o.out_dir / (s.cfg.topic + ".harvest.jsonl");
  save_tweets(out, balanced);
  std::ostringstream rep;
  rep << "topic\tstance\tterms\tmatches\tsample_ids\n";
  for (const auto& row : rule_report(tweets, rules)) {
    if (row.rule.topic != s.cfg.topic) continue;
    rep << row.rule.topic << '\t' << to_string(row.rule.stance) << '\t'
        << text::join(row.rule.terms, " ") << '\t' << row.matches << '\t'
        << text::join(row.sample_ids, ",") << '\n';
  }
  const fs::path rep_path = o.out_dir / (s.cfg.topic + ".rules.tsv");
  text::write_file(rep_path, rep.str());
  s.manifest.output(rep_path);
  s.manifest.set("counts", {{"labeled", topic_labeled.size()},
                            {"conflicted", labeled.conflicted.size()},
                            {"output", balanced.size()}});
  finish(s, out);
  return out;
}

// preprocess: filters on harvested tweets, normalization, parse attachment.
inline fs::path cmd_preprocess(const CommonOptions& o, const fs::path& input,
                               const std::optional<fs::path>& parses) {
  Session s = open_session(o, "preprocess");
  std::vector<Tweet> all = load_tweets(input), harvested, rest;
  for (auto& t : all)
    (t.source == TweetSource::harvested ? harvested : rest).push_back(std::move(t));
  std::vector<Tweet> kept = apply_filters(s, harvested);
  kept.insert(kept.end(), rest.begin(), rest.end());
  s.manifest.input("input", input);
  ParseMap pm;
  const auto ppath = parses ? parses : s.cfg.resources.parses;
  if (ppath) {
    pm = load_parses(*ppath);
    s.manifest.input("parses", *ppath);
  }
  const auto parsed = attach_parses(kept, pm, s.res.normalizer);
  const std::string stem = input.stem().string();
  const fs::path corpus = o.out_dir / (stem + ".pre.jsonl");
  const fs::path parse_out = o.out_dir / (stem + ".parses.tsv");
  save_tweets(corpus, kept);
  save_parses(parse_out, parsed);
  s.manifest.output(parse_out);
  finish(s, corpus);
  return corpus;
}

// pmi-build: topic nPMI table from the configured corpus (or --input).
inline fs::path cmd_pmi_build(const CommonOptions& o, const std::optional<fs::path>& input) {
  Session s = open_session(o, "pmi-build");
  const auto src = input ? input : s.cfg.resources.pmi_corpus;
  if (!src) throw Error(ErrorCode::missing_resource, "pmi-build needs --input or resources.pmi_corpus");
  s.manifest.input("corpus", *src);
  const PmiModel m = build_topic_pmi(s, load_topic_documents(*src));
  const fs::path out = o.out_dir / (s.cfg.topic + ".pmi.tsv");
  save_pmi_model(out, m);
  s.manifest.set("top_percent", s.cfg.pmi_top_percent);
  finish(s, out);
  return out;
}

// featurize: labeled corpus to a feature file.
inline fs::path cmd_featurize(const CommonOptions& o, const fs::path& input,
                              const std::optional<fs::path>& parses,
                              const std::optional<fs::path>& pmi) {
  Session s = open_session(o, "featurize");
  const auto corpus = parsed_corpus(s, input, parses, "input");
  if (s.cfg.experiment.features.any_pmi()) prepare_pmi(s, pmi);
  const auto rows = featurize_all(corpus, s.cfg.experiment.features, s.res.view());
  const fs::path out = o.out_dir / (input.stem().string() + ".features.tsv");
  save_feature_file(out, rows);
  finish(s, out);
  return out;
}

// train: feature file to model file, with the topic's selection settings.
inline fs::path cmd_train(const CommonOptions& o, const fs::path& features) {
  Session s = open_session(o, "train");
  s.manifest.input("features", features);
  const auto sys = train_system(load_feature_file(features), s.cfg.experiment);
  const fs::path out = o.out_dir / (s.cfg.topic + ".model.tsv");
  sys.model.save(out);
  s.manifest.set("selection", std::string(to_string(s.cfg.experiment.selection)));
  s.manifest.set("vocabulary", sys.model.vocabulary().size());
  finish(s, out);
  return out;
}

inline fs::path write_eval(Session& s, const CommonOptions& o, const std::string& stem,
                           const std::vector<PredictionRow>& rows, std::size_t train_size) {
  std::vector<StanceLabel> pred, gold;
  for (const auto& r : rows) {
    pred.push_back(r.predicted);
    gold.push_back(r.gold);
  }
  const ReportRow row{s.cfg.topic, s.cfg.experiment.name, evaluate(pred, gold), train_size,
                      s.cfg.seed, s.cfg.strip_hashtags()};
  const fs::path out = o.out_dir / (stem + ".report.csv");
  std::ostringstream os;
  write_report_csv(os, {row});
  text::write_file(out, os.str());
  return out;
}

// evaluate: model + feature file, or a predictions file, to a report row.
inline fs::path cmd_evaluate(const CommonOptions& o, const std::optional<fs::path>& model,
                             const std::optional<fs::path>& features,
                             const std::optional<fs::path>& predictions) {
  Session s = open_session(o, "evaluate");
  std::vector<PredictionRow> rows;
  std::string stem;
  if (predictions) {
    if (model || features)
      throw Error(ErrorCode::invalid_argument, "use either --predictions or --model with --input");
    s.manifest.input("predictions", *predictions);
    rows = load_predictions(*predictions);
    stem = predictions->stem().string();
  } else {
    if (!model || !features)
      throw Error(ErrorCode::invalid_argument, "evaluate needs --model and --input, or --predictions");
    s.manifest.input("model", *model);
    s.manifest.input("features", *features);
    const NbModel m = NbModel::load(*model);
    for (const auto& ex : load_feature_file(*features))
      rows.push_back({ex.id, m.predict(ex.features).label, ex.label});
    stem = features->stem().string();
    const fs::path pred_out = o.out_dir / (stem + ".predictions.tsv");
    save_predictions(pred_out, rows);
    s.manifest.output(pred_out);
  }
  const fs::path out = write_eval(s, o, stem, rows, 0);
  finish(s, out);
  return out;
}

inline std::vector<FamilySubset> subsets_from(const std::vector<std::string>& names) {
  if (names.empty()) return default_ablation_subsets();
  std::vector<FamilySubset> out;
  for (const auto& n : names) out.push_back(parse_subset(n));
  return out;
}

inline bool subsets_need_pmi(const std::vector<FamilySubset>& subsets) {
  for (const auto& s : subsets)
    for (auto f : s.families)
      if (f == FeatureFamily::pmi_count || f == FeatureFamily::pmi_max || f == FeatureFamily::pmi_intopic)
        return true;
  return false;
}

struct EvalInputs {
  fs::path train;
  fs::path test;
  std::optional<fs::path> train_parses;
  std::optional<fs::path> test_parses;
  std::optional<fs::path> pmi;
};

// ablate: one row per feature subset.
inline fs::path cmd_ablate(const CommonOptions& o, const EvalInputs& in,
                           const std::vector<std::string>& families) {
  Session s = open_session(o, "ablate");
  const auto subsets = subsets_from(families);
  const auto train = parsed_corpus(s, in.train, in.train_parses, "train");
  const auto test = parsed_corpus(s, in.test, in.test_parses, "test");
  if (subsets_need_pmi(subsets)) prepare_pmi(s, in.pmi);
  const auto rows = run_ablation(train, test, s.cfg.experiment, subsets, s.res.view());
  std::vector<ReportRow> out_rows;
  for (const auto& r : rows)
    out_rows.push_back({s.cfg.topic, r.name, r.report, train.size(), s.cfg.seed, s.cfg.strip_hashtags()});
  const fs::path out = o.out_dir / (s.cfg.topic + ".ablation.csv");
  std::ostringstream os;
  write_report_csv(os, out_rows);
  text::write_file(out, os.str());
  finish(s, out);
  return out;
}

/// "100,200,400" or "start:stop:step" (inclusive of stop).
inline std::vector<std::size_t> parse_sizes(const std::string& spec) {
  auto num = [&](std::string_view part) {
    int v = 0;
    if (!text::parse_int(text::trim(part), v) || v <= 0)
      throw Error(ErrorCode::invalid_argument, "bad training size '" + std::string(part) + "'");
    return static_cast<std::size_t>(v);
  };
  std::vector<std::size_t> out;
  const auto range = text::split(spec, ':');
  if (range.size() == 3) {
    const std::size_t lo = num(range[0]), hi = num(range[1]), step = num(range[2]);
    for (std::size_t v = lo; v <= hi; v += step) out.push_back(v);
    return out;
  }
  if (range.size() != 1) throw Error(ErrorCode::invalid_argument, "bad sizes '" + spec + "'");
  for (auto part : text::split(spec, ',')) out.push_back(num(part));
  return out;
}

// curve: SemEval average against training size for the unigram baseline, the
// dependency baseline and the topic's configured system.
inline fs::path cmd_curve(const CommonOptions& o, const EvalInputs& in,
                          const std::vector<std::size_t>& sizes,
                          const std::vector<std::string>& families) {
  Session s = open_session(o, "curve");
  std::vector<ExperimentConfig> cfgs;
  auto add = [&](const std::string& name, const std::vector<FeatureFamily>& fams) {
    ExperimentConfig c = s.cfg.experiment;
    c.name = name;
    if (!fams.empty()) c.features.only(fams);
    cfgs.push_back(std::move(c));
  };
  if (families.empty()) {
    add("unigram", parse_families("unigram"));
    add("all_dep", parse_families("all_dep"));
    add("configured", {});
  } else {
    for (const auto& f : families) add(f, parse_subset(f).families);
  }
  bool need_pmi = false;
  for (const auto& c : cfgs) need_pmi = need_pmi || c.features.any_pmi();
  const auto train = parsed_corpus(s, in.train, in.train_parses, "train");
  const auto test = parsed_corpus(s, in.test, in.test_parses, "test");
  if (need_pmi) prepare_pmi(s, in.pmi);
  const auto points = learning_curve(train, test, cfgs, sizes, s.cfg.seed, s.res.view());
  const fs::path out = o.out_dir / (s.cfg.topic + ".curve.csv");
  std::ostringstream os;
  write_report_csv(os, curve_rows(s.cfg.topic, points, s.cfg.strip_hashtags()));
  text::write_file(out, os.str());
  finish(s, out);
  return out;
}

}  // namespace stancekit::cli
