#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include <stancekit/stancekit.hpp>

namespace stancekit::cli {

namespace fs = std::filesystem;

struct ResourcePaths {
  std::optional<fs::path> category_lexicon;
  std::optional<fs::path> scored_lexicon;
  std::optional<fs::path> polarity_positive;
  std::optional<fs::path> polarity_negative;
  std::optional<fs::path> normalization_lexicon;
  std::optional<fs::path> dictionary;
  std::optional<fs::path> rules;
  std::optional<fs::path> parses;
  std::optional<fs::path> pmi_corpus;
};

/// Everything one topic's commands need, resolved from the config file.
struct TopicRunConfig {
  std::string topic;
  ExperimentConfig experiment;
  std::uint64_t seed = 0;
  double pmi_top_percent = 10.0;
  std::size_t pmi_min_df = 2;
  BalanceConfig balance;
  bool apply_filters = true;
  ResourcePaths resources;

  bool strip_hashtags() const noexcept { return experiment.features.strip_hashtags; }
};

namespace detail {

inline Error config_error(const std::string& msg) {
  return Error(ErrorCode::validation, "config: " + msg);
}

template <typename T>
T scalar(const YAML::Node& n, const std::string& key) {
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    throw config_error("bad value for '" + key + "'");
  }
}

inline void apply_settings(const YAML::Node& node, TopicRunConfig& cfg) {
  if (!node) return;
  if (!node.IsMap()) throw config_error("settings block must be a mapping");
  static const std::set<std::string> known = {
      "features",     "selection",      "select_k",        "alpha",
      "seed",         "stemmed",        "unstemmed",       "strip_hashtags",
      "pmi_top_percent", "pmi_min_df",  "per_class_cap",   "none_sources",
      "apply_filters"};
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!known.contains(key)) throw config_error("unknown key '" + key + "'");
  }
  auto& fc = cfg.experiment.features;
  if (auto f = node["features"]) {
    if (!f.IsSequence()) throw config_error("'features' must be a list");
    std::vector<std::string> names;
    for (const auto& item : f) names.push_back(scalar<std::string>(item, "features"));
    const FeatureConfig parsed = config_from_names(names);
    fc.families = parsed.families;
  }
  if (auto v = node["selection"]) cfg.experiment.selection = parse_selection(scalar<std::string>(v, "selection"));
  if (auto v = node["select_k"]) {
    const auto k = scalar<long long>(v, "select_k");
    if (k < 1) throw config_error("select_k must be >= 1");
    cfg.experiment.select_k = static_cast<std::size_t>(k);
  }
  if (auto v = node["alpha"]) cfg.experiment.alpha = scalar<double>(v, "alpha");
  if (auto v = node["seed"]) cfg.seed = scalar<std::uint64_t>(v, "seed");
  if (auto v = node["stemmed"]) fc.use_stemmed = scalar<bool>(v, "stemmed");
  if (auto v = node["unstemmed"]) fc.use_unstemmed = scalar<bool>(v, "unstemmed");
  if (auto v = node["strip_hashtags"]) fc.strip_hashtags = scalar<bool>(v, "strip_hashtags");
  if (auto v = node["pmi_top_percent"]) cfg.pmi_top_percent = scalar<double>(v, "pmi_top_percent");
  if (auto v = node["pmi_min_df"]) cfg.pmi_min_df = scalar<std::size_t>(v, "pmi_min_df");
  if (auto v = node["apply_filters"]) cfg.apply_filters = scalar<bool>(v, "apply_filters");
  if (auto v = node["per_class_cap"]) {
    if (v.IsNull()) {
      cfg.balance.per_class_cap.reset();
    } else {
      const auto cap = scalar<long long>(v, "per_class_cap");
      if (cap < 1) throw config_error("per_class_cap must be positive");
      cfg.balance.per_class_cap = static_cast<std::size_t>(cap);
    }
  }
  if (auto v = node["none_sources"]) {
    cfg.balance.none_sources.clear();
    for (const auto& s : v) {
      const auto name = scalar<std::string>(s, "none_sources");
      if (name == "other_topics") cfg.balance.none_sources.push_back(NoneSource::other_topics);
      else if (name == "random_pool") cfg.balance.none_sources.push_back(NoneSource::random_pool);
      else throw config_error("unknown none source '" + name + "'");
    }
  }
}

inline void check_file(const std::optional<fs::path>& p, const char* what) {
  if (p && !fs::is_regular_file(*p))
    throw Error(ErrorCode::missing_resource,
                std::string("config: ") + what + " not found: " + p->string());
}

}  // namespace detail

struct ConfigFile {
  fs::path path;
  YAML::Node root;
  std::string raw;

  std::vector<std::string> topics() const {
    std::vector<std::string> out;
    for (const auto& kv : root["topics"]) out.push_back(kv.first.as<std::string>());
    return out;
  }
};

inline ConfigFile read_config(const fs::path& path) {
  ConfigFile cf{path, {}, text::read_file(path)};
  try {
    cf.root = YAML::Load(cf.raw);
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::parse, path.string() + ": " + e.msg);
  }
  if (!cf.root.IsMap() || !cf.root["topics"] || !cf.root["topics"].IsMap())
    throw Error(ErrorCode::validation, path.string() + ": needs a 'topics' mapping");
  return cf;
}

/// Resolves one topic: defaults, then the topic's overrides. Relative resource
/// paths are taken from the config file's directory. Validates paths and the
/// feature configuration.
inline TopicRunConfig resolve_topic(const ConfigFile& cf, const std::string& topic) {
  TopicRunConfig cfg;
  cfg.topic = topic;
  cfg.experiment.name = topic;
  const auto base = cf.path.parent_path();

  if (auto res = cf.root["resources"]) {
    auto get = [&](const char* key) -> std::optional<fs::path> {
      auto n = res[key];
      if (!n || n.IsNull()) return std::nullopt;
      fs::path p = detail::scalar<std::string>(n, key);
      return p.is_absolute() ? p : base / p;
    };
    cfg.resources = {get("category_lexicon"), get("scored_lexicon"), get("polarity_positive"),
                     get("polarity_negative"), get("normalization_lexicon"), get("dictionary"),
                     get("rules"), get("parses"), get("pmi_corpus")};
  }
  detail::apply_settings(cf.root["defaults"], cfg);
  auto node = cf.root["topics"][topic];
  if (!node) throw Error(ErrorCode::validation, "config: unknown topic '" + topic + "'");
  if (!node.IsNull()) detail::apply_settings(node, cfg);

  const auto& r = cfg.resources;
  detail::check_file(r.category_lexicon, "category_lexicon");
  detail::check_file(r.scored_lexicon, "scored_lexicon");
  detail::check_file(r.polarity_positive, "polarity_positive");
  detail::check_file(r.polarity_negative, "polarity_negative");
  detail::check_file(r.normalization_lexicon, "normalization_lexicon");
  detail::check_file(r.dictionary, "dictionary");
  detail::check_file(r.rules, "rules");
  detail::check_file(r.parses, "parses");
  detail::check_file(r.pmi_corpus, "pmi_corpus");
  if (r.polarity_positive.has_value() != r.polarity_negative.has_value())
    throw Error(ErrorCode::validation, "config: polarity lexicon needs both positive and negative files");
  if (!(cfg.experiment.alpha > 0)) throw Error(ErrorCode::validation, "config: alpha must be positive");
  cfg.experiment.features.validate();
  return cfg;
}

/// Rule file: topic -> {favor: [[terms...]...], against: [[terms...]...]}.
inline SeedRuleSet load_rules(const fs::path& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path.string());
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::parse, path.string() + ": " + e.msg);
  }
  if (!root.IsMap()) throw Error(ErrorCode::parse, path.string() + ": expected topic mapping");
  SeedRuleSet rules;
  for (const auto& topic : root) {
    const auto name = topic.first.as<std::string>();
    for (const auto& [key, stance] :
         {std::pair{"favor", StanceLabel::favor}, std::pair{"against", StanceLabel::against}}) {
      auto list = topic.second[key];
      if (!list) continue;
      if (!list.IsSequence())
        throw Error(ErrorCode::parse, path.string() + ": " + name + "." + key + " must be a list");
      for (const auto& rule : list) {
        std::vector<std::string> terms;
        if (rule.IsScalar()) {
          terms.push_back(rule.as<std::string>());
        } else {
          for (const auto& t : rule) terms.push_back(t.as<std::string>());
        }
        rules.add(name, stance, std::move(terms));
      }
    }
  }
  rules.validate();
  return rules;
}

/// Lexicons, normalizer and the paths they came from; owns everything the
/// FeatureResources view points at.
struct LoadedResources {
  std::optional<CategoryLexicon> category;
  std::optional<ScoredLexicon> scored;
  std::optional<PolarityLexicon> polarity;
  std::optional<PmiModel> pmi;
  Normalizer normalizer;
  WordSet dictionary;

  FeatureResources view() const {
    return {category ? &*category : nullptr, scored ? &*scored : nullptr,
            polarity ? &*polarity : nullptr, pmi ? &*pmi : nullptr};
  }
};

inline LoadedResources load_resources(const TopicRunConfig& cfg) {
  LoadedResources out;
  const auto& r = cfg.resources;
  if (r.category_lexicon) out.category = load_category_lexicon(*r.category_lexicon);
  if (r.scored_lexicon) out.scored = load_scored_lexicon(*r.scored_lexicon);
  if (r.polarity_positive) out.polarity = load_polarity_lexicon(*r.polarity_positive, *r.polarity_negative);
  if (r.dictionary) out.dictionary = load_word_set(*r.dictionary);
  NormalizationLexicon lex;
  if (r.normalization_lexicon) lex = load_normalization_lexicon(*r.normalization_lexicon);
  out.normalizer = Normalizer(out.dictionary, std::move(lex));
  return out;
}

}  // namespace stancekit::cli
