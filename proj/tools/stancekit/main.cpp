#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using namespace stancekit;
using namespace stancekit::cli;

// Single machine-parseable line per failure.
int report(std::string_view code, const std::string& message) {
  std::string flat = message;
  for (char& c : flat)
    if (c == '\n' || c == '\t') c = ' ';
  std::cerr << "error\t" << code << '\t' << flat << '\n';
  return 2;
}

void add_common(CLI::App* sub, CommonOptions& o, bool& strip, bool& keep, std::uint64_t& seed) {
  sub->add_option("--config", o.config, "YAML run configuration")->required()->check(CLI::ExistingFile);
  sub->add_option("--topic", o.topic, "topic key from the config")->required();
  sub->add_flag("--strip-hashtags", strip, "remove hashtag tokens before featurizing");
  sub->add_flag("--keep-hashtags", keep, "override a config that strips hashtags");
  sub->add_option("--seed", seed, "random seed");
  sub->add_option("--out-dir", o.out_dir, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stancekit: stance detection from weakly labeled tweets"};
  app.require_subcommand(1);

  CommonOptions o;
  o.argv.assign(argv + 1, argv + argc);
  bool strip = false, keep = false;
  std::uint64_t seed = 0;
  std::string input, pool, parses, pmi, model, predictions, train, test, train_parses,
      test_parses, sizes;
  std::vector<std::string> families;

  auto* harvest = app.add_subcommand("harvest", "weak-label, filter and balance raw tweets");
  add_common(harvest, o, strip, keep, seed);
  harvest->add_option("--input", input, "raw tweets (JSONL)")->required();
  harvest->add_option("--pool", pool, "extra random-pool tweets for NONE");

  auto* pre = app.add_subcommand("preprocess", "filter, normalize and attach parses");
  add_common(pre, o, strip, keep, seed);
  pre->add_option("--input", input, "tweets (JSONL)")->required();
  pre->add_option("--parses", parses, "external parses");

  auto* pmib = app.add_subcommand("pmi-build", "build the topic nPMI table");
  add_common(pmib, o, strip, keep, seed);
  pmib->add_option("--input", input, "topic documents (JSONL); defaults to the configured corpus");

  auto* feat = app.add_subcommand("featurize", "write feature vectors");
  add_common(feat, o, strip, keep, seed);
  feat->add_option("--input", input, "labeled tweets (JSONL)")->required();
  feat->add_option("--parses", parses, "external parses");
  feat->add_option("--pmi", pmi, "PMI model file");

  auto* tr = app.add_subcommand("train", "train a Naive Bayes model");
  add_common(tr, o, strip, keep, seed);
  tr->add_option("--input", input, "feature file")->required();

  auto* ev = app.add_subcommand("evaluate", "score predictions");
  add_common(ev, o, strip, keep, seed);
  ev->add_option("--model", model, "model file");
  ev->add_option("--input", input, "feature file");
  ev->add_option("--predictions", predictions, "id<TAB>predicted<TAB>gold file");

  auto* abl = app.add_subcommand("ablate", "feature ablation table");
  auto* cur = app.add_subcommand("curve", "learning curve");
  for (auto* sub : {abl, cur}) {
    add_common(sub, o, strip, keep, seed);
    sub->add_option("--train", train, "training tweets (JSONL)")->required();
    sub->add_option("--test", test, "test tweets (JSONL)")->required();
    sub->add_option("--train-parses", train_parses, "parses for the training tweets");
    sub->add_option("--test-parses", test_parses, "parses for the test tweets");
    sub->add_option("--pmi", pmi, "PMI model file");
    sub->add_option("--families", families, "feature subset, '+'-joined; repeatable");
  }
  cur->add_option("--sizes", sizes, "comma-separated training sizes")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("invalid_argument", e.what());
  }

  auto opt = [](const std::string& s) -> std::optional<fs::path> {
    if (s.empty()) return std::nullopt;
    return fs::path(s);
  };

  try {
    if (strip && keep) throw Error(ErrorCode::invalid_argument, "--strip-hashtags and --keep-hashtags conflict");
    if (strip) o.strip_hashtags = true;
    if (keep) o.strip_hashtags = false;
    if (app.get_subcommands().front()->count("--seed")) o.seed = seed;

    const EvalInputs ei{train, test, opt(train_parses), opt(test_parses), opt(pmi)};
    fs::path out;
    if (*harvest) out = cmd_harvest(o, input, opt(pool));
    else if (*pre) out = cmd_preprocess(o, input, opt(parses));
    else if (*pmib) out = cmd_pmi_build(o, opt(input));
    else if (*feat) out = cmd_featurize(o, input, opt(parses), opt(pmi));
    else if (*tr) out = cmd_train(o, input);
    else if (*ev) out = cmd_evaluate(o, opt(model), opt(input), opt(predictions));
    else if (*abl) out = cmd_ablate(o, ei, families);
    else if (*cur) out = cmd_curve(o, ei, parse_sizes(sizes), families);
    std::cout << out.string() << '\n';
  } catch (const Error& e) {
    return report(to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    return report("io", e.what());
  }
  return 0;
}
