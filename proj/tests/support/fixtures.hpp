#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <stancekit/stancekit.hpp>

namespace fixtures {

namespace fs = std::filesystem;

inline fs::path data_dir() { return fs::path(STANCEKIT_TEST_DATA); }
inline fs::path toy(const std::string& name) { return data_dir() / "toy" / name; }

/// Fresh scratch directory under the build tree, removed on destruction.
class ScratchDir {
 public:
  explicit ScratchDir(const std::string& name) : path_(fs::temp_directory_path() / ("stancekit_" + name)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const noexcept { return path_; }
  fs::path operator/(const std::string& s) const { return path_ / s; }

 private:
  fs::path path_;
};

struct Spec {
  std::string norm;
  std::string pos;
};

/// Tokens from (normalized, pos) pairs; surface = normalized.
inline stancekit::ParsedTweet parsed(const std::vector<Spec>& toks,
                                     const std::vector<std::pair<int, int>>& head_child,
                                     std::string id = "t") {
  stancekit::ParsedTweet p;
  p.tweet.id = std::move(id);
  p.tweet.text = "x";
  p.tweet.topic = "topic";
  int i = 1;
  for (const auto& s : toks) p.tokens.push_back({i++, s.norm, s.norm, s.pos});
  for (auto [h, c] : head_child) p.arcs.push_back({h, c});
  stancekit::validate_parse(p.tokens, p.arcs, "fixture");
  return p;
}

struct ToyLexicons {
  stancekit::CategoryLexicon category = stancekit::load_category_lexicon(toy("categories.txt"));
  stancekit::ScoredLexicon scored = stancekit::load_scored_lexicon(toy("scored.tsv"));
  stancekit::PolarityLexicon polarity =
      stancekit::load_polarity_lexicon(toy("positive.txt"), toy("negative.txt"));
};

inline std::string random_string(std::mt19937_64& g, const std::string& alphabet, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len), pick(0, alphabet.size() - 1);
  std::string s(len(g), ' ');
  for (char& c : s) c = alphabet[pick(g)];
  return s;
}

}  // namespace fixtures
