#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "error.hpp"
#include "text.hpp"

namespace stancekit {

inline constexpr int kMaxPmiOrder = 3;

/// Distinct 1..3-grams of a token sequence, space-joined, sorted.
inline std::set<std::string> distinct_ngrams(const std::vector<std::string>& tokens,
                                             int max_order = kMaxPmiOrder) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string g;
    for (int n = 0; n < max_order && i + n < tokens.size(); ++n) {
      if (n) g += ' ';
      g += tokens[i + n];
      out.insert(g);
    }
  }
  return out;
}

struct PmiDocument {
  std::string topic;
  std::vector<std::string> tokens;
};

/// ceil(percent/100 * n) with a guard against 0.1 * 30 = 3.0000000000000004.
inline std::size_t pool_size(double top_percent, std::size_t n) {
  const double raw = top_percent / 100.0 * static_cast<double>(n);
  const double rounded = std::round(raw);
  if (std::abs(raw - rounded) < 1e-9) return static_cast<std::size_t>(rounded);
  return static_cast<std::size_t>(std::ceil(raw));
}

/// Normalized PMI between n-grams and one topic, plus the top-N% pool.
class PmiModel {
 public:
  PmiModel() = default;
  PmiModel(std::string topic, std::map<std::string, double> table, double top_percent)
      : topic_(std::move(topic)), table_(std::move(table)), top_percent_(top_percent) {
    if (!(top_percent_ > 0.0 && top_percent_ <= 100.0))
      throw Error(ErrorCode::invalid_argument, "top_percent must lie in (0, 100]");
    std::vector<std::pair<std::string, double>> ranked(table_.begin(), table_.end());
    // Highest nPMI first; ties by n-gram text (the table is already sorted).
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    ranked.resize(pool_size(top_percent_, ranked.size()));
    for (auto& [g, _] : ranked) pool_.insert(std::move(g));
  }

  const std::string& topic() const noexcept { return topic_; }
  double top_percent() const noexcept { return top_percent_; }
  const std::map<std::string, double>& table() const noexcept { return table_; }
  const std::unordered_set<std::string>& pool() const noexcept { return pool_; }

  const double* find(const std::string& ngram) const {
    auto it = table_.find(ngram);
    return it == table_.end() ? nullptr : &it->second;
  }
  bool in_pool(const std::string& ngram) const { return pool_.contains(ngram); }

  friend bool operator==(const PmiModel& a, const PmiModel& b) {
    return a.topic_ == b.topic_ && a.table_ == b.table_ && a.pool_ == b.pool_ &&
           a.top_percent_ == b.top_percent_;
  }

 private:
  std::string topic_;
  std::map<std::string, double> table_;
  std::unordered_set<std::string> pool_;
  double top_percent_ = 10.0;
};

/// Document-frequency nPMI with add-one smoothing:
///   p(g,t) = (df_t(g)+1)/(D+1), p(g) = (df(g)+1)/(D+1), p(t) = (D_t+1)/(D+1)
///   nPMI = ln(p(g,t) / (p(g) p(t))) / -ln p(g,t)
/// over every 1..3-gram with df(g) >= min_df.
inline PmiModel build_pmi_model(const std::vector<PmiDocument>& documents,
                                const std::string& topic, double top_percent,
                                std::size_t min_df = 2) {
  std::set<std::string> topics;
  std::size_t topic_docs = 0;
  for (const auto& d : documents) {
    topics.insert(d.topic);
    if (d.topic == topic) ++topic_docs;
  }
  if (topics.size() < 2)
    throw Error(ErrorCode::invalid_argument, "PMI needs documents from at least two topics");
  if (topic_docs == 0)
    throw Error(ErrorCode::invalid_argument, "no PMI documents for topic '" + topic + "'");

  std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> df;  // (all, topic)
  for (const auto& d : documents) {
    const bool in_topic = d.topic == topic;
    for (const auto& g : distinct_ngrams(d.tokens)) {
      auto& c = df[g];
      ++c.first;
      if (in_topic) ++c.second;
    }
  }

  const double denom = static_cast<double>(documents.size()) + 1.0;
  const double p_t = (static_cast<double>(topic_docs) + 1.0) / denom;
  std::map<std::string, double> table;
  for (const auto& [g, c] : df) {
    if (c.first < min_df) continue;
    const double p_gt = (static_cast<double>(c.second) + 1.0) / denom;
    const double p_g = (static_cast<double>(c.first) + 1.0) / denom;
    const double npmi = std::log(p_gt / (p_g * p_t)) / -std::log(p_gt);
    table.emplace(g, std::clamp(npmi, -1.0, 1.0));
  }
  return PmiModel(topic, std::move(table), top_percent);
}

inline void save_pmi_model(std::ostream& out, const PmiModel& m) {
  out << "# stancekit-pmi topic=" << m.topic()
      << " top_percent=" << text::format_exact(m.top_percent()) << '\n';
  for (const auto& [g, v] : m.table())
    out << g << '\t' << text::format_exact(v) << '\t' << (m.in_pool(g) ? 1 : 0) << '\n';
}

inline PmiModel read_pmi_model(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line) || !line.starts_with("# stancekit-pmi "))
    throw Error(ErrorCode::parse, name + ":1: missing '# stancekit-pmi' header");
  std::string topic;
  double top = 0;
  for (auto kv : text::split_whitespace(std::string_view(line).substr(16))) {
    if (kv.starts_with("topic=")) topic = std::string(kv.substr(6));
    else if (kv.starts_with("top_percent=") && !text::parse_double(kv.substr(12), top))
      throw Error(ErrorCode::parse, name + ":1: bad top_percent");
  }
  std::map<std::string, double> table;
  std::set<std::string> pooled;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = text::split(line, '\t');
    double v = 0;
    if (f.size() != 3 || !text::parse_double(f[1], v) || (f[2] != "0" && f[2] != "1"))
      throw Error(ErrorCode::parse, name + ":" + std::to_string(lineno) +
                                        ": expected ngram<TAB>npmi<TAB>0|1");
    table.emplace(std::string(f[0]), v);
    if (f[2] == "1") pooled.insert(std::string(f[0]));
  }
  PmiModel m(topic, std::move(table), top);
  for (const auto& [g, _] : m.table())
    if (m.in_pool(g) != pooled.contains(g))
      throw Error(ErrorCode::validation,
                  name + ": stored pool disagrees with the top_percent ranking at '" + g + "'");
  return m;
}

inline void save_pmi_model(const std::filesystem::path& path, const PmiModel& m) {
  std::ostringstream os;
  save_pmi_model(os, m);
  text::write_file(path, os.str());
}

inline PmiModel load_pmi_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  return read_pmi_model(in, path.string());
}

}  // namespace stancekit
