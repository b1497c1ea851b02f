#pragma once

// Direct counting oracle for the smoothed, document-frequency nPMI table,
// written without the library's n-gram or counting helpers.

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <stancekit/stancekit.hpp>

namespace pmi_oracle {

inline std::vector<stancekit::PmiDocument> toy_corpus() {
  auto doc = [](std::string topic, std::vector<std::string> toks) {
    return stancekit::PmiDocument{std::move(topic), std::move(toks)};
  };
  return {doc("A", {"a", "b", "c"}), doc("A", {"a", "b", "d"}), doc("A", {"a", "c"}),
          doc("B", {"d", "e"}),      doc("B", {"b", "e", "f"}), doc("B", {"e", "f"})};
}

inline std::map<std::string, long double> table(const std::vector<stancekit::PmiDocument>& docs,
                                                const std::string& topic, int min_df = 2) {
  std::map<std::string, int> df, df_t;
  int D = 0, D_t = 0;
  for (const auto& d : docs) {
    ++D;
    const bool in = d.topic == topic;
    D_t += in;
    std::set<std::string> seen;
    const int n = static_cast<int>(d.tokens.size());
    for (int len = 1; len <= 3; ++len)
      for (int i = 0; i + len <= n; ++i) {
        std::string g = d.tokens[static_cast<std::size_t>(i)];
        for (int k = 1; k < len; ++k) g += " " + d.tokens[static_cast<std::size_t>(i + k)];
        seen.insert(g);
      }
    for (const auto& g : seen) {
      ++df[g];
      if (in) ++df_t[g];
    }
  }
  std::map<std::string, long double> out;
  const long double N = D + 1.0L;
  for (const auto& [g, c] : df) {
    if (c < min_df) continue;
    const long double pgt = (df_t[g] + 1.0L) / N, pg = (c + 1.0L) / N, pt = (D_t + 1.0L) / N;
    out[g] = std::log(pgt / (pg * pt)) / -std::log(pgt);
  }
  return out;
}

}  // namespace pmi_oracle
