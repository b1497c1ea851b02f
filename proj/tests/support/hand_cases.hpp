#pragma once

// Hand-worked metric and selection cases shared by the unit and acceptance tests.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <stancekit/stancekit.hpp>

namespace hand {

using stancekit::StanceLabel;
inline constexpr StanceLabel F = StanceLabel::favor, A = StanceLabel::against, N = StanceLabel::none;

struct MetricCase {
  std::string name;
  std::vector<StanceLabel> gold, predicted;
  std::array<double, 3> precision, recall, f1;
  double avg;
};

inline std::vector<MetricCase> metric_cases() {
  return {
      // gold 4F/4A/2N; 3 FAVOR hits, 2 AGAINST hits.
      // rows (gold) F: 3 1 0 | A: 1 2 1 | N: 1 0 1
      {"4F4A2N",
       {F, F, F, F, A, A, A, A, N, N},
       {F, F, F, A, A, A, N, F, N, F},
       {3.0 / 5, 2.0 / 3, 1.0 / 2},
       {3.0 / 4, 2.0 / 4, 1.0 / 2},
       {2.0 / 3, 4.0 / 7, 1.0 / 2},
       13.0 / 21},
      // FAVOR never predicted, no gold NONE.
      // AGAINST predicted 3 times, 2 correct, 3 gold.
      {"no-favor-predicted",
       {F, F, A, A, A},
       {A, N, A, A, N},
       {0, 2.0 / 3, 0},
       {0, 2.0 / 3, 0},
       {0, 2.0 / 3, 0},
       1.0 / 3},
      {"mostly-none",
       {F, A, N, N, N, F},
       {F, F, N, A, N, N},
       {1.0 / 2, 0, 2.0 / 3},
       {1.0 / 2, 0, 2.0 / 3},
       {1.0 / 2, 0, 2.0 / 3},
       1.0 / 4},
  };
}

inline stancekit::LabeledVector doc(std::string id, std::vector<std::pair<std::string, double>> f,
                                    StanceLabel l) {
  stancekit::LabeledVector v{std::move(id), {}, l};
  for (auto& [k, x] : f) v.features.add(k, x);
  return v;
}

// Six documents, two per class. "f" takes 2,1 | 0,0 | 0,1.
// x = 2 1 0 0 0 1, n = 6, sum x = 4, sum x^2 = 6.
// FAVOR: n*sum(xy) - sum(x)*sum(y) = 18 - 8 = 10; n*sum(x^2) - 16 = 20; n*2 - 4 = 8.
// |r| = 10 / sqrt(160); AGAINST 8 / sqrt(160); NONE 2 / sqrt(160).
inline std::vector<stancekit::LabeledVector> pearson_docs() {
  return {doc("1", {{"f", 2}, {"fav", 1}}, F), doc("2", {{"f", 1}, {"fav", 1}}, F),
          doc("3", {{"k", 1}}, A),             doc("4", {{"k", 1}}, A),
          doc("5", {{"k", 1}}, N),             doc("6", {{"f", 1}, {"k", 1}}, N)};
}
inline const double kPearsonF = 10.0 / std::sqrt(160.0);

// Balanced binary data: "aligned" exactly on FAVOR, "const" everywhere,
// "indep" on one document of each class.
inline std::vector<stancekit::LabeledVector> gain_docs() {
  return {doc("1", {{"aligned", 1}, {"const", 1}, {"indep", 1}}, F),
          doc("2", {{"aligned", 1}, {"const", 1}}, F),
          doc("3", {{"const", 1}, {"indep", 1}}, A),
          doc("4", {{"const", 1}}, A)};
}

// Three classes, two each; "fav" present on FAVOR only. H(class) = log2 3,
// H(class|split) = 4/6 * 1, split entropy = H(1/3, 2/3) = log2 3 - 2/3, so 1.
// "af" present on FAVOR and AGAINST: split entropy H(2/3,1/3) again,
// H(class|split) = 4/6 * 1, so also 1. "one" present on doc 1 only:
// H(cond) = 5/6 * H(1/5, 2/5, 2/5); split entropy H(1/6, 5/6).
inline std::vector<stancekit::LabeledVector> gain3_docs() {
  return {doc("1", {{"fav", 1}, {"af", 1}, {"one", 1}}, F), doc("2", {{"fav", 1}, {"af", 1}}, F),
          doc("3", {{"af", 1}}, A),                          doc("4", {{"af", 1}}, A),
          doc("5", {{"n", 1}}, N),                           doc("6", {{"n", 1}}, N)};
}

inline double gain3_one() {
  const double h_class = std::log2(3.0);
  const double h_off = -(0.2 * std::log2(0.2) + 2 * 0.4 * std::log2(0.4));
  const double iv = -(1.0 / 6 * std::log2(1.0 / 6) + 5.0 / 6 * std::log2(5.0 / 6));
  return (h_class - 5.0 / 6 * h_off) / iv;
}

inline double score_of(const stancekit::SelectionReport& r, const std::string& name) {
  for (const auto& [n, s] : r.ranked)
    if (n == name) return s;
  return -1;
}

}  // namespace hand
