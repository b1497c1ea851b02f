#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "error.hpp"
#include "naive_bayes.hpp"
#include "text.hpp"

namespace stancekit {

enum class SelectionMethod { none, correlation, gainratio };

inline std::string_view to_string(SelectionMethod m) noexcept {
  switch (m) {
    case SelectionMethod::none: return "none";
    case SelectionMethod::correlation: return "correlation";
    case SelectionMethod::gainratio: return "gainratio";
  }
  return "none";
}

inline SelectionMethod parse_selection(std::string_view s) {
  const std::string n = text::to_lower(s);
  if (n == "none") return SelectionMethod::none;
  if (n == "correlation") return SelectionMethod::correlation;
  if (n == "gainratio" || n == "gain_ratio") return SelectionMethod::gainratio;
  throw Error(ErrorCode::invalid_argument, "unknown selection method '" + std::string(s) + "'");
}

inline constexpr std::size_t kDefaultSelectK = 2000;

struct SelectionReport {
  SelectionMethod method = SelectionMethod::none;
  std::vector<std::pair<std::string, double>> ranked;  // score non-increasing
  std::size_t k = 0;
};

namespace detail {

struct FeatureStats {
  double sum = 0, sum_sq = 0;
  std::array<double, 3> sum_by_class{};       // sum of values per class
  std::array<std::size_t, 3> present_by_class{};  // documents with value > 0
};

inline std::map<std::string, FeatureStats> collect_stats(const std::vector<LabeledVector>& ex,
                                                         std::array<std::size_t, 3>& class_n) {
  class_n = {};
  std::map<std::string, FeatureStats> stats;
  for (const auto& e : ex) {
    const auto c = label_index(e.label);
    ++class_n[c];
    for (const auto& [name, v] : e.features) {
      auto& s = stats[name];
      s.sum += v;
      s.sum_sq += v * v;
      s.sum_by_class[c] += v;
      if (v > 0) ++s.present_by_class[c];
    }
  }
  return stats;
}

inline SelectionReport rank(SelectionMethod method,
                            std::vector<std::pair<std::string, double>> scored) {
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  SelectionReport r{method, std::move(scored), 0};
  r.k = r.ranked.size();
  return r;
}

inline void check_rankable(const std::vector<LabeledVector>& ex) {
  if (ex.size() < 2 || present_classes(ex).size() < 2)
    throw Error(ErrorCode::invalid_argument,
                "feature ranking needs at least 2 examples from 2 classes");
}

inline double entropy_bits(std::initializer_list<double> counts) {
  double total = 0;
  for (double c : counts) total += c;
  if (total <= 0) return 0;
  double h = 0;
  for (double c : counts)
    if (c > 0) h -= (c / total) * std::log2(c / total);
  return h;
}

}  // namespace detail

/// Score = max over classes of |Pearson r| between the feature's values and
/// the one-vs-rest class indicator; 0 when either side is constant.
inline SelectionReport rank_by_correlation(const std::vector<LabeledVector>& examples) {
  detail::check_rankable(examples);
  std::array<std::size_t, 3> class_n{};
  const auto stats = detail::collect_stats(examples, class_n);
  const double n = static_cast<double>(examples.size());
  std::vector<std::pair<std::string, double>> scored;
  for (const auto& [name, s] : stats) {
    const double var_x = n * s.sum_sq - s.sum * s.sum;
    double best = 0;
    if (var_x > 1e-12 * n * s.sum_sq) {
      for (std::size_t c = 0; c < 3; ++c) {
        const double ny = static_cast<double>(class_n[c]);
        const double var_y = n * ny - ny * ny;
        if (var_y <= 0) continue;
        const double cov = n * s.sum_by_class[c] - s.sum * ny;
        best = std::max(best, std::abs(cov) / std::sqrt(var_x * var_y));
      }
    }
    scored.emplace_back(name, std::min(best, 1.0));
  }
  return detail::rank(SelectionMethod::correlation, std::move(scored));
}

/// Gain ratio of the presence/absence split, entropies in bits:
/// (H(class) - H(class | present)) / H(present); 0 when the split is degenerate.
inline SelectionReport rank_by_gain_ratio(const std::vector<LabeledVector>& examples) {
  detail::check_rankable(examples);
  std::array<std::size_t, 3> class_n{};
  const auto stats = detail::collect_stats(examples, class_n);
  const double n = static_cast<double>(examples.size());
  const double h_class = detail::entropy_bits(
      {double(class_n[0]), double(class_n[1]), double(class_n[2])});
  std::vector<std::pair<std::string, double>> scored;
  for (const auto& [name, s] : stats) {
    std::array<double, 3> on{}, off{};
    double n_on = 0;
    for (std::size_t c = 0; c < 3; ++c) {
      on[c] = static_cast<double>(s.present_by_class[c]);
      off[c] = static_cast<double>(class_n[c]) - on[c];
      n_on += on[c];
    }
    const double n_off = n - n_on;
    const double iv = detail::entropy_bits({n_on, n_off});
    double gr = 0;
    if (iv > 0) {
      const double h_cond = (n_on / n) * detail::entropy_bits({on[0], on[1], on[2]}) +
                            (n_off / n) * detail::entropy_bits({off[0], off[1], off[2]});
      gr = std::max(0.0, h_class - h_cond) / iv;
    }
    scored.emplace_back(name, gr);
  }
  return detail::rank(SelectionMethod::gainratio, std::move(scored));
}

inline SelectionReport rank_features(SelectionMethod method,
                                     const std::vector<LabeledVector>& examples) {
  switch (method) {
    case SelectionMethod::correlation: return rank_by_correlation(examples);
    case SelectionMethod::gainratio: return rank_by_gain_ratio(examples);
    case SelectionMethod::none: break;
  }
  throw Error(ErrorCode::invalid_argument, "rank_features called with method none");
}

/// The top-k names of a report.
inline std::unordered_set<std::string> top_features(const SelectionReport& report,
                                                    std::size_t k) {
  if (k == 0) throw Error(ErrorCode::invalid_argument, "k must be at least 1");
  std::unordered_set<std::string> keep;
  for (std::size_t i = 0; i < std::min(k, report.ranked.size()); ++i)
    keep.insert(report.ranked[i].first);
  return keep;
}

inline FeatureVector restrict_to(const FeatureVector& fv,
                                 const std::unordered_set<std::string>& keep) {
  return fv.filtered([&](const std::string& name) { return keep.contains(name); });
}

/// Restricts every vector to the report's top-k features.
inline std::vector<LabeledVector> select_features(const std::vector<LabeledVector>& examples,
                                                  const SelectionReport& report, std::size_t k) {
  const auto keep = top_features(report, k);
  std::vector<LabeledVector> out;
  out.reserve(examples.size());
  for (const auto& e : examples) out.push_back({e.id, restrict_to(e.features, keep), e.label});
  return out;
}

}  // namespace stancekit
