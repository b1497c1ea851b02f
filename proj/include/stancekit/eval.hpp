#pragma once

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include "error.hpp"
#include "text.hpp"
#include "types.hpp"

namespace stancekit {

struct ClassScores {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

struct EvalReport {
  std::array<ClassScores, 3> per_class{};  // by label_index
  double semeval_avg = 0;                  // mean F1 of FAVOR and AGAINST
  std::array<std::array<std::size_t, 3>, 3> confusion{};  // [gold][predicted]

  const ClassScores& operator[](StanceLabel l) const { return per_class[label_index(l)]; }
  double f1(StanceLabel l) const { return (*this)[l].f1; }
};

inline double safe_ratio(double num, double den) { return den == 0 ? 0.0 : num / den; }

/// Per-class precision/recall/F1 over the full test set (0/0 counts as 0);
/// the SemEval score averages the FAVOR and AGAINST F1 only.
inline EvalReport evaluate(const std::vector<StanceLabel>& predictions,
                           const std::vector<StanceLabel>& gold) {
  if (predictions.size() != gold.size())
    throw Error(ErrorCode::invalid_argument,
                "evaluate: " + std::to_string(predictions.size()) + " predictions vs " +
                    std::to_string(gold.size()) + " gold labels");
  if (gold.empty()) throw Error(ErrorCode::invalid_argument, "evaluate: empty input");
  EvalReport r;
  for (std::size_t i = 0; i < gold.size(); ++i)
    ++r.confusion[label_index(gold[i])][label_index(predictions[i])];
  for (std::size_t c = 0; c < 3; ++c) {
    double tp = static_cast<double>(r.confusion[c][c]);
    double predicted = 0, actual = 0;
    for (std::size_t o = 0; o < 3; ++o) {
      predicted += static_cast<double>(r.confusion[o][c]);
      actual += static_cast<double>(r.confusion[c][o]);
    }
    auto& s = r.per_class[c];
    s.precision = safe_ratio(tp, predicted);
    s.recall = safe_ratio(tp, actual);
    s.f1 = safe_ratio(2 * s.precision * s.recall, s.precision + s.recall);
  }
  r.semeval_avg = (r.f1(StanceLabel::favor) + r.f1(StanceLabel::against)) / 2.0;
  return r;
}

/// One output row: topic, config_name, favor_f, against_f, none_f,
/// semeval_avg, train_size, seed, strip_hashtags.
struct ReportRow {
  std::string topic;
  std::string config_name;
  EvalReport report;
  std::size_t train_size = 0;
  std::uint64_t seed = 0;
  bool strip_hashtags = false;
};

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << "topic,config_name,favor_f,against_f,none_f,semeval_avg,train_size,seed,strip_hashtags\n";
  for (const auto& r : rows) {
    out << csv_field(r.topic) << ',' << csv_field(r.config_name) << ','
        << text::format_fixed(r.report.f1(StanceLabel::favor)) << ','
        << text::format_fixed(r.report.f1(StanceLabel::against)) << ','
        << text::format_fixed(r.report.f1(StanceLabel::none)) << ','
        << text::format_fixed(r.report.semeval_avg) << ',' << r.train_size << ',' << r.seed
        << ',' << (r.strip_hashtags ? "true" : "false") << '\n';
  }
}

}  // namespace stancekit
