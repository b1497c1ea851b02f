#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "feature_vector.hpp"
#include "text.hpp"
#include "types.hpp"

namespace stancekit {

struct LabeledVector {
  std::string id;
  FeatureVector features;
  StanceLabel label = StanceLabel::none;
};

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Prediction {
  StanceLabel label = StanceLabel::favor;
  std::array<double, 3> log_scores{kNegInf, kNegInf, kNegInf};  // by label_index

  /// Per-class posteriors (softmax of the log scores); untrained classes get 0.
  std::array<double, 3> posteriors() const {
    double top = kNegInf;
    for (double s : log_scores) top = std::max(top, s);
    std::array<double, 3> p{};
    double z = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      p[i] = log_scores[i] == kNegInf ? 0.0 : std::exp(log_scores[i] - top);
      z += p[i];
    }
    for (double& v : p) v /= z;
    return p;
  }
};

/// Multinomial naive Bayes with Laplace/Lidstone smoothing:
///   log P(c)   = ln(n_c / n)
///   log P(f|c) = ln((N_fc + alpha) / (N_c + alpha |V|))
class NbModel {
 public:
  NbModel() = default;

  const std::vector<StanceLabel>& classes() const noexcept { return classes_; }
  const std::vector<std::string>& vocabulary() const noexcept { return vocabulary_; }
  double alpha() const noexcept { return alpha_; }
  double log_prior(StanceLabel c) const { return log_prior_.at(slot(c)); }

  /// ln P(f|c); throws if f is outside the vocabulary or c untrained.
  double log_likelihood(StanceLabel c, const std::string& feature) const {
    auto it = index_.find(feature);
    if (it == index_.end())
      throw Error(ErrorCode::invalid_argument, "feature '" + feature + "' not in vocabulary");
    return log_likelihood_.at(slot(c))[it->second];
  }

  bool has_class(StanceLabel c) const {
    return std::find(classes_.begin(), classes_.end(), c) != classes_.end();
  }

  /// Features outside the vocabulary are ignored. Exact ties go to the
  /// earlier label in FAVOR < AGAINST < NONE.
  Prediction predict(const FeatureVector& fv) const {
    Prediction p;
    for (std::size_t k = 0; k < classes_.size(); ++k) {
      double s = log_prior_[k];
      for (const auto& [name, value] : fv) {
        auto it = index_.find(name);
        if (it != index_.end()) s += value * log_likelihood_[k][it->second];
      }
      p.log_scores[label_index(classes_[k])] = s;
    }
    double best = kNegInf;
    for (StanceLabel c : classes_) {
      const double s = p.log_scores[label_index(c)];
      if (s > best) {
        best = s;
        p.label = c;
      }
    }
    return p;
  }

  friend bool operator==(const NbModel& a, const NbModel& b) {
    return a.classes_ == b.classes_ && a.vocabulary_ == b.vocabulary_ &&
           a.alpha_ == b.alpha_ && a.log_prior_ == b.log_prior_ &&
           a.log_likelihood_ == b.log_likelihood_;
  }

  void save(std::ostream& out) const {
    std::vector<std::string> labels;
    for (auto c : classes_) labels.emplace_back(to_string(c));
    out << "# stancekit-nb alpha=" << text::format_exact(alpha_)
        << " labels=" << text::join(labels, ",") << '\n';
    for (std::size_t k = 0; k < classes_.size(); ++k)
      out << "prior\t" << to_string(classes_[k]) << '\t' << text::format_exact(log_prior_[k])
          << '\n';
    for (std::size_t k = 0; k < classes_.size(); ++k)
      for (std::size_t j = 0; j < vocabulary_.size(); ++j)
        out << to_string(classes_[k]) << '\t' << vocabulary_[j] << '\t'
            << text::format_exact(log_likelihood_[k][j]) << '\n';
  }

  static NbModel load(std::istream& in, const std::string& name) {
    NbModel m;
    std::string line;
    if (!std::getline(in, line) || !line.starts_with("# stancekit-nb "))
      throw Error(ErrorCode::parse, name + ":1: missing '# stancekit-nb' header");
    for (auto kv : text::split_whitespace(std::string_view(line).substr(15))) {
      if (kv.starts_with("alpha=")) {
        if (!text::parse_double(kv.substr(6), m.alpha_))
          throw Error(ErrorCode::parse, name + ":1: bad alpha");
      } else if (kv.starts_with("labels=")) {
        for (auto l : text::split(kv.substr(7), ',')) {
          auto label = parse_label(l);
          if (!label) throw Error(ErrorCode::parse, name + ":1: bad label");
          m.classes_.push_back(*label);
        }
      }
    }
    if (m.classes_.empty() || !(m.alpha_ > 0))
      throw Error(ErrorCode::parse, name + ":1: header needs alpha and labels");
    m.log_prior_.assign(m.classes_.size(), 0.0);
    m.log_likelihood_.assign(m.classes_.size(), {});
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      const std::string where = name + ":" + std::to_string(lineno);
      const auto f = text::split(line, '\t');
      double v = 0;
      if (f.size() != 3 || !text::parse_double(f[2], v))
        throw Error(ErrorCode::parse, where + ": expected 3 tab-separated fields");
      if (f[0] == "prior") {
        auto label = parse_label(f[1]);
        if (!label || !m.has_class(*label)) throw Error(ErrorCode::parse, where + ": bad class");
        m.log_prior_[m.slot(*label)] = v;
        continue;
      }
      auto label = parse_label(f[0]);
      if (!label || !m.has_class(*label)) throw Error(ErrorCode::parse, where + ": bad class");
      const std::size_t k = m.slot(*label);
      std::string feature(f[1]);
      auto it = m.index_.find(feature);
      if (it == m.index_.end()) {
        it = m.index_.emplace(feature, m.vocabulary_.size()).first;
        m.vocabulary_.push_back(feature);
      }
      auto& row = m.log_likelihood_[k];
      if (row.size() < m.vocabulary_.size()) row.resize(m.vocabulary_.size(), kNegInf);
      row[it->second] = v;
    }
    for (auto& row : m.log_likelihood_) {
      row.resize(m.vocabulary_.size(), kNegInf);
      for (double v : row)
        if (v == kNegInf) throw Error(ErrorCode::parse, name + ": incomplete likelihood table");
    }
    return m;
  }

  void save(const std::filesystem::path& path) const {
    std::ostringstream os;
    save(os);
    text::write_file(path, os.str());
  }

  static NbModel load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
    return load(in, path.string());
  }

 private:
  friend NbModel train_nb(const std::vector<LabeledVector>&, double,
                          const std::vector<StanceLabel>&);

  std::size_t slot(StanceLabel c) const {
    for (std::size_t k = 0; k < classes_.size(); ++k)
      if (classes_[k] == c) return k;
    throw Error(ErrorCode::invalid_argument,
                "class " + std::string(to_string(c)) + " not in model");
  }

  std::vector<StanceLabel> classes_;
  std::vector<std::string> vocabulary_;
  std::unordered_map<std::string, std::size_t> index_;
  double alpha_ = 1.0;
  std::vector<double> log_prior_;
  std::vector<std::vector<double>> log_likelihood_;
};

/// Trains over exactly `classes`; each needs at least one example. Examples with
/// other labels are rejected. Per-feature sums are taken over sorted values so
/// the model does not depend on example order.
inline NbModel train_nb(const std::vector<LabeledVector>& examples, double alpha,
                        const std::vector<StanceLabel>& classes = {kAllLabels.begin(),
                                                                   kAllLabels.end()}) {
  if (!(alpha > 0)) throw Error(ErrorCode::invalid_argument, "alpha must be positive");
  NbModel m;
  m.alpha_ = alpha;
  for (StanceLabel c : kAllLabels)
    if (std::find(classes.begin(), classes.end(), c) != classes.end()) m.classes_.push_back(c);
  if (m.classes_.empty()) throw Error(ErrorCode::invalid_argument, "no classes to train");

  const std::size_t C = m.classes_.size();
  std::vector<std::size_t> docs(C, 0);
  std::map<std::string, std::vector<std::vector<double>>> contributions;
  for (const auto& ex : examples) {
    auto pos = std::find(m.classes_.begin(), m.classes_.end(), ex.label);
    if (pos == m.classes_.end())
      throw Error(ErrorCode::invalid_argument,
                  "example label " + std::string(to_string(ex.label)) + " outside trained classes");
    const auto k = static_cast<std::size_t>(pos - m.classes_.begin());
    ++docs[k];
    for (const auto& [name, value] : ex.features) {
      auto& per_class = contributions[name];
      if (per_class.empty()) per_class.resize(C);
      per_class[k].push_back(value);
    }
  }
  for (std::size_t k = 0; k < C; ++k)
    if (docs[k] == 0)
      throw Error(ErrorCode::validation,
                  "class " + std::string(to_string(m.classes_[k])) + " has no training examples");

  const std::size_t V = contributions.size();
  std::vector<std::vector<double>> counts(C, std::vector<double>(V, 0.0));
  std::size_t j = 0;
  for (auto& [name, per_class] : contributions) {
    m.index_.emplace(name, j);
    m.vocabulary_.push_back(name);
    for (std::size_t k = 0; k < C; ++k) {
      auto& vals = per_class[k];
      std::sort(vals.begin(), vals.end());
      double s = 0;
      for (double v : vals) s += v;
      counts[k][j] = s;
    }
    ++j;
  }

  const double n = static_cast<double>(examples.size());
  m.log_prior_.resize(C);
  m.log_likelihood_.assign(C, std::vector<double>(V));
  for (std::size_t k = 0; k < C; ++k) {
    m.log_prior_[k] = std::log(static_cast<double>(docs[k]) / n);
    double mass = 0;
    for (double c : counts[k]) mass += c;
    const double denom = mass + alpha * static_cast<double>(V);
    for (std::size_t f = 0; f < V; ++f)
      m.log_likelihood_[k][f] = std::log((counts[k][f] + alpha) / denom);
  }
  return m;
}

/// Distinct labels present in `examples`, in label order.
inline std::vector<StanceLabel> present_classes(const std::vector<LabeledVector>& examples) {
  std::array<bool, 3> seen{};
  for (const auto& e : examples) seen[label_index(e.label)] = true;
  std::vector<StanceLabel> out;
  for (StanceLabel c : kAllLabels)
    if (seen[label_index(c)]) out.push_back(c);
  return out;
}

}  // namespace stancekit
