#pragma once

// Reference multinomial naive Bayes: parameters by direct counting, posteriors
// by enumerating P(c) * prod_f P(f|c)^x_f in linear space and normalizing.

#include <array>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <stancekit/stancekit.hpp>

namespace nb_oracle {

struct Params {
  std::vector<stancekit::StanceLabel> classes;
  std::set<std::string> vocab;
  std::map<stancekit::StanceLabel, long double> prior;
  std::map<std::pair<stancekit::StanceLabel, std::string>, long double> theta;
};

inline Params fit(const std::vector<stancekit::LabeledVector>& docs, long double alpha) {
  Params p;
  std::map<stancekit::StanceLabel, long double> n_c, mass;
  std::map<std::pair<stancekit::StanceLabel, std::string>, long double> count;
  for (const auto& d : docs) {
    n_c[d.label] += 1;
    for (const auto& [f, v] : d.features) {
      if (v <= 0) continue;
      p.vocab.insert(f);
      count[{d.label, f}] += v;
      mass[d.label] += v;
    }
  }
  for (auto c : stancekit::kAllLabels)
    if (n_c.contains(c)) p.classes.push_back(c);
  const long double V = static_cast<long double>(p.vocab.size());
  for (auto c : p.classes) {
    p.prior[c] = n_c[c] / static_cast<long double>(docs.size());
    for (const auto& f : p.vocab) p.theta[{c, f}] = (count[{c, f}] + alpha) / (mass[c] + alpha * V);
  }
  return p;
}

/// Posterior per label index; classes absent from training get 0.
inline std::array<long double, 3> posterior(const Params& p, const stancekit::FeatureVector& x) {
  std::array<long double, 3> joint{};
  long double z = 0;
  for (auto c : p.classes) {
    long double j = p.prior.at(c);
    for (const auto& [f, v] : x)
      if (p.vocab.contains(f)) j *= std::pow(p.theta.at({c, f}), static_cast<long double>(v));
    joint[stancekit::label_index(c)] = j;
    z += j;
  }
  for (auto& j : joint) j /= z;
  return joint;
}

}  // namespace nb_oracle
