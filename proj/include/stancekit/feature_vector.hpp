#pragma once

#include <map>
#include <string>
#include <string_view>

#include "error.hpp"

namespace stancekit {

/// Sparse, ordered map from namespaced feature name ("u:pro", "dep:ROOT_w") to a
/// strictly positive value. Zero entries are never stored.
class FeatureVector {
 public:
  using Map = std::map<std::string, double, std::less<>>;

  void add(std::string_view name, double value = 1.0) {
    if (value < 0)
      throw Error(ErrorCode::invalid_argument,
                  "negative value for feature '" + std::string(name) + "'");
    if (value == 0) return;
    auto it = values_.find(name);
    if (it == values_.end())
      values_.emplace(std::string(name), value);
    else
      it->second += value;
  }

  void set(std::string_view name, double value) {
    values_.erase(std::string(name));
    add(name, value);
  }

  void merge(const FeatureVector& other) {
    for (const auto& [k, v] : other.values_) add(k, v);
  }

  double get(std::string_view name) const {
    auto it = values_.find(name);
    return it == values_.end() ? 0.0 : it->second;
  }

  bool contains(std::string_view name) const { return values_.find(name) != values_.end(); }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double total() const noexcept {
    double t = 0;
    for (const auto& kv : values_) t += kv.second;
    return t;
  }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }
  const Map& entries() const noexcept { return values_; }

  template <typename Pred>
  FeatureVector filtered(Pred keep) const {
    FeatureVector out;
    for (const auto& [k, v] : values_)
      if (keep(k)) out.values_.emplace(k, v);
    return out;
  }

  FeatureVector scaled(double factor) const {
    FeatureVector out;
    for (const auto& [k, v] : values_) out.add(k, v * factor);
    return out;
  }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  Map values_;
};

/// Namespace of a feature name: everything before the first ':'.
inline std::string_view feature_namespace(std::string_view name) {
  return name.substr(0, name.find(':'));
}

}  // namespace stancekit
