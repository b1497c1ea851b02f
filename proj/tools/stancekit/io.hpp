#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <openssl/evp.h>

#include <stancekit/stancekit.hpp>

namespace stancekit::cli {

namespace fs = std::filesystem;

inline StanceLabel require_label(std::string_view s, const std::string& where) {
  if (auto l = parse_label(s)) return *l;
  throw Error(ErrorCode::parse, where + ": unknown label '" + std::string(s) + "'");
}

// Feature files: one example per line, `id<TAB>LABEL<TAB>name=value name=value ...`.
// Names never contain whitespace; the value follows the last '='.

inline void save_feature_file(std::ostream& out, const std::vector<LabeledVector>& rows) {
  for (const auto& r : rows) {
    out << r.id << '\t' << to_string(r.label) << '\t';
    bool first = true;
    for (const auto& [name, value] : r.features) {
      if (!first) out << ' ';
      first = false;
      out << name << '=' << text::format_exact(value);
    }
    out << '\n';
  }
}

inline std::vector<LabeledVector> read_feature_file(std::istream& in, const std::string& name) {
  std::vector<LabeledVector> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = name + ":" + std::to_string(lineno);
    const auto f = text::split(line, '\t');
    if (f.size() != 3) throw Error(ErrorCode::parse, where + ": expected id<TAB>label<TAB>features");
    LabeledVector lv;
    lv.id = std::string(f[0]);
    lv.label = require_label(f[1], where);
    for (auto item : text::split_whitespace(f[2])) {
      const auto eq = item.rfind('=');
      double v = 0;
      if (eq == std::string_view::npos || eq == 0 || !text::parse_double(item.substr(eq + 1), v) || v < 0)
        throw Error(ErrorCode::parse, where + ": bad feature '" + std::string(item) + "'");
      lv.features.set(std::string(item.substr(0, eq)), v);
    }
    out.push_back(std::move(lv));
  }
  return out;
}

inline std::vector<LabeledVector> load_feature_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  return read_feature_file(in, path.string());
}

inline void save_feature_file(const fs::path& path, const std::vector<LabeledVector>& rows) {
  std::ostringstream os;
  save_feature_file(os, rows);
  text::write_file(path, os.str());
}

// Predictions: `id<TAB>PREDICTED<TAB>GOLD`.
struct PredictionRow {
  std::string id;
  StanceLabel predicted;
  StanceLabel gold;
};

inline void save_predictions(const fs::path& path, const std::vector<PredictionRow>& rows) {
  std::ostringstream os;
  for (const auto& r : rows)
    os << r.id << '\t' << to_string(r.predicted) << '\t' << to_string(r.gold) << '\n';
  text::write_file(path, os.str());
}

inline std::vector<PredictionRow> load_predictions(const fs::path& path) {
  std::vector<PredictionRow> out;
  const auto lines = text::read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = text::split(lines[i], '\t');
    if (f.size() != 3)
      throw Error(ErrorCode::parse,
                  path.string() + ":" + std::to_string(i + 1) + ": expected id<TAB>predicted<TAB>gold");
    const std::string where = path.string() + ":" + std::to_string(i + 1);
    out.push_back({std::string(f[0]), require_label(f[1], where), require_label(f[2], where)});
  }
  return out;
}

inline std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::io, "sha256 failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

inline std::string sha256_file(const fs::path& p) { return sha256_hex(text::read_file(p)); }

/// Provenance written next to every output: command, seed, config digest and
/// input digests. No timestamps, so reruns produce identical manifests.
class Manifest {
 public:
  explicit Manifest(std::string command) { doc_["command"] = std::move(command); }

  void set(const std::string& key, nlohmann::ordered_json value) { doc_[key] = std::move(value); }
  void input(const std::string& role, const fs::path& p) {
    doc_["inputs"][role] = {{"path", p.filename().string()}, {"sha256", sha256_file(p)}};
  }
  void output(const fs::path& p) { doc_["outputs"].push_back(p.filename().string()); }

  std::string dump() const { return doc_.dump(2) + "\n"; }
  void write(const fs::path& path) const { text::write_file(path, dump()); }

 private:
  nlohmann::ordered_json doc_;
};

}  // namespace stancekit::cli
