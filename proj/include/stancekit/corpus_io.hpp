#pragma once

#include <filesystem>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "normalize.hpp"
#include "text.hpp"
#include "types.hpp"

namespace stancekit {

using ParseMap = std::map<std::string, Parse>;

struct TopicDocument {
  std::string topic;
  std::string text;
};

namespace detail {

inline std::string location(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line);
}

inline const nlohmann::json* optional_string_field(const nlohmann::json& obj,
                                                   const char* key,
                                                   const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return nullptr;
  if (!it->is_string())
    throw Error(ErrorCode::parse, where + ": field '" + key + "' must be a string");
  return &*it;
}

inline nlohmann::json parse_json_object(const std::string& line,
                                        const std::string& where) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::parse, where + ": malformed JSON (byte " +
                                      std::to_string(e.byte) + ")");
  }
  if (!obj.is_object())
    throw Error(ErrorCode::parse, where + ": record is not a JSON object");
  return obj;
}

inline void check_field_text(const std::string& s, const std::string& what) {
  if (s.find_first_of("\t\n\r") != std::string::npos)
    throw Error(ErrorCode::validation, what + " contains tab or newline");
}

}  // namespace detail

/// Parses one JSONL record; `where` prefixes error messages.
inline Tweet parse_tweet_record(const std::string& line, const std::string& where) {
  const nlohmann::json obj = detail::parse_json_object(line, where);
  Tweet t;
  const auto* id = detail::optional_string_field(obj, "id", where);
  const auto* txt = detail::optional_string_field(obj, "text", where);
  if (!id || id->get_ref<const std::string&>().empty())
    throw Error(ErrorCode::parse, where + ": missing or empty 'id'");
  if (!txt || txt->get_ref<const std::string&>().empty())
    throw Error(ErrorCode::parse, where + ": missing or empty 'text'");
  t.id = id->get<std::string>();
  t.text = txt->get<std::string>();
  if (const auto* topic = detail::optional_string_field(obj, "topic", where))
    t.topic = topic->get<std::string>();
  if (const auto* stance = detail::optional_string_field(obj, "stance", where)) {
    auto label = parse_label(stance->get_ref<const std::string&>());
    if (!label)
      throw Error(ErrorCode::parse, where + ": unknown stance '" +
                                        stance->get<std::string>() + "'");
    t.gold_stance = *label;
  }
  if (const auto* source = detail::optional_string_field(obj, "source", where)) {
    auto src = parse_source(source->get_ref<const std::string&>());
    if (!src)
      throw Error(ErrorCode::parse, where + ": unknown source '" +
                                        source->get<std::string>() + "'");
    t.source = *src;
  }
  if (t.topic.empty() && t.source != TweetSource::random_pool)
    throw Error(ErrorCode::parse, where + ": missing 'topic' for " +
                                      std::string(to_string(t.source)) + " tweet");
  return t;
}

/// One JSON object per line; blank lines are skipped. Rejects duplicate ids.
inline std::vector<Tweet> load_tweets(const std::filesystem::path& path) {
  std::vector<Tweet> tweets;
  std::unordered_set<std::string> ids;
  const auto lines = text::read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (text::trim(lines[i]).empty()) continue;
    const std::string where = detail::location(path, i + 1);
    Tweet t = parse_tweet_record(lines[i], where);
    if (!ids.insert(t.id).second)
      throw Error(ErrorCode::validation, where + ": duplicate tweet id '" + t.id + "'");
    tweets.push_back(std::move(t));
  }
  return tweets;
}

inline std::string tweet_to_json_line(const Tweet& t) {
  nlohmann::ordered_json obj;
  obj["id"] = t.id;
  obj["text"] = t.text;
  obj["topic"] = t.topic;
  if (t.gold_stance) obj["stance"] = std::string(to_string(*t.gold_stance));
  obj["source"] = std::string(to_string(t.source));
  try {
    return obj.dump();
  } catch (const nlohmann::json::type_error&) {
    throw Error(ErrorCode::validation, "tweet '" + t.id + "' is not valid UTF-8");
  }
}

inline void save_tweets(std::ostream& out, const std::vector<Tweet>& tweets) {
  for (const Tweet& t : tweets) out << tweet_to_json_line(t) << '\n';
}

inline void save_tweets(const std::filesystem::path& path,
                        const std::vector<Tweet>& tweets) {
  std::ostringstream os;
  save_tweets(os, tweets);
  text::write_file(path, os.str());
}

/// JSONL {"topic": str, "text": str}; other fields are ignored.
inline std::vector<TopicDocument> load_topic_documents(
    const std::filesystem::path& path) {
  std::vector<TopicDocument> docs;
  const auto lines = text::read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (text::trim(lines[i]).empty()) continue;
    const std::string where = detail::location(path, i + 1);
    const nlohmann::json obj = detail::parse_json_object(lines[i], where);
    const auto* topic = detail::optional_string_field(obj, "topic", where);
    const auto* txt = detail::optional_string_field(obj, "text", where);
    if (!topic || topic->get_ref<const std::string&>().empty() || !txt)
      throw Error(ErrorCode::parse, where + ": need non-empty 'topic' and 'text'");
    docs.push_back({topic->get<std::string>(), txt->get<std::string>()});
  }
  return docs;
}

// Parse interchange: blocks opened by "# id=<id>", one token per line as
// index<TAB>surface<TAB>normalized<TAB>pos<TAB>head. A head of "_" marks a
// token without an arc (left behind when hashtag stripping detaches it).

inline void write_parse_block(std::ostream& out, const std::string& id,
                              const std::vector<Token>& tokens,
                              const std::vector<DepArc>& arcs) {
  detail::check_field_text(id, "tweet id");
  validate_parse(tokens, arcs, "tweet " + id);
  std::vector<std::optional<int>> heads(tokens.size());
  for (const DepArc& a : arcs) heads[static_cast<std::size_t>(a.child - 1)] = a.head;
  out << "# id=" << id << '\n';
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    for (const auto* f : {&t.surface, &t.normalized, &t.pos}) {
      if (f->empty())
        throw Error(ErrorCode::validation, "tweet " + id + ": empty token field");
      detail::check_field_text(*f, "token field");
    }
    out << t.index << '\t' << t.surface << '\t' << t.normalized << '\t' << t.pos
        << '\t';
    if (heads[i])
      out << *heads[i];
    else
      out << '_';
    out << '\n';
  }
}

inline void save_parses(std::ostream& out, const ParseMap& parses) {
  bool first = true;
  for (const auto& [id, p] : parses) {
    if (!first) out << '\n';
    first = false;
    write_parse_block(out, id, p.tokens, p.arcs);
  }
}

inline void save_parses(std::ostream& out, const std::vector<ParsedTweet>& parsed) {
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    if (i) out << '\n';
    write_parse_block(out, parsed[i].tweet.id, parsed[i].tokens, parsed[i].arcs);
  }
}

template <typename Parses>
inline void save_parses(const std::filesystem::path& path, const Parses& parses) {
  std::ostringstream os;
  save_parses(os, parses);
  text::write_file(path, os.str());
}

inline ParseMap read_parses(std::istream& in, const std::string& name) {
  ParseMap out;
  std::string line;
  std::size_t lineno = 0;
  std::string current_id;
  std::size_t block_line = 0;
  Parse current;
  bool in_block = false;

  auto finish = [&]() {
    if (!in_block) return;
    const std::string where =
        name + ":" + std::to_string(block_line) + " (id=" + current_id + ")";
    validate_parse(current.tokens, current.arcs, where);
    if (!out.emplace(current_id, std::move(current)).second)
      throw Error(ErrorCode::validation, where + ": duplicate parse block");
    current = {};
    in_block = false;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) {
      finish();
      continue;
    }
    const std::string where = name + ":" + std::to_string(lineno);
    if (line.starts_with("# id=")) {
      finish();
      current_id = line.substr(5);
      if (current_id.empty())
        throw Error(ErrorCode::parse, where + ": empty id in block header");
      block_line = lineno;
      in_block = true;
      continue;
    }
    if (!in_block)
      throw Error(ErrorCode::parse, where + ": token line outside a '# id=' block");
    const auto fields = text::split(line, '\t');
    if (fields.size() != 5)
      throw Error(ErrorCode::parse, where + " (id=" + current_id + "): expected 5 fields, got " +
                                        std::to_string(fields.size()));
    Token tok;
    if (!text::parse_int(fields[0], tok.index))
      throw Error(ErrorCode::parse, where + ": bad token index");
    if (tok.index != static_cast<int>(current.tokens.size()) + 1)
      throw Error(ErrorCode::parse, where + " (id=" + current_id +
                                        "): non-contiguous token index " +
                                        std::string(fields[0]));
    tok.surface = std::string(fields[1]);
    tok.normalized = std::string(fields[2]);
    tok.pos = std::string(fields[3]);
    if (tok.surface.empty() || tok.normalized.empty() || tok.pos.empty())
      throw Error(ErrorCode::parse, where + ": empty token field");
    if (fields[4] != "_") {
      int head = 0;
      if (!text::parse_int(fields[4], head))
        throw Error(ErrorCode::parse, where + ": bad head value");
      current.arcs.push_back({head, tok.index});
    }
    current.tokens.push_back(std::move(tok));
  }
  finish();
  return out;
}

inline ParseMap load_parses(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  return read_parses(in, path.string());
}

/// External parses where available, the fallback parse otherwise. Order and
/// cardinality follow `tweets`.
inline std::vector<ParsedTweet> attach_parses(const std::vector<Tweet>& tweets,
                                              const ParseMap& parses,
                                              const Normalizer& normalizer = {}) {
  std::vector<ParsedTweet> out;
  out.reserve(tweets.size());
  for (const Tweet& t : tweets) {
    auto it = parses.find(t.id);
    if (it == parses.end()) {
      out.push_back(fallback_parsed_tweet(t, normalizer));
    } else {
      out.push_back({t, it->second.tokens, it->second.arcs, false});
    }
  }
  return out;
}

}  // namespace stancekit
