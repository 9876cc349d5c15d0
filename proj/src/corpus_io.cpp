#include "trajregion/corpus_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace trajregion {

using nlohmann::json;

namespace {

[[noreturn]] void fail(ErrorCode code, std::size_t line, const std::string& what) {
  throw Error(code, "line " + std::to_string(line) + ": " + what);
}

State parse_state(const json& j, std::size_t dim, std::size_t line, const std::string& id) {
  if (!j.is_array()) fail(ErrorCode::bad_schema, line, "state of '" + id + "' is not an array");
  if (j.size() != dim)
    fail(ErrorCode::dimension_mismatch, line,
         "trajectory '" + id + "' has a state of dimension " + std::to_string(j.size()) +
             ", header declares " + std::to_string(dim));
  State s;
  s.reserve(dim);
  for (const auto& x : j) {
    if (!x.is_number()) fail(ErrorCode::bad_schema, line, "non-numeric coordinate in '" + id + "'");
    s.push_back(x.get<double>());
  }
  return s;
}

} // namespace

Dataset read_corpus(std::istream& in) {
  std::string text;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  bool have_header = false;
  std::vector<Trajectory> trajectories;

  while (std::getline(in, text)) {
    ++line_no;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      fail(ErrorCode::bad_schema, line_no, std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) fail(ErrorCode::bad_schema, line_no, "record is not an object");

    if (!have_header) {
      if (j.value("format", std::string{}) != kCorpusFormat)
        fail(ErrorCode::bad_schema, line_no, "missing corpus header record");
      if (!j.contains("version") || !j["version"].is_number_integer() ||
          j["version"].get<int>() != kCorpusVersion)
        fail(ErrorCode::bad_schema, line_no, "unsupported corpus version");
      if (!j.contains("dim") || !j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0)
        fail(ErrorCode::bad_schema, line_no, "header needs a positive integer 'dim'");
      dim = j["dim"].get<std::size_t>();
      have_header = true;
      continue;
    }

    Trajectory t;
    if (!j.contains("id") || !j["id"].is_string())
      fail(ErrorCode::bad_schema, line_no, "record needs a string 'id'");
    t.id = j["id"].get<std::string>();
    if (!j.contains("reward") || !j["reward"].is_number())
      fail(ErrorCode::bad_schema, line_no, "record '" + t.id + "' needs a numeric 'reward'");
    t.reward = j["reward"].get<double>();
    if (!j.contains("states") || !j["states"].is_array() || j["states"].empty())
      fail(ErrorCode::bad_schema, line_no, "record '" + t.id + "' needs a non-empty 'states' array");
    for (const auto& s : j["states"]) t.states.push_back(parse_state(s, dim, line_no, t.id));
    if (j.contains("actions")) {
      if (!j["actions"].is_array())
        fail(ErrorCode::bad_schema, line_no, "'actions' of '" + t.id + "' is not an array");
      for (const auto& a : j["actions"]) t.actions.push_back(a.dump());
    }
    trajectories.push_back(std::move(t));
  }
  if (!have_header) fail(ErrorCode::bad_schema, line_no, "empty corpus (no header record)");

  try {
    return Dataset(std::move(trajectories), dim);
  } catch (const Error& e) {
    throw Error(e.code(), std::string("corpus: ") + e.what());
  }
}

Dataset read_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open corpus '" + path + "'");
  return read_corpus(in);
}

void write_corpus(std::ostream& out, const Dataset& dataset) {
  out << json{{"format", kCorpusFormat}, {"version", kCorpusVersion}, {"dim", dataset.dim()}}.dump()
      << '\n';
  for (const auto& t : dataset.trajectories()) {
    json rec;
    rec["id"] = t.id;
    rec["states"] = t.states;
    if (!t.actions.empty()) {
      json actions = json::array();
      for (const auto& a : t.actions) actions.push_back(json::parse(a));
      rec["actions"] = std::move(actions);
    }
    rec["reward"] = t.reward;
    out << rec.dump() << '\n';
  }
}

void write_corpus_file(const std::string& path, const Dataset& dataset) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io, "cannot write corpus '" + path + "'");
  write_corpus(out, dataset);
}

} // namespace trajregion
