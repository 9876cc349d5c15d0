#include "trajregion/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace trajregion {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* expected) {
  throw Error(ErrorCode::invalid_parameter, "config key '" + key + "': expected " + expected + ", got '" + value + "'");
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size() || !std::isfinite(out)) bad_value(key, v, "a number");
  return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) bad_value(key, v, "a non-negative integer");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "on") return true;
  if (v == "false" || v == "0" || v == "off") return false;
  bad_value(key, v, "true or false");
}

template <class T>
nlohmann::ordered_json or_auto(const std::optional<T>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json("auto");
}

} // namespace

KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::invalid_parameter, "config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) throw Error(ErrorCode::invalid_parameter, "config line " + std::to_string(line_no) + ": empty key");
    kv[key] = trim(t.substr(eq + 1));
  }
  return kv;
}

KeyValues read_key_values_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open config '" + path + "'");
  return parse_key_values(in);
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "seed",          "reward_clusters",     "discover.m",          "discover.restarts",
      "discover.ig_floor", "discover.no_structure_ig", "discover.refine_radius", "init.n_samples", "init.bandwidth",
      "init.success_labels", "init.weighted_sampling", "init.radius_fraction", "opt.rule",
      "opt.lr",        "opt.max_steps",       "opt.tol",             "opt.alpha0",
      "opt.alpha0_scale", "opt.growth",       "opt.period",          "opt.alpha_max",
      "opt.radius_lr_scale", "opt.momentum",  "report.traces",
  };
  return keys;
}

RunConfig apply_config(RunConfig cfg, const KeyValues& kv) {
  auto& d = cfg.discovery;
  for (const auto& [key, v] : kv) {
    const bool is_auto = v == "auto";
    if (key == "seed") d.seed = to_uint(key, v);
    else if (key == "reward_clusters") cfg.reward_clusters = to_uint(key, v);
    else if (key == "discover.m") d.m = to_uint(key, v);
    else if (key == "discover.restarts") d.restarts = to_uint(key, v);
    else if (key == "discover.ig_floor") d.ig_floor = v == "off" ? std::nullopt : std::optional(to_double(key, v));
    else if (key == "discover.no_structure_ig") d.no_structure_ig = to_double(key, v);
    else if (key == "discover.refine_radius") d.refine_radius = to_bool(key, v);
    else if (key == "init.n_samples") d.init.n_samples = to_uint(key, v);
    else if (key == "init.bandwidth") d.init.bandwidth = is_auto ? std::nullopt : std::optional(to_double(key, v));
    else if (key == "init.success_labels") {
      cfg.success_values.clear();
      if (!is_auto) {
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ',')) cfg.success_values.push_back(to_double(key, trim(item)));
        if (cfg.success_values.empty()) bad_value(key, v, "auto or a comma-separated list of reward values");
      }
    } else if (key == "init.weighted_sampling") d.init.weighted_sampling = to_bool(key, v);
    else if (key == "init.radius_fraction") d.init_radius_fraction = to_double(key, v);
    else if (key == "opt.rule") d.opt.rule = parse_step_rule(v);
    else if (key == "opt.lr") d.opt.lr = is_auto ? std::nullopt : std::optional(to_double(key, v));
    else if (key == "opt.max_steps") d.opt.max_steps = to_uint(key, v);
    else if (key == "opt.tol") d.opt.tol = to_double(key, v);
    else if (key == "opt.alpha0") d.opt.alpha0 = is_auto ? std::nullopt : std::optional(to_double(key, v));
    else if (key == "opt.alpha0_scale") d.opt.alpha0_scale = to_double(key, v);
    else if (key == "opt.growth") d.opt.growth = to_double(key, v);
    else if (key == "opt.period") d.opt.period = is_auto ? std::nullopt : std::optional<std::size_t>(to_uint(key, v));
    else if (key == "opt.alpha_max") d.opt.alpha_max = is_auto ? std::nullopt : std::optional(to_double(key, v));
    else if (key == "opt.radius_lr_scale") d.opt.radius_lr_scale = to_double(key, v);
    else if (key == "opt.momentum") d.opt.momentum = to_double(key, v);
    else if (key == "report.traces") cfg.include_traces = to_bool(key, v);
    else throw Error(ErrorCode::invalid_parameter, "unknown config key '" + key + "'");
  }
  return cfg;
}

nlohmann::ordered_json config_snapshot(const RunConfig& cfg) {
  const auto& d = cfg.discovery;
  nlohmann::ordered_json j;
  j["seed"] = d.seed;
  j["reward_clusters"] = cfg.reward_clusters;
  j["discover.m"] = d.m;
  j["discover.restarts"] = d.restarts;
  j["discover.ig_floor"] = d.ig_floor ? nlohmann::ordered_json(*d.ig_floor) : nlohmann::ordered_json("off");
  j["discover.no_structure_ig"] = d.no_structure_ig;
  j["discover.refine_radius"] = d.refine_radius;
  j["init.n_samples"] = d.init.n_samples;
  j["init.bandwidth"] = or_auto(d.init.bandwidth);
  j["init.success_labels"] =
      cfg.success_values.empty() ? nlohmann::ordered_json("auto") : nlohmann::ordered_json(cfg.success_values);
  j["init.weighted_sampling"] = d.init.weighted_sampling;
  j["init.radius_fraction"] = d.init_radius_fraction;
  j["opt.rule"] = step_rule_name(d.opt.rule);
  j["opt.lr"] = or_auto(d.opt.lr);
  j["opt.max_steps"] = d.opt.max_steps;
  j["opt.tol"] = d.opt.tol;
  j["opt.alpha0"] = or_auto(d.opt.alpha0);
  j["opt.alpha0_scale"] = d.opt.alpha0_scale;
  j["opt.growth"] = d.opt.growth;
  j["opt.period"] = or_auto(d.opt.period);
  j["opt.alpha_max"] = or_auto(d.opt.alpha_max);
  j["opt.radius_lr_scale"] = d.opt.radius_lr_scale;
  j["opt.momentum"] = d.opt.momentum;
  j["report.traces"] = cfg.include_traces;
  return j;
}

std::vector<std::size_t> success_label_indices(const RunConfig& cfg, const RewardAlphabet& labels) {
  std::vector<std::size_t> out;
  for (double v : cfg.success_values) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < labels.size(); ++k)
      if (std::abs(labels.values[k] - v) < std::abs(labels.values[best] - v)) best = k;
    if (std::find(out.begin(), out.end(), best) == out.end()) out.push_back(best);
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace trajregion
