#include "trajregion/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "trajregion/entropy.hpp"

namespace trajregion {

using ojson = nlohmann::ordered_json;

namespace {

ojson region_json(const Region& r) { return ojson{{"center", r.center}, {"radius", r.radius}}; }

Region region_from_json(const ojson& j) {
  if (!j.is_object() || !j.contains("center") || !j.contains("radius"))
    throw Error(ErrorCode::bad_schema, "region record needs 'center' and 'radius'");
  try {
    return Region{j.at("center").get<State>(), j.at("radius").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::bad_schema, std::string("malformed region record: ") + e.what());
  }
}

ojson trace_json(const OptimTrace& trace) {
  ojson rows = ojson::array();
  for (const auto& r : trace.records)
    rows.push_back({{"step", r.step}, {"alpha", r.alpha}, {"h_soft", r.h_soft}, {"h_hard", r.h_hard},
                    {"center", r.center}, {"radius", r.radius}, {"grad_norm", r.grad_norm}});
  return rows;
}

ojson parse_json_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, std::string("cannot open ") + what + " '" + path + "'");
  try {
    return ojson::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::bad_schema, std::string(what) + " '" + path + "' is not valid JSON: " + e.what());
  }
}

std::string format_center(const State& c) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << '(';
  for (std::size_t k = 0; k < c.size(); ++k) os << (k ? ", " : "") << c[k];
  os << ')';
  return os.str();
}

} // namespace

ojson report_to_json(const DiscoveryReport& report, const ReportContext& ctx) {
  ojson j;
  j["schema"] = kReportSchema;
  j["schema_version"] = kReportSchemaVersion;
  if (ctx.config) {
    j["seed"] = ctx.config->discovery.seed;
    j["config"] = config_snapshot(*ctx.config);
  }
  if (ctx.dataset) j["data"] = {{"path", ctx.data_path}, {"trajectories", ctx.dataset->size()}, {"dim", ctx.dataset->dim()}};
  if (ctx.labels) {
    j["reward_alphabet"] = {{"values", ctx.labels->values}, {"counts", ctx.labels->frequencies()}};
    ojson success = ojson::array();
    for (auto k : report.success_labels) success.push_back(ctx.labels->values[k]);
    j["success_rewards"] = success;
  }
  j["h_reward_nats"] = report.h_reward;
  j["h_reward_bits"] = nats_to_bits(report.h_reward);
  j["h_final_nats"] = report.h_final;
  j["ig_total_nats"] = report.h_reward - report.h_final;
  j["early_stop"] = report.early_stop;
  j["early_stop_note"] = "stage information-gain floor is an extension, off unless discover.ig_floor is set";
  j["no_structure"] = report.no_structure;

  ojson regions = ojson::array();
  for (const auto& r : report.regions) regions.push_back(region_json(r));
  j["regions"] = regions;

  const bool traces = ctx.config && ctx.config->include_traces;
  ojson stages = ojson::array();
  for (const auto& s : report.stages) {
    ojson st;
    st["stage"] = s.stage;
    st["h_before_nats"] = s.h_before;
    st["h_after_nats"] = s.h_after;
    st["ig_stage_nats"] = s.ig_stage;
    st["ig_stage_bits"] = nats_to_bits(s.ig_stage);
    st["ig_total_nats"] = s.ig_total;
    st["chosen_restart"] = s.chosen_restart ? ojson(*s.chosen_restart) : ojson("floor");
    st["chosen"] = region_json(s.chosen);
    st["floor_candidate"] = region_json(s.floor_candidate);
    st["floor_h_hard_nats"] = s.floor_h_hard;
    st["seed_pool"] = s.seed_pool;
    st["seed_bandwidth"] = s.seed_bandwidth;
    ojson restarts = ojson::array();
    for (const auto& r : s.restarts) {
      ojson rj;
      rj["index"] = r.index;
      rj["init"] = region_json(r.init);
      rj["init_density"] = r.init_density;
      rj["alpha0"] = r.settings.schedule.alpha0;
      rj["alpha_max"] = r.settings.schedule.alpha_max;
      rj["growth"] = r.settings.schedule.growth;
      rj["period"] = r.settings.schedule.period;
      rj["lr"] = r.settings.lr;
      rj["result"] = region_json(r.result);
      rj["h_hard_nats"] = r.h_hard;
      rj["best_step"] = r.best_step;
      rj["steps"] = r.steps;
      rj["final_alpha"] = r.final_alpha;
      rj["final_h_soft_nats"] = r.final_h_soft;
      rj["final_h_hard_nats"] = r.final_h_hard;
      if (traces) rj["trace"] = trace_json(r.trace);
      restarts.push_back(std::move(rj));
    }
    st["restarts"] = std::move(restarts);
    stages.push_back(std::move(st));
  }
  j["stages"] = std::move(stages);
  return j;
}

ojson read_report_file(const std::string& path) {
  ojson j = parse_json_file(path, "report");
  if (!j.is_object() || j.value("schema", std::string{}) != kReportSchema)
    throw Error(ErrorCode::bad_schema, "'" + path + "' is not a discovery report");
  if (j.value("schema_version", 0) != kReportSchemaVersion)
    throw Error(ErrorCode::bad_schema, "unsupported report schema version in '" + path + "'");
  return j;
}

std::vector<Region> report_regions(const ojson& report) {
  if (!report.contains("regions") || !report["regions"].is_array())
    throw Error(ErrorCode::bad_schema, "report has no 'regions' array");
  std::vector<Region> out;
  for (const auto& r : report["regions"]) out.push_back(region_from_json(r));
  return out;
}

std::string render_report_table(const ojson& report) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4);
  os << "H(R) = " << report.value("h_reward_nats", 0.0) << " nats (" << report.value("h_reward_bits", 0.0)
     << " bits)\n";
  os << std::left << std::setw(6) << "stage" << std::right << std::setw(11) << "H_before" << std::setw(11)
     << "H_after" << std::setw(11) << "IG_nats" << std::setw(11) << "IG_bits" << "  " << std::left << std::setw(28)
     << "center" << std::right << std::setw(9) << "radius" << '\n';
  for (const auto& st : report.at("stages")) {
    const Region chosen = region_from_json(st.at("chosen"));
    os << std::left << std::setw(6) << st.at("stage").get<std::size_t>() << std::right << std::setw(11)
       << st.at("h_before_nats").get<double>() << std::setw(11) << st.at("h_after_nats").get<double>()
       << std::setw(11) << st.at("ig_stage_nats").get<double>() << std::setw(11)
       << st.at("ig_stage_bits").get<double>() << "  " << std::left << std::setw(28) << format_center(chosen.center)
       << std::right << std::setw(9) << chosen.radius << '\n';
  }
  if (report.value("early_stop", false)) os << "early stop: last stage fell below the information-gain floor\n";
  if (report.value("no_structure", false)) os << "no structure: total information gain is at chance level\n";
  return os.str();
}

void write_points_csv(std::ostream& out, const Dataset& dataset) {
  for (std::size_t k = 0; k < dataset.dim(); ++k) out << 'x' << k + 1 << ',';
  out << "reward\n";
  out << std::setprecision(17);
  for (const auto& t : dataset.trajectories())
    for (const auto& s : t.states) {
      for (double x : s) out << x << ',';
      out << t.reward << '\n';
    }
}

void write_regions_csv(std::ostream& out, const std::vector<Region>& regions) {
  const std::size_t d = regions.empty() ? 0 : regions.front().center.size();
  for (std::size_t k = 0; k < d; ++k) out << "cx" << k + 1 << ',';
  out << "radius,stage\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < regions.size(); ++i) {
    for (double x : regions[i].center) out << x << ',';
    out << regions[i].radius << ',' << i + 1 << '\n';
  }
}

void write_trace_csv(std::ostream& out, const OptimTrace& trace) {
  const std::size_t d = trace.records.empty() ? 0 : trace.records.front().center.size();
  out << "step,alpha,h_soft,h_hard,";
  for (std::size_t k = 0; k < d; ++k) out << 'c' << k + 1 << ',';
  out << "radius,grad_norm\n";
  out << std::setprecision(17);
  for (const auto& r : trace.records) {
    out << r.step << ',' << r.alpha << ',' << r.h_soft << ',' << r.h_hard << ',';
    for (double x : r.center) out << x << ',';
    out << r.radius << ',' << r.grad_norm << '\n';
  }
}

ojson truth_to_json(const SynthInstance& instance) {
  const auto& s = instance.spec;
  ojson regions = ojson::array();
  for (const auto& r : s.truth) regions.push_back(region_json(r));
  return ojson{{"schema", kTruthSchema},        {"schema_version", 1},
               {"task", task_kind_name(s.kind)}, {"dim", s.dim},
               {"horizon", s.horizon},           {"trajectories", s.n_traj},
               {"step_scale", s.step_scale},     {"label_noise", s.label_noise},
               {"null_success_rate", s.null_success_rate}, {"seed", s.seed},
               {"success_fraction", instance.success_fraction}, {"regions", regions}};
}

TaskSpec read_truth_file(const std::string& path) {
  const ojson j = parse_json_file(path, "truth file");
  if (!j.is_object() || j.value("schema", std::string{}) != kTruthSchema)
    throw Error(ErrorCode::bad_schema, "'" + path + "' is not a truth file");
  try {
    TaskSpec s;
    s.kind = parse_task_kind(j.at("task").get<std::string>());
    s.dim = j.at("dim").get<std::size_t>();
    s.horizon = j.at("horizon").get<std::size_t>();
    s.n_traj = j.at("trajectories").get<std::size_t>();
    s.step_scale = j.at("step_scale").get<double>();
    s.label_noise = j.at("label_noise").get<double>();
    s.null_success_rate = j.at("null_success_rate").get<double>();
    s.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& r : j.at("regions")) s.truth.push_back(region_from_json(r));
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::bad_schema, "malformed truth file '" + path + "': " + e.what());
  }
}

double region_accuracy(const Dataset& dataset, const RewardAlphabet& labels, const std::vector<Region>& regions) {
  const auto table = estimate_joint(hard_memberships(dataset, regions), labels);
  double correct = 0.0;
  for (std::size_t a = 0; a < table.assignments(); ++a) {
    double best = 0.0;
    for (std::size_t k = 0; k < table.rewards; ++k) best = std::max(best, table.at(a, k));
    correct += best;
  }
  return correct;
}

EvalResult evaluate_regions(const Dataset& dataset, const RewardAlphabet& labels, const std::vector<Region>& found,
                            const std::vector<Region>& truth) {
  EvalResult e;
  e.h_reward = marginal_entropy(labels);
  e.h_found = hard_conditional_entropy(dataset, labels, found);
  e.ig_found = e.h_reward - e.h_found;
  e.accuracy = region_accuracy(dataset, labels, found);
  e.h_truth = hard_conditional_entropy(dataset, labels, truth);
  e.truth_accuracy = region_accuracy(dataset, labels, truth);
  for (const auto& t : truth) {
    double best = HUGE_VAL;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < found.size(); ++i) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < t.center.size(); ++k)
        d2 += (t.center[k] - found[i].center[k]) * (t.center[k] - found[i].center[k]);
      if (std::sqrt(d2) < best) {
        best = std::sqrt(d2);
        idx = i;
      }
    }
    e.center_error.push_back(best);
    e.matched.push_back(idx);
  }
  return e;
}

ojson eval_to_json(const EvalResult& e) {
  ojson matches = ojson::array();
  for (std::size_t i = 0; i < e.center_error.size(); ++i)
    matches.push_back({{"truth_region", i}, {"found_region", e.matched[i]}, {"center_distance", e.center_error[i]}});
  return ojson{{"h_reward_nats", e.h_reward},   {"h_found_nats", e.h_found},
               {"ig_found_nats", e.ig_found},   {"ig_found_bits", nats_to_bits(e.ig_found)},
               {"accuracy", e.accuracy},        {"h_truth_nats", e.h_truth},
               {"truth_accuracy", e.truth_accuracy}, {"matches", matches}};
}

} // namespace trajregion
