// trajregion command-line tool: gen, discover, oracle, eval, report.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "trajregion/config.hpp"
#include "trajregion/corpus_io.hpp"
#include "trajregion/discovery.hpp"
#include "trajregion/oracle.hpp"
#include "trajregion/report.hpp"
#include "trajregion/reward_discretize.hpp"
#include "trajregion/synth.hpp"

namespace fs = std::filesystem;
using namespace trajregion;
using ojson = nlohmann::ordered_json;

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
  case ErrorCode::degenerate_labels: return 3;
  case ErrorCode::seeding_failure: return 4;
  default: return 2;
  }
}

void print_error(std::string_view code, std::string msg) {
  std::replace(msg.begin(), msg.end(), '\n', ' ');
  std::cerr << "error code=" << code << ": " << msg << '\n';
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write '" + path + "'");
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  if (!out) throw Error(ErrorCode::io, "write failed for '" + path + "'");
}

RewardAlphabet labels_for(const Dataset& dataset, std::size_t clusters) {
  const auto rewards = dataset.rewards();
  const bool constant = std::all_of(rewards.begin(), rewards.end(), [&](double r) { return r == rewards.front(); });
  if (constant) throw Error(ErrorCode::degenerate_labels, "degenerate labels: every trajectory has the same reward");
  RewardAlphabet labels = discretize_rewards(rewards, clusters);
  if (labels.size() < 2 || marginal_entropy(labels) == 0.0)
    throw Error(ErrorCode::degenerate_labels, "degenerate labels: every trajectory has the same reward");
  return labels;
}

// ---- gen ------------------------------------------------------------------

struct GenArgs {
  std::string task = "paint";
  std::size_t dim = 2;
  std::optional<std::size_t> traj, horizon;
  std::optional<double> noise, step;
  std::uint64_t seed = 0;
  std::string out;
  std::string truth;
};

int run_gen(const GenArgs& a) {
  TaskSpec spec = default_task(parse_task_kind(a.task), a.dim);
  spec.seed = a.seed;
  if (a.traj) spec.n_traj = *a.traj;
  if (a.horizon) spec.horizon = *a.horizon;
  if (a.noise) spec.label_noise = *a.noise;
  if (a.step) spec.step_scale = *a.step;
  const SynthInstance inst = generate_task(spec);
  write_corpus_file(a.out, inst.dataset);
  const std::string truth = a.truth.empty() ? fs::path(a.out).replace_extension(".truth.json").string() : a.truth;
  write_text(truth, truth_to_json(inst).dump(2) + "\n");
  std::cout << "wrote " << inst.dataset.size() << " trajectories to " << a.out << " (success fraction "
            << inst.success_fraction << "), truth to " << truth << '\n';
  return 0;
}

// ---- discover -------------------------------------------------------------

struct DiscoverArgs {
  std::string data, out, config, trace_dir;
  std::optional<std::size_t> m, restarts, jobs, reward_clusters;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> set;
};

int run_discover(const DiscoverArgs& a) {
  KeyValues kv;
  if (!a.config.empty()) kv = read_key_values_file(a.config);
  for (const auto& s : a.set) {
    std::istringstream line(s);
    for (auto& [k, v] : parse_key_values(line)) kv[k] = v;
  }
  if (a.seed) kv["seed"] = std::to_string(*a.seed);
  if (a.m) kv["discover.m"] = std::to_string(*a.m);
  if (a.restarts) kv["discover.restarts"] = std::to_string(*a.restarts);
  if (a.reward_clusters) kv["reward_clusters"] = std::to_string(*a.reward_clusters);
  RunConfig cfg = apply_config(RunConfig{}, kv);

  const Dataset dataset = read_corpus_file(a.data);
  const RewardAlphabet labels = labels_for(dataset, cfg.reward_clusters);

  DiscoveryConfig dc = cfg.discovery;
  dc.init.success_labels = success_label_indices(cfg, labels);
  dc.jobs = a.jobs.value_or(1);
  dc.keep_traces = cfg.include_traces || !a.trace_dir.empty();
  const DiscoveryReport report = discover(dataset, labels, dc);

  const ReportContext ctx{a.data, &dataset, &labels, &cfg};
  write_text(a.out, report_to_json(report, ctx).dump(2) + "\n");

  if (!a.trace_dir.empty()) {
    fs::create_directories(a.trace_dir);
    for (const auto& st : report.stages)
      for (const auto& r : st.restarts) {
        auto out = open_out((fs::path(a.trace_dir) / ("stage" + std::to_string(st.stage) + "_restart" +
                                                      std::to_string(r.index) + ".csv")).string());
        write_trace_csv(out, r.trace);
      }
  }
  std::cout << "H(R) = " << report.h_reward << " nats, H(R|M) = " << report.h_final << " nats, "
            << report.regions.size() << " region(s) -> " << a.out << '\n';
  return 0;
}

// ---- oracle ---------------------------------------------------------------

struct OracleArgs {
  std::string data, frozen, out;
  std::size_t radii = 32;
  std::size_t jobs = 1;
  std::size_t reward_clusters = 2;
};

int run_oracle(const OracleArgs& a) {
  const Dataset dataset = read_corpus_file(a.data);
  const RewardAlphabet labels = labels_for(dataset, a.reward_clusters);
  std::vector<Region> frozen;
  if (!a.frozen.empty()) frozen = report_regions(read_report_file(a.frozen));
  for (const auto& r : frozen) check_region(r, dataset.dim());

  const auto centers = all_states(dataset);
  const auto radii = geometric_radii(RadiusBounds::for_dataset(dataset), a.radii);
  const GridResult g = grid_search(dataset, labels, frozen, centers, radii, a.jobs);

  if (!a.out.empty()) {
    auto out = open_out(a.out);
    out.precision(17);
    out << "center";
    for (std::size_t i = 1; i <= dataset.dim(); ++i) out << ",x" << i;
    out << ",radius,h_hard\n";
    for (std::size_t c = 0; c < g.centers.size(); ++c)
      for (std::size_t r = 0; r < g.radii.size(); ++r) {
        out << c;
        for (double x : g.centers[c]) out << ',' << x;
        out << ',' << g.radii[r] << ',' << g.at(c, r) << '\n';
      }
  }
  ojson j;
  j["frozen"] = frozen.size();
  j["candidates"] = g.centers.size() * g.radii.size();
  j["best"] = {{"center", g.best.center}, {"radius", g.best.radius}};
  j["h_hard_nats"] = g.best_h_hard;
  std::cout << j.dump(2) << '\n';
  return 0;
}

// ---- eval -----------------------------------------------------------------

struct EvalArgs {
  std::string report, truth, data, out;
};

int run_eval(const EvalArgs& a) {
  const ojson rep = read_report_file(a.report);
  std::string data = a.data;
  if (data.empty()) {
    if (!rep.contains("data") || !rep["data"].contains("path"))
      throw Error(ErrorCode::bad_schema, "report has no data.path; pass --data");
    data = rep["data"]["path"].get<std::string>();
  }
  std::size_t clusters = 2;
  if (rep.contains("config") && rep["config"].contains("reward_clusters"))
    clusters = rep["config"]["reward_clusters"].get<std::size_t>();

  const Dataset dataset = read_corpus_file(data);
  const RewardAlphabet labels = labels_for(dataset, clusters);
  const TaskSpec truth = read_truth_file(a.truth);
  const auto found = report_regions(rep);
  for (const auto& r : found) check_region(r, dataset.dim());
  for (const auto& r : truth.truth) check_region(r, dataset.dim());

  const std::string text = eval_to_json(evaluate_regions(dataset, labels, found, truth.truth)).dump(2) + "\n";
  if (a.out.empty()) std::cout << text;
  else write_text(a.out, text);
  return 0;
}

// ---- report ---------------------------------------------------------------

struct ReportArgs {
  std::string report, data, out_dir;
};

int run_report(const ReportArgs& a) {
  const ojson rep = read_report_file(a.report);
  std::cout << render_report_table(rep);
  if (a.out_dir.empty()) return 0;

  fs::create_directories(a.out_dir);
  const auto regions = report_regions(rep);
  {
    auto out = open_out((fs::path(a.out_dir) / "regions.csv").string());
    write_regions_csv(out, regions);
  }
  std::string data = a.data;
  if (data.empty() && rep.contains("data") && rep["data"].contains("path"))
    data = rep["data"]["path"].get<std::string>();
  if (!data.empty()) {
    const Dataset dataset = read_corpus_file(data);
    auto out = open_out((fs::path(a.out_dir) / "points.csv").string());
    write_points_csv(out, dataset);
  }
  std::cout << "plot data written to " << a.out_dir << '\n';
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Find state-space regions whose visits explain trajectory rewards"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a synthetic corpus and its truth sidecar");
  g->add_option("--task", gen.task, "paint | door | null")->capture_default_str();
  g->add_option("--dim", gen.dim, "State dimension")->capture_default_str();
  g->add_option("--traj", gen.traj, "Number of trajectories");
  g->add_option("--horizon", gen.horizon, "States per trajectory");
  g->add_option("--noise", gen.noise, "Label flip probability");
  g->add_option("--step", gen.step, "Random-walk step scale");
  g->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  g->add_option("--out", gen.out, "Corpus path (.jsonl)")->required();
  g->add_option("--truth", gen.truth, "Truth path (default: <out>.truth.json)");

  DiscoverArgs disc;
  auto* d = app.add_subcommand("discover", "Run greedy region discovery");
  d->add_option("--data", disc.data, "Corpus path")->required();
  d->add_option("--out", disc.out, "Report path (.json)")->required();
  d->add_option("--config", disc.config, "key = value config file");
  d->add_option("--set", disc.set, "Extra key=value overrides");
  d->add_option("--m", disc.m, "Number of regions");
  d->add_option("--restarts", disc.restarts, "Restarts per stage");
  d->add_option("--seed", disc.seed, "Random seed");
  d->add_option("--reward-clusters", disc.reward_clusters, "Reward alphabet size");
  d->add_option("--jobs", disc.jobs, "Worker threads for restarts");
  d->add_option("--trace-dir", disc.trace_dir, "Write per-restart optimizer traces as CSV");

  OracleArgs orc;
  auto* o = app.add_subcommand("oracle", "Exhaustive grid search for one more region");
  o->add_option("--data", orc.data, "Corpus path")->required();
  o->add_option("--frozen", orc.frozen, "Report whose regions are held fixed");
  o->add_option("--out", orc.out, "Full grid table (.csv)");
  o->add_option("--radii", orc.radii, "Number of geometric radii")->capture_default_str();
  o->add_option("--reward-clusters", orc.reward_clusters, "Reward alphabet size")->capture_default_str();
  o->add_option("--jobs", orc.jobs, "Worker threads")->capture_default_str();

  EvalArgs ev;
  auto* e = app.add_subcommand("eval", "Score a report against planted truth");
  e->add_option("--report", ev.report, "Report path")->required();
  e->add_option("--truth", ev.truth, "Truth sidecar path")->required();
  e->add_option("--data", ev.data, "Corpus path (default: the one recorded in the report)");
  e->add_option("--out", ev.out, "Write JSON here instead of stdout");

  ReportArgs rp;
  auto* r = app.add_subcommand("report", "Print a report and emit plot CSVs");
  r->add_option("--report", rp.report, "Report path")->required();
  r->add_option("--data", rp.data, "Corpus path (default: the one recorded in the report)");
  r->add_option("--out-dir", rp.out_dir, "Directory for points.csv and regions.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*g) return run_gen(gen);
    if (*d) return run_discover(disc);
    if (*o) return run_oracle(orc);
    if (*e) return run_eval(ev);
    if (*r) return run_report(rp);
  } catch (const Error& err) {
    print_error(error_code_name(err.code()), err.what());
    return exit_code_for(err.code());
  } catch (const nlohmann::json::exception& err) {
    print_error(error_code_name(ErrorCode::bad_schema), err.what());
    return 2;
  } catch (const fs::filesystem_error& err) {
    print_error(error_code_name(ErrorCode::io), err.what());
    return 2;
  }
  return 2;
}
