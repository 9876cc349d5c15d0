#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "trajregion/config.hpp"
#include "trajregion/discovery.hpp"
#include "trajregion/synth.hpp"

namespace trajregion {

inline constexpr const char* kReportSchema = "trajregion-report";
inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kTruthSchema = "trajregion-truth";

struct ReportContext {
  std::string data_path;
  const Dataset* dataset = nullptr;
  const RewardAlphabet* labels = nullptr;
  const RunConfig* config = nullptr;
};

/// Versioned JSON document for a discovery run. Contains no timestamps or
/// thread counts, so identical inputs give identical bytes.
nlohmann::ordered_json report_to_json(const DiscoveryReport& report, const ReportContext& ctx);

/// Parses and checks the schema tag of a report document.
nlohmann::ordered_json read_report_file(const std::string& path);
std::vector<Region> report_regions(const nlohmann::ordered_json& report);

/// Fixed-width table: stage, H before/after, IG in nats and bits, center, radius.
std::string render_report_table(const nlohmann::ordered_json& report);

/// Plot data: one row per state, columns x1..xd,reward.
void write_points_csv(std::ostream& out, const Dataset& dataset);
/// One row per region, columns cx1..cxd,radius,stage.
void write_regions_csv(std::ostream& out, const std::vector<Region>& regions);
/// One row per optimizer step.
void write_trace_csv(std::ostream& out, const OptimTrace& trace);

nlohmann::ordered_json truth_to_json(const SynthInstance& instance);
/// Planted regions and generator settings from a truth sidecar file.
TaskSpec read_truth_file(const std::string& path);

/// Fraction of trajectories whose label equals the majority label of their
/// membership assignment under `regions` (lowest label wins ties).
double region_accuracy(const Dataset& dataset, const RewardAlphabet& labels, const std::vector<Region>& regions);

struct EvalResult {
  double h_reward = 0.0;
  double h_found = 0.0;
  double ig_found = 0.0;
  double accuracy = 0.0;
  double h_truth = 0.0;
  double truth_accuracy = 0.0;
  /// For each planted region, the distance from its center to the nearest
  /// found center and that found region's index.
  std::vector<double> center_error;
  std::vector<std::size_t> matched;
};

EvalResult evaluate_regions(const Dataset& dataset, const RewardAlphabet& labels, const std::vector<Region>& found,
                            const std::vector<Region>& truth);
nlohmann::ordered_json eval_to_json(const EvalResult& eval);

} // namespace trajregion
