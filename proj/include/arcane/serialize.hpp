#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "arcane/evaluation.hpp"
#include "arcane/types.hpp"

namespace arcane {

using ojson = nlohmann::ordered_json;

// Shortest round-trip decimal form (std::to_chars); reparsing recovers the
// exact double, and output is stable across runs.
std::string fmt_double(double value);

// ---- dataset ----------------------------------------------------------

ojson callback_to_json(const CallbackTelemetry& cb);
CallbackTelemetry callback_from_json(const nlohmann::json& j);
ojson campaign_to_json(const Campaign& c);
Campaign campaign_from_json(const nlohmann::json& j);

// One campaign object per line.
void write_campaigns_jsonl(const std::vector<Campaign>& campaigns, const std::string& path);
std::vector<Campaign> read_campaigns_jsonl(const std::string& path);

ojson dataset_manifest(const DatasetConfig& config, const std::vector<Campaign>& campaigns);

// ---- actor profiles ----------------------------------------------------

ojson actor_profile_to_json(const ActorProfile& p);
ActorProfile actor_profile_from_json(const nlohmann::json& j);

// ---- reports -----------------------------------------------------------

ojson fingerprint_to_json(const CampaignFingerprint& fp);
ojson report_to_json(const EvaluationReport& report);
ojson learning_curve_to_json(const std::vector<LearningCurvePoint>& points);
ojson evasion_sweep_to_json(const EvasionSweepReport& sweep);
ojson similarity_to_json(const SimilarityMatrix& matrix, const SeparabilityReport& separability);

// ---- CSV figure data ----------------------------------------------------

void write_similarity_pairs_csv(const std::string& path, const std::vector<double>& within,
                                const std::vector<double>& cross);
void write_per_actor_accuracy_csv(const std::string& path, const EvaluationReport& report);
void write_monthly_accuracy_csv(const std::string& path, const EvaluationReport& report);
void write_learning_curve_csv(const std::string& path,
                              const std::vector<LearningCurvePoint>& points);
void write_evasion_sweep_csv(const std::string& path, const EvasionSweepReport& sweep);
void write_similarity_matrix_csv(const std::string& path, const SimilarityMatrix& matrix);
void write_similarity_edges_csv(const std::string& path, const SimilarityMatrix& matrix);

// ---- plain file helpers --------------------------------------------------

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// ---- run configuration ----------------------------------------------------

struct EvalSettings {
  int pairs_per_class = 2000;
  std::vector<double> evasion_levels{0.0, 0.25, 0.5, 0.75, 1.0};
  int trials = 20;
  std::vector<int> min_train_values{1, 2, 3, 4, 5, 6};
};

// One seed drives everything; dataset.seed is overwritten from `seed` before a
// run. Precedence: command-line flags > config file > defaults.
struct RunConfig {
  std::uint64_t seed = 42;
  std::string output_dir = "arcane-out";
  std::string format = "both";  // json | csv | both
  DatasetConfig dataset;
  AttributionConfig attribution;
  EvalSettings eval;
};

RunConfig default_run_config();
RunConfig load_run_config(const std::string& path);  // defaults + file overrides
void apply_seed(RunConfig& config);
ojson run_config_to_json(const RunConfig& config);

}  // namespace arcane
