#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arcane/stats.hpp"
#include "arcane/types.hpp"

namespace arcane {

// One campaign reduced to its fingerprint plus ground truth, in evaluation
// order (campaign_date, then campaign_id).
struct FingerprintRecord {
  CampaignFingerprint fingerprint;
  std::string actor_id;
};

struct MethodOutcome {
  bool evaluated = false;
  std::string predicted_actor;
  double confidence = 0.0;
  bool high_confidence = false;
  bool correct = false;
};

// Per-query audit row. evidence_max_date is the newest knowledge-base entry
// date at query time; the temporal protocol requires it to precede the query's
// own date whenever the query was evaluated.
struct LogEntry {
  std::string campaign_id;
  std::string true_actor;
  std::int64_t campaign_date = 0;
  std::optional<std::int64_t> evidence_max_date;
  MethodOutcome arcane;
  MethodOutcome baseline;
};

struct PerActorStats {
  int evaluated = 0;
  int correct = 0;
  double accuracy = 0.0;  // 0 when nothing was evaluated
};

// A calendar month in the accuracy series. Months without evaluated queries
// keep accuracy/mean_confidence unset; they are explicit gap markers, not
// zeros.
struct MonthlyPoint {
  std::string month;  // "YYYY-MM"
  int evaluated = 0;
  int correct = 0;
  std::optional<double> accuracy;
  std::optional<double> mean_confidence;
};

struct MethodSummary {
  std::string method;
  int evaluated = 0;
  int correct = 0;
  double overall_accuracy = 0.0;  // 0 when nothing was evaluated
  double mean_confidence = 0.0;
  double max_confidence = 0.0;
  int high_confidence_count = 0;
  std::map<std::string, PerActorStats> per_actor;
  std::vector<MonthlyPoint> monthly;
};

struct SeparabilityReport {
  double mean_within = 0.0;
  double mean_cross = 0.0;
  double gap_delta_s = 0.0;
  double std_within = 0.0;  // sample stddev of the within-actor similarities
  double t_statistic = 0.0;
  double p_value = 1.0;
  int sampled_pairs = 0;  // per class
  double required_gap = 0.0;
};

struct EvaluationReport {
  AttributionConfig config;
  int total_campaigns = 0;
  MethodSummary arcane;
  MethodSummary baseline;
  stats::McNemarResult mcnemar;
  int mcnemar_n = 0;  // campaigns evaluated by both methods
  SeparabilityReport separability;
  bool separability_computed = false;
  std::vector<LogEntry> attribution_log;
};

struct LearningCurvePoint {
  int min_train = 1;
  int arcane_evaluated = 0;
  double arcane_accuracy = 0.0;
  int baseline_evaluated = 0;
  double baseline_accuracy = 0.0;
};

struct EvasionSweepPoint {
  double evasion_level = 0.0;  // override in [0, 1]
  int trials = 0;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;  // sample stddev; 0 with a single trial
  std::vector<double> trial_accuracies;
};

struct EvasionSweepReport {
  std::vector<EvasionSweepPoint> points;
  stats::TrendResult trend;  // accuracy regressed on evasion level, all trials
};

struct SimilarityMatrix {
  std::vector<std::string> actor_ids;
  // mean pairwise cosine similarity between the actors' campaign fingerprints;
  // the diagonal averages within-actor pairs (1.0 for a single campaign).
  std::vector<std::vector<double>> mean_similarity;
};

// Fingerprints every campaign and sorts into evaluation order.
std::vector<FingerprintRecord> fingerprint_campaigns(const std::vector<Campaign>& campaigns,
                                                     const ToolClusterCatalog& catalog);

// Temporal leave-one-out over pre-fingerprinted records: each campaign is
// attributed against strictly earlier history, then folded into both methods'
// state. Records must already be in evaluation order.
EvaluationReport run_temporal_loo(const std::vector<FingerprintRecord>& records,
                                  const AttributionConfig& config);

// Within/cross-actor separability from uniformly sampled fingerprint pairs
// (with replacement, pairs_per_class from each class). `seed` is a root seed;
// the sampling stream is derived internally. The out-parameters, when non-null,
// receive the sampled similarities (figure data).
SeparabilityReport separability_analysis(const std::vector<FingerprintRecord>& records,
                                         int pairs_per_class, std::uint64_t seed,
                                         std::vector<double>* within_out,
                                         std::vector<double>* cross_out);
SeparabilityReport separability_analysis(const std::vector<FingerprintRecord>& records,
                                         int pairs_per_class, std::uint64_t seed);

struct EvaluationOptions {
  int pairs_per_class = 2000;
  std::uint64_t pair_seed = 42;
};

// run_temporal_loo + separability_analysis in one report.
EvaluationReport evaluate_dataset(const std::vector<Campaign>& campaigns,
                                  const AttributionConfig& config,
                                  const ToolClusterCatalog& catalog,
                                  const EvaluationOptions& options);

// Re-runs the leave-one-out protocol at each min_train value.
std::vector<LearningCurvePoint> learning_curve(const std::vector<FingerprintRecord>& records,
                                               const AttributionConfig& config,
                                               const std::vector<int>& min_train_values);

// Regenerates the dataset `trials` times per evasion level (evasion_override =
// level, fresh derived seed per trial) and measures the primary method's
// leave-one-out accuracy. Levels run concurrently; results are deterministic.
EvasionSweepReport evasion_sweep(const DatasetConfig& base_config,
                                 const AttributionConfig& attribution_config,
                                 const std::vector<double>& levels, int trials);

// Actor-by-actor mean fingerprint similarity.
SimilarityMatrix similarity_matrix(const std::vector<FingerprintRecord>& records);

}  // namespace arcane
