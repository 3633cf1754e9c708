// arcane: synthetic beacon-telemetry workbench for cross-campaign attacker
// re-identification. Subcommands generate datasets, run the temporal
// leave-one-out evaluation, sweep evasion levels, trace the learning curve,
// and export fingerprint-similarity figures. All outputs are deterministic
// functions of the seed and configuration.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arcane/attribution.hpp"
#include "arcane/error.hpp"
#include "arcane/evaluation.hpp"
#include "arcane/fingerprint.hpp"
#include "arcane/generator.hpp"
#include "arcane/roster.hpp"
#include "arcane/serialize.hpp"
#include "arcane/time_util.hpp"

namespace {

using namespace arcane;

struct Values {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
  int min_train = 0;
  int pairs = 0;
  int trials = 0;
  std::vector<double> levels;
  std::vector<int> min_train_values;
  std::string dataset_path;
};

struct SubOpts {
  CLI::App* cmd = nullptr;
  CLI::Option* config = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* format = nullptr;
  CLI::Option* min_train = nullptr;
  CLI::Option* pairs = nullptr;
  CLI::Option* trials = nullptr;
  CLI::Option* levels = nullptr;
  CLI::Option* min_train_values = nullptr;
  CLI::Option* dataset = nullptr;
};

SubOpts add_common(CLI::App* cmd, Values& v) {
  SubOpts s;
  s.cmd = cmd;
  s.config = cmd->add_option("--config", v.config_path, "JSON run configuration file");
  s.seed = cmd->add_option("--seed", v.seed, "Root seed (overrides the config file)");
  s.out = cmd->add_option("--out", v.out, "Output directory (default arcane-out)");
  s.format = cmd->add_option("--format", v.format, "Report format: json, csv, or both")
                 ->check(CLI::IsMember({"json", "csv", "both"}));
  return s;
}

RunConfig resolve(const Values& v, const SubOpts& s) {
  RunConfig cfg =
      s.config->count() ? load_run_config(v.config_path) : default_run_config();
  if (s.seed->count()) cfg.seed = v.seed;
  if (s.out->count()) cfg.output_dir = v.out;
  if (s.format->count()) cfg.format = v.format;
  if (s.min_train && s.min_train->count()) cfg.attribution.min_train = v.min_train;
  if (s.pairs && s.pairs->count()) cfg.eval.pairs_per_class = v.pairs;
  if (s.trials && s.trials->count()) cfg.eval.trials = v.trials;
  if (s.levels && s.levels->count()) cfg.eval.evasion_levels = v.levels;
  if (s.min_train_values && s.min_train_values->count())
    cfg.eval.min_train_values = v.min_train_values;
  apply_seed(cfg);
  return cfg;
}

bool write_json_files(const RunConfig& cfg) { return cfg.format != "csv"; }
bool write_csv_files(const RunConfig& cfg) { return cfg.format != "json"; }

std::vector<Campaign> acquire_dataset(const RunConfig& cfg, const Values& v,
                                      const SubOpts& s) {
  if (s.dataset && s.dataset->count()) return read_campaigns_jsonl(v.dataset_path);
  return generate_dataset(cfg.dataset);
}

void wrote(const std::string& path) { std::printf("wrote: %s\n", path.c_str()); }

void write_json_file(const std::string& path, const ojson& j) {
  write_text_file(path, j.dump(2) + "\n");
  wrote(path);
}

// ---- printing -------------------------------------------------------------

void print_method(const MethodSummary& s) {
  std::printf(
      "%-9s evaluated=%d accuracy=%.4f mean_confidence=%.4f max_confidence=%.4f "
      "high_confidence=%d\n",
      (s.method + ":").c_str(), s.evaluated, s.overall_accuracy, s.mean_confidence,
      s.max_confidence, s.high_confidence_count);
}

void print_evaluation(const EvaluationReport& report) {
  std::printf("campaigns: %d  actors: %d\n", report.total_campaigns,
              report.config.num_actors_n);
  print_method(report.arcane);
  print_method(report.baseline);
  std::printf("mcnemar: b=%d c=%d statistic=%.4f p=%.6g n=%d\n", report.mcnemar.b,
              report.mcnemar.c, report.mcnemar.statistic, report.mcnemar.p,
              report.mcnemar_n);
  if (report.separability_computed) {
    const SeparabilityReport& s = report.separability;
    std::printf(
        "separability: within=%.4f cross=%.4f gap=%.4f std_within=%.4f "
        "required_gap=%.4f t=%.4f p=%.6g pairs=%d\n",
        s.mean_within, s.mean_cross, s.gap_delta_s, s.std_within, s.required_gap,
        s.t_statistic, s.p_value, s.sampled_pairs);
  }
}

void print_curve(const std::vector<LearningCurvePoint>& points) {
  for (const auto& p : points)
    std::printf(
        "min_train=%d arcane: evaluated=%d accuracy=%.4f  baseline: evaluated=%d "
        "accuracy=%.4f\n",
        p.min_train, p.arcane_evaluated, p.arcane_accuracy, p.baseline_evaluated,
        p.baseline_accuracy);
}

void print_sweep(const EvasionSweepReport& sweep) {
  double lo = 1.0, hi = 0.0;
  for (const auto& p : sweep.points) {
    std::printf("level=%.3f mean_accuracy=%.4f std_accuracy=%.4f trials=%d\n",
                p.evasion_level, p.mean_accuracy, p.std_accuracy, p.trials);
    lo = std::min(lo, p.mean_accuracy);
    hi = std::max(hi, p.mean_accuracy);
  }
  std::printf("spread: max-min=%.4f\n", hi - lo);
  std::printf("trend: slope=%.4f t=%.4f p=%.6g n=%d\n", sweep.trend.slope,
              sweep.trend.t, sweep.trend.p, sweep.trend.n);
}

void print_similarity(const SimilarityMatrix& matrix, const SeparabilityReport& sep) {
  double lo = 1.0, hi = 0.0, diag_lo = 1.0;
  for (std::size_t i = 0; i < matrix.actor_ids.size(); ++i)
    for (std::size_t j = 0; j < matrix.actor_ids.size(); ++j) {
      if (i == j) {
        diag_lo = std::min(diag_lo, matrix.mean_similarity[i][j]);
        continue;
      }
      lo = std::min(lo, matrix.mean_similarity[i][j]);
      hi = std::max(hi, matrix.mean_similarity[i][j]);
    }
  std::printf("matrix: actors=%zu off_diag_min=%.4f off_diag_max=%.4f diag_min=%.4f\n",
              matrix.actor_ids.size(), lo, hi, diag_lo);
  std::printf(
      "separability: within=%.4f cross=%.4f gap=%.4f std_within=%.4f "
      "required_gap=%.4f t=%.4f p=%.6g pairs=%d\n",
      sep.mean_within, sep.mean_cross, sep.gap_delta_s, sep.std_within,
      sep.required_gap, sep.t_statistic, sep.p_value, sep.sampled_pairs);
}

// ---- commands ---------------------------------------------------------------

int cmd_generate(const RunConfig& cfg) {
  const std::vector<Campaign> campaigns = generate_dataset(cfg.dataset);
  std::filesystem::create_directories(cfg.output_dir);
  std::printf("dataset: %zu campaigns, %zu actors, %zu callbacks\n", campaigns.size(),
              cfg.dataset.actors.size(), count_callbacks(campaigns));
  std::printf("window: %s .. %s\n",
              timeutil::format_date(cfg.dataset.window_start).c_str(),
              timeutil::format_date(cfg.dataset.window_end).c_str());
  std::printf("seed: %llu\n", static_cast<unsigned long long>(cfg.dataset.seed));
  const std::string ds = cfg.output_dir + "/campaigns.jsonl";
  write_campaigns_jsonl(campaigns, ds);
  wrote(ds);
  write_json_file(cfg.output_dir + "/manifest.json",
                  dataset_manifest(cfg.dataset, campaigns));
  return 0;
}

int cmd_evaluate(const RunConfig& cfg, const Values& v, const SubOpts& s) {
  const std::vector<Campaign> campaigns = acquire_dataset(cfg, v, s);
  const ToolClusterCatalog catalog = default_tool_clusters();
  const std::vector<FingerprintRecord> records = fingerprint_campaigns(campaigns, catalog);
  EvaluationReport report = run_temporal_loo(records, cfg.attribution);
  std::vector<double> within, cross;
  report.separability = separability_analysis(records, cfg.eval.pairs_per_class,
                                              cfg.seed, &within, &cross);
  report.separability_computed = true;
  print_evaluation(report);

  std::filesystem::create_directories(cfg.output_dir);
  if (write_json_files(cfg))
    write_json_file(cfg.output_dir + "/report.json", report_to_json(report));
  if (write_csv_files(cfg)) {
    write_per_actor_accuracy_csv(cfg.output_dir + "/per_actor_accuracy.csv", report);
    wrote(cfg.output_dir + "/per_actor_accuracy.csv");
    write_monthly_accuracy_csv(cfg.output_dir + "/monthly_accuracy.csv", report);
    wrote(cfg.output_dir + "/monthly_accuracy.csv");
    write_similarity_pairs_csv(cfg.output_dir + "/similarity_pairs.csv", within, cross);
    wrote(cfg.output_dir + "/similarity_pairs.csv");
  }
  return 0;
}

int cmd_learning_curve(const RunConfig& cfg, const Values& v, const SubOpts& s) {
  const std::vector<Campaign> campaigns = acquire_dataset(cfg, v, s);
  const ToolClusterCatalog catalog = default_tool_clusters();
  const std::vector<FingerprintRecord> records = fingerprint_campaigns(campaigns, catalog);
  const std::vector<LearningCurvePoint> points =
      learning_curve(records, cfg.attribution, cfg.eval.min_train_values);
  print_curve(points);

  std::filesystem::create_directories(cfg.output_dir);
  if (write_json_files(cfg))
    write_json_file(cfg.output_dir + "/learning_curve.json",
                    learning_curve_to_json(points));
  if (write_csv_files(cfg)) {
    write_learning_curve_csv(cfg.output_dir + "/learning_curve.csv", points);
    wrote(cfg.output_dir + "/learning_curve.csv");
  }
  return 0;
}

int cmd_sweep(const RunConfig& cfg) {
  std::printf("evasion sweep: %zu levels x %d trials\n", cfg.eval.evasion_levels.size(),
              cfg.eval.trials);
  const EvasionSweepReport sweep = evasion_sweep(cfg.dataset, cfg.attribution,
                                                 cfg.eval.evasion_levels, cfg.eval.trials);
  print_sweep(sweep);

  std::filesystem::create_directories(cfg.output_dir);
  if (write_json_files(cfg))
    write_json_file(cfg.output_dir + "/evasion_sweep.json", evasion_sweep_to_json(sweep));
  if (write_csv_files(cfg)) {
    write_evasion_sweep_csv(cfg.output_dir + "/evasion_sweep.csv", sweep);
    wrote(cfg.output_dir + "/evasion_sweep.csv");
  }
  return 0;
}

int cmd_similarity(const RunConfig& cfg, const Values& v, const SubOpts& s) {
  const std::vector<Campaign> campaigns = acquire_dataset(cfg, v, s);
  const ToolClusterCatalog catalog = default_tool_clusters();
  const std::vector<FingerprintRecord> records = fingerprint_campaigns(campaigns, catalog);
  const SimilarityMatrix matrix = similarity_matrix(records);
  std::vector<double> within, cross;
  const SeparabilityReport sep = separability_analysis(records, cfg.eval.pairs_per_class,
                                                       cfg.seed, &within, &cross);
  print_similarity(matrix, sep);

  std::filesystem::create_directories(cfg.output_dir);
  if (write_json_files(cfg))
    write_json_file(cfg.output_dir + "/similarity.json", similarity_to_json(matrix, sep));
  if (write_csv_files(cfg)) {
    write_similarity_matrix_csv(cfg.output_dir + "/similarity_matrix.csv", matrix);
    wrote(cfg.output_dir + "/similarity_matrix.csv");
    write_similarity_edges_csv(cfg.output_dir + "/similarity_edges.csv", matrix);
    wrote(cfg.output_dir + "/similarity_edges.csv");
    write_similarity_pairs_csv(cfg.output_dir + "/similarity_pairs.csv", within, cross);
    wrote(cfg.output_dir + "/similarity_pairs.csv");
  }
  return 0;
}

int cmd_report(const RunConfig& cfg) {
  const ToolClusterCatalog catalog = default_tool_clusters();
  std::filesystem::create_directories(cfg.output_dir);

  std::printf("== dataset ==\n");
  const std::vector<Campaign> campaigns = generate_dataset(cfg.dataset);
  std::printf("dataset: %zu campaigns, %zu actors, %zu callbacks\n", campaigns.size(),
              cfg.dataset.actors.size(), count_callbacks(campaigns));
  const std::string ds = cfg.output_dir + "/campaigns.jsonl";
  write_campaigns_jsonl(campaigns, ds);
  wrote(ds);
  write_json_file(cfg.output_dir + "/manifest.json",
                  dataset_manifest(cfg.dataset, campaigns));

  std::printf("== evaluation ==\n");
  const std::vector<FingerprintRecord> records = fingerprint_campaigns(campaigns, catalog);
  EvaluationReport report = run_temporal_loo(records, cfg.attribution);
  std::vector<double> within, cross;
  report.separability = separability_analysis(records, cfg.eval.pairs_per_class,
                                              cfg.seed, &within, &cross);
  report.separability_computed = true;
  print_evaluation(report);
  if (write_json_files(cfg))
    write_json_file(cfg.output_dir + "/report.json", report_to_json(report));
  if (write_csv_files(cfg)) {
    write_per_actor_accuracy_csv(cfg.output_dir + "/per_actor_accuracy.csv", report);
    wrote(cfg.output_dir + "/per_actor_accuracy.csv");
    write_monthly_accuracy_csv(cfg.output_dir + "/monthly_accuracy.csv", report);
    wrote(cfg.output_dir + "/monthly_accuracy.csv");
    write_similarity_pairs_csv(cfg.output_dir + "/similarity_pairs.csv", within, cross);
    wrote(cfg.output_dir + "/similarity_pairs.csv");
  }

  std::printf("== learning curve ==\n");
  const std::vector<LearningCurvePoint> points =
      learning_curve(records, cfg.attribution, cfg.eval.min_train_values);
  print_curve(points);
  if (write_json_files(cfg))
    write_json_file(cfg.output_dir + "/learning_curve.json",
                    learning_curve_to_json(points));
  if (write_csv_files(cfg)) {
    write_learning_curve_csv(cfg.output_dir + "/learning_curve.csv", points);
    wrote(cfg.output_dir + "/learning_curve.csv");
  }

  std::printf("== evasion sweep ==\n");
  std::printf("evasion sweep: %zu levels x %d trials\n", cfg.eval.evasion_levels.size(),
              cfg.eval.trials);
  const EvasionSweepReport sweep = evasion_sweep(cfg.dataset, cfg.attribution,
                                                 cfg.eval.evasion_levels, cfg.eval.trials);
  print_sweep(sweep);
  if (write_json_files(cfg))
    write_json_file(cfg.output_dir + "/evasion_sweep.json", evasion_sweep_to_json(sweep));
  if (write_csv_files(cfg)) {
    write_evasion_sweep_csv(cfg.output_dir + "/evasion_sweep.csv", sweep);
    wrote(cfg.output_dir + "/evasion_sweep.csv");
  }

  std::printf("== similarity ==\n");
  const SimilarityMatrix matrix = similarity_matrix(records);
  print_similarity(matrix, report.separability);
  if (write_json_files(cfg))
    write_json_file(cfg.output_dir + "/similarity.json",
                    similarity_to_json(matrix, report.separability));
  if (write_csv_files(cfg)) {
    write_similarity_matrix_csv(cfg.output_dir + "/similarity_matrix.csv", matrix);
    wrote(cfg.output_dir + "/similarity_matrix.csv");
    write_similarity_edges_csv(cfg.output_dir + "/similarity_edges.csv", matrix);
    wrote(cfg.output_dir + "/similarity_edges.csv");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "arcane: cross-campaign attacker re-identification workbench "
      "(synthetic beacon telemetry)"};
  app.require_subcommand(1);
  Values v;

  CLI::App* c_generate =
      app.add_subcommand("generate", "Generate a synthetic campaign dataset (JSONL)");
  SubOpts s_generate = add_common(c_generate, v);

  CLI::App* c_evaluate = app.add_subcommand(
      "evaluate", "Temporal leave-one-out attribution of every campaign");
  SubOpts s_evaluate = add_common(c_evaluate, v);
  s_evaluate.min_train =
      c_evaluate->add_option("--min-train", v.min_train, "Evidence floor before attributing");
  s_evaluate.pairs =
      c_evaluate->add_option("--pairs", v.pairs, "Sampled pairs per class for separability");
  s_evaluate.dataset = c_evaluate->add_option(
      "--dataset", v.dataset_path, "Existing campaigns.jsonl (default: generate in-memory)");

  CLI::App* c_sweep = app.add_subcommand(
      "sweep-evasion", "Accuracy across evasion levels, fresh datasets per trial");
  SubOpts s_sweep = add_common(c_sweep, v);
  s_sweep.min_train =
      c_sweep->add_option("--min-train", v.min_train, "Evidence floor before attributing");
  s_sweep.levels = c_sweep
                       ->add_option("--evasion-levels", v.levels,
                                    "Comma-separated override levels in [0, 1]")
                       ->delimiter(',');
  s_sweep.trials = c_sweep->add_option("--trials", v.trials, "Trials per level");

  CLI::App* c_curve = app.add_subcommand(
      "learning-curve", "Accuracy and coverage as min_train grows");
  SubOpts s_curve = add_common(c_curve, v);
  s_curve.min_train_values = c_curve
                                 ->add_option("--min-train", v.min_train_values,
                                              "Comma-separated min_train values")
                                 ->delimiter(',');
  s_curve.dataset = c_curve->add_option(
      "--dataset", v.dataset_path, "Existing campaigns.jsonl (default: generate in-memory)");

  CLI::App* c_similarity = app.add_subcommand(
      "similarity", "Fingerprint similarity matrix and separability stats");
  SubOpts s_similarity = add_common(c_similarity, v);
  s_similarity.pairs = c_similarity->add_option(
      "--pairs", v.pairs, "Sampled pairs per class for separability");
  s_similarity.dataset = c_similarity->add_option(
      "--dataset", v.dataset_path, "Existing campaigns.jsonl (default: generate in-memory)");

  CLI::App* c_report = app.add_subcommand(
      "report", "Full pipeline: dataset, evaluation, curve, sweep, similarity");
  SubOpts s_report = add_common(c_report, v);
  s_report.min_train =
      c_report->add_option("--min-train", v.min_train, "Evidence floor before attributing");
  s_report.pairs =
      c_report->add_option("--pairs", v.pairs, "Sampled pairs per class for separability");
  s_report.levels = c_report
                        ->add_option("--evasion-levels", v.levels,
                                     "Comma-separated override levels in [0, 1]")
                        ->delimiter(',');
  s_report.trials = c_report->add_option("--trials", v.trials, "Trials per level");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_generate->parsed()) return cmd_generate(resolve(v, s_generate));
    if (c_evaluate->parsed()) return cmd_evaluate(resolve(v, s_evaluate), v, s_evaluate);
    if (c_sweep->parsed()) return cmd_sweep(resolve(v, s_sweep));
    if (c_curve->parsed()) return cmd_learning_curve(resolve(v, s_curve), v, s_curve);
    if (c_similarity->parsed())
      return cmd_similarity(resolve(v, s_similarity), v, s_similarity);
    if (c_report->parsed()) return cmd_report(resolve(v, s_report));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  std::fprintf(stderr, "error: no subcommand\n");
  return 1;
}
