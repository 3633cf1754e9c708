#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <arcane/error.hpp>
#include <arcane/evaluation.hpp>
#include <arcane/fingerprint.hpp>
#include <arcane/generator.hpp>
#include <arcane/roster.hpp>
#include <arcane/serialize.hpp>
#include <arcane/time_util.hpp>
#include <arcane/types.hpp>

using namespace arcane;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("arcane-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

Campaign sample_campaign() {
  Campaign c;
  c.campaign_id = "C-0001";
  c.actor_id = "APT-003";
  c.start_date = 19723;
  c.evasion_level = 0.125;
  CallbackTelemetry cb;
  cb.timestamp = 19723 * timeutil::kSecondsPerDay + 9 * 3600 + 5 * 60;
  cb.source_ip = "45.12.3.7";
  cb.asn_prefix = "AS4837";
  cb.is_tor = true;
  cb.is_vpn = false;
  cb.is_vm = true;
  cb.os_family = "windows";
  cb.locale = "zh_CN";
  cb.utc_offset = 8;
  cb.country = "CN";
  cb.tools = {"Mimikatz", "PlugX"};
  cb.dwell_hours = 6.25;
  c.callbacks.push_back(cb);
  return c;
}

}  // namespace

TEST_CASE("fmt_double writes shortest round-trip decimals") {
  CHECK(fmt_double(0.1) == "0.1");
  CHECK(fmt_double(1.0) == "1");
  CHECK(fmt_double(0.0) == "0");
  CHECK(fmt_double(-2.5) == "-2.5");
  CHECK(fmt_double(0.09999999999999995) == "0.09999999999999995");
  CHECK(fmt_double(1.0 / 3.0) == "0.3333333333333333");
}

TEST_CASE("callback json round-trip uses rfc3339 and explicit fields") {
  const auto c = sample_campaign();
  const auto j = callback_to_json(c.callbacks[0]);
  CHECK(j.at("timestamp") == "2024-01-01T09:05:00Z");
  CHECK(j.at("source_ip") == "45.12.3.7");
  CHECK(j.at("asn_prefix") == "AS4837");
  CHECK(j.at("is_tor") == true);
  CHECK(j.at("is_vpn") == false);
  CHECK(j.at("is_vm") == true);
  CHECK(j.at("os_family") == "windows");
  CHECK(j.at("locale") == "zh_CN");
  CHECK(j.at("utc_offset") == 8);
  CHECK(j.at("country") == "CN");
  CHECK(j.at("tools") == nlohmann::json({"Mimikatz", "PlugX"}));
  CHECK(j.at("dwell_hours") == 6.25);

  const auto back = callback_from_json(j);
  CHECK(back.timestamp == c.callbacks[0].timestamp);
  CHECK(back.source_ip == c.callbacks[0].source_ip);
  CHECK(back.tools == c.callbacks[0].tools);
  CHECK(back.dwell_hours == c.callbacks[0].dwell_hours);
  CHECK(back.utc_offset == c.callbacks[0].utc_offset);
}

TEST_CASE("campaign json round-trip") {
  const auto c = sample_campaign();
  const auto j = campaign_to_json(c);
  CHECK(j.at("campaign_id") == "C-0001");
  CHECK(j.at("actor_id") == "APT-003");
  CHECK(j.at("start_date") == "2024-01-01");
  CHECK(j.at("evasion_level") == 0.125);
  REQUIRE(j.at("callbacks").size() == 1);
  const auto back = campaign_from_json(j);
  CHECK(back.campaign_id == c.campaign_id);
  CHECK(back.start_date == c.start_date);
  CHECK(back.evasion_level == c.evasion_level);
  REQUIRE(back.callbacks.size() == 1);
  CHECK(back.callbacks[0].timestamp == c.callbacks[0].timestamp);
}

TEST_CASE("campaigns jsonl file round-trip") {
  TempDir tmp;
  DatasetConfig cfg;
  cfg.actors = default_actor_roster();
  cfg.campaigns_per_actor = 2;
  const auto ds = generate_dataset(cfg);
  const auto path = tmp.file("campaigns.jsonl");
  write_campaigns_jsonl(ds, path);

  // One json object per line.
  const auto text = read_text_file(path);
  std::size_t lines = 0;
  for (char ch : text)
    if (ch == '\n') ++lines;
  CHECK(lines == ds.size());

  const auto back = read_campaigns_jsonl(path);
  REQUIRE(back.size() == ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    CHECK(back[i].campaign_id == ds[i].campaign_id);
    CHECK(back[i].actor_id == ds[i].actor_id);
    CHECK(back[i].start_date == ds[i].start_date);
    REQUIRE(back[i].callbacks.size() == ds[i].callbacks.size());
    for (std::size_t k = 0; k < ds[i].callbacks.size(); ++k) {
      CHECK(back[i].callbacks[k].timestamp == ds[i].callbacks[k].timestamp);
      CHECK(back[i].callbacks[k].dwell_hours == ds[i].callbacks[k].dwell_hours);
      CHECK(back[i].callbacks[k].tools == ds[i].callbacks[k].tools);
    }
  }
}

TEST_CASE("dataset manifest") {
  DatasetConfig cfg;
  cfg.actors = default_actor_roster();
  cfg.campaigns_per_actor = 2;
  cfg.seed = 99;
  const auto ds = generate_dataset(cfg);
  const auto m = dataset_manifest(cfg, ds);
  CHECK(m.at("schema") == "arcane-dataset/1");
  CHECK(m.at("seed") == 99);
  CHECK(m.at("actor_count") == 8);
  CHECK(m.at("campaigns_per_actor") == 2);
  CHECK(m.at("campaign_count") == 16);
  CHECK(m.at("callback_count") == count_callbacks(ds));
  CHECK(m.at("window_start") == "2024-01-01");
  CHECK(m.at("window_end") == "2025-06-30");
  CHECK(m.at("evasion_enabled") == true);
  CHECK(m.at("evasion_override").is_null());
  REQUIRE(m.at("actors").size() == 8);
}

TEST_CASE("actor profile json round-trip") {
  const auto roster = default_actor_roster();
  for (const auto& p : roster) {
    const auto j = actor_profile_to_json(p);
    CHECK(j.at("actor_id") == p.actor_id);
    CHECK(j.at("alias") == p.alias);
    CHECK(j.at("origin_country") == p.origin_country);
    CHECK(j.at("sophistication") == p.sophistication);
    CHECK(j.at("tor_prob") == p.tor_prob);
    CHECK(j.at("vpn_prob") == p.vpn_prob);
    CHECK(j.at("tool_churn") == p.tool_churn);
    CHECK(j.at("ip_rotation") == p.ip_rotation);
    CHECK(j.at("mean_dwell_hours") == p.mean_dwell_hours);
    CHECK(j.at("preferred_locale") == p.preferred_locale);
    CHECK(j.at("utc_offset") == p.utc_offset);
    const auto back = actor_profile_from_json(j);
    CHECK(back.actor_id == p.actor_id);
    CHECK(back.base_toolset == p.base_toolset);
    CHECK(back.working_hours == p.working_hours);
    CHECK(back.sophistication == p.sophistication);
  }
}

TEST_CASE("report json carries both methods and the paired test") {
  DatasetConfig dcfg;
  dcfg.actors = default_actor_roster();
  dcfg.campaigns_per_actor = 2;
  const auto ds = generate_dataset(dcfg);
  AttributionConfig acfg;
  EvaluationOptions opts;
  opts.pairs_per_class = 50;
  const auto report = evaluate_dataset(ds, acfg, default_tool_clusters(), opts);
  const auto j = report_to_json(report);
  CHECK(j.at("schema") == "arcane-report/1");
  CHECK(j.at("total_campaigns") == 16);
  CHECK(j.at("methods").contains("arcane"));
  CHECK(j.at("methods").contains("baseline"));
  CHECK(j.at("methods").at("arcane").contains("overall_accuracy"));
  CHECK(j.at("methods").at("arcane").contains("per_actor"));
  CHECK(j.at("methods").at("arcane").contains("monthly"));
  CHECK(j.at("mcnemar").contains("b"));
  CHECK(j.at("mcnemar").contains("c"));
  CHECK(j.at("mcnemar").contains("statistic"));
  CHECK(j.at("mcnemar").contains("p_value"));
  CHECK(j.at("separability").contains("gap_delta_s"));
  CHECK(j.at("attribution_log").size() == 16);
}

TEST_CASE("csv headers are stable") {
  TempDir tmp;
  DatasetConfig dcfg;
  dcfg.actors = default_actor_roster();
  dcfg.campaigns_per_actor = 2;
  const auto ds = generate_dataset(dcfg);
  AttributionConfig acfg;
  EvaluationOptions opts;
  opts.pairs_per_class = 20;
  const auto report = evaluate_dataset(ds, acfg, default_tool_clusters(), opts);
  const auto records = fingerprint_campaigns(ds, default_tool_clusters());

  auto first_line = [](const std::string& text) {
    return text.substr(0, text.find('\n'));
  };

  write_similarity_pairs_csv(tmp.file("pairs.csv"), {0.9, 0.8}, {0.3, 0.2});
  CHECK(first_line(read_text_file(tmp.file("pairs.csv"))) == "pair_type,similarity");

  write_per_actor_accuracy_csv(tmp.file("acc.csv"), report);
  CHECK(first_line(read_text_file(tmp.file("acc.csv"))) ==
        "actor_id,method,evaluated,correct,accuracy");

  write_monthly_accuracy_csv(tmp.file("monthly.csv"), report);
  CHECK(first_line(read_text_file(tmp.file("monthly.csv"))) ==
        "month,method,evaluated,accuracy,mean_confidence");

  const auto curve = learning_curve(records, acfg, {1, 2});
  write_learning_curve_csv(tmp.file("curve.csv"), curve);
  CHECK(first_line(read_text_file(tmp.file("curve.csv"))) ==
        "min_train,method,evaluated,accuracy");

  EvasionSweepReport sweep;
  EvasionSweepPoint pt;
  pt.evasion_level = 0.5;
  pt.trials = 2;
  pt.mean_accuracy = 0.25;
  pt.std_accuracy = 0.05;
  pt.trial_accuracies = {0.2, 0.3};
  sweep.points.push_back(pt);
  write_evasion_sweep_csv(tmp.file("sweep.csv"), sweep);
  CHECK(first_line(read_text_file(tmp.file("sweep.csv"))) ==
        "evasion_level,trials,mean_accuracy,std_accuracy");

  const auto matrix = similarity_matrix(records);
  write_similarity_matrix_csv(tmp.file("matrix.csv"), matrix);
  std::string header = "actor_id";
  for (const auto& id : matrix.actor_ids) header += "," + id;
  CHECK(first_line(read_text_file(tmp.file("matrix.csv"))) == header);

  write_similarity_edges_csv(tmp.file("edges.csv"), matrix);
  CHECK(first_line(read_text_file(tmp.file("edges.csv"))) == "source,target,mean_similarity");
}

TEST_CASE("learning curve and sweep json schemas") {
  std::vector<LearningCurvePoint> curve(1);
  curve[0].min_train = 3;
  curve[0].arcane_evaluated = 10;
  curve[0].arcane_accuracy = 0.4;
  const auto cj = learning_curve_to_json(curve);
  CHECK(cj.at("schema") == "arcane-learning-curve/1");
  REQUIRE(cj.at("points").size() == 1);
  CHECK(cj.at("points")[0].at("min_train") == 3);

  EvasionSweepReport sweep;
  sweep.trend.slope = -0.1;
  sweep.trend.t = -5.0;
  sweep.trend.p = 0.001;
  sweep.trend.n = 100;
  const auto sj = evasion_sweep_to_json(sweep);
  CHECK(sj.at("schema") == "arcane-evasion-sweep/1");
  CHECK(sj.at("trend").at("slope") == -0.1);
  CHECK(sj.at("trend").at("t_statistic") == -5.0);
  CHECK(sj.at("trend").at("p_value") == 0.001);
  CHECK(sj.at("trend").at("n") == 100);
}

TEST_CASE("run config loading applies overrides and rejects unknown keys") {
  TempDir tmp;
  const auto path = tmp.file("config.json");

  write_text_file(path, R"({
    "seed": 7,
    "format": "csv",
    "dataset": {"campaigns_per_actor": 3, "window_start": "2024-02-01"},
    "attribution": {"decay_rate_delta": 0.01, "min_train": 2},
    "eval": {"pairs": 500, "trials": 5}
  })");
  auto cfg = load_run_config(path);
  apply_seed(cfg);
  CHECK(cfg.seed == 7);
  CHECK(cfg.dataset.seed == 7);  // one seed drives everything
  CHECK(cfg.format == "csv");
  CHECK(cfg.dataset.campaigns_per_actor == 3);
  CHECK(cfg.dataset.window_start == timeutil::parse_date("2024-02-01"));
  CHECK(cfg.attribution.decay_rate_delta == 0.01);
  CHECK(cfg.attribution.min_train == 2);
  CHECK(cfg.eval.pairs_per_class == 500);
  CHECK(cfg.eval.trials == 5);
  // Untouched fields keep their defaults.
  CHECK(cfg.dataset.actors.size() == 8);
  CHECK(cfg.attribution.similarity_threshold_tau_s == 0.45);

  write_text_file(path, R"({"sed": 7})");
  CHECK_THROWS_AS(load_run_config(path), arcane::InputError);
  write_text_file(path, R"({"dataset": {"actor": []}})");
  CHECK_THROWS_AS(load_run_config(path), arcane::InputError);
  write_text_file(path, R"({"attribution": {"delta": 0.01}})");
  CHECK_THROWS_AS(load_run_config(path), arcane::InputError);
  write_text_file(path, R"({"eval": {"pair": 10}})");
  CHECK_THROWS_AS(load_run_config(path), arcane::InputError);
  write_text_file(path, R"({"format": "xml"})");
  CHECK_THROWS_AS(load_run_config(path), arcane::InputError);
  write_text_file(path, "not json");
  CHECK_THROWS(load_run_config(path));
}

TEST_CASE("default run config is self-consistent") {
  const auto cfg = default_run_config();
  CHECK(cfg.seed == 42);
  CHECK(cfg.format == "both");
  CHECK(cfg.dataset.actors.size() == 8);
  CHECK(cfg.attribution.num_actors_n == 8);
  CHECK(cfg.eval.pairs_per_class == 2000);
  const auto j = run_config_to_json(cfg);
  CHECK(j.contains("seed"));
  CHECK(j.contains("dataset"));
  CHECK(j.contains("attribution"));
}
