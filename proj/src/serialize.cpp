#include "arcane/serialize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "arcane/error.hpp"
#include "arcane/roster.hpp"
#include "arcane/time_util.hpp"

namespace arcane {

namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end()) throw InputError(std::string("missing field: ") + name);
  return *it;
}

ojson outcome_to_json(const MethodOutcome& o) {
  ojson j;
  j["evaluated"] = o.evaluated;
  if (o.evaluated) {
    j["predicted_actor"] = o.predicted_actor;
    j["confidence"] = o.confidence;
    j["high_confidence"] = o.high_confidence;
    j["correct"] = o.correct;
  }
  return j;
}

ojson method_to_json(const MethodSummary& s) {
  ojson j;
  j["method"] = s.method;
  j["evaluated"] = s.evaluated;
  j["correct"] = s.correct;
  j["overall_accuracy"] = s.overall_accuracy;
  j["mean_confidence"] = s.mean_confidence;
  j["max_confidence"] = s.max_confidence;
  j["high_confidence_count"] = s.high_confidence_count;
  ojson pa = ojson::object();
  for (const auto& [actor, st] : s.per_actor) {
    ojson e;
    e["evaluated"] = st.evaluated;
    e["correct"] = st.correct;
    e["accuracy"] = st.accuracy;
    pa[actor] = std::move(e);
  }
  j["per_actor"] = std::move(pa);
  ojson months = ojson::array();
  for (const auto& m : s.monthly) {
    ojson e;
    e["month"] = m.month;
    e["evaluated"] = m.evaluated;
    e["correct"] = m.correct;
    e["accuracy"] = m.accuracy ? ojson(*m.accuracy) : ojson(nullptr);
    e["mean_confidence"] = m.mean_confidence ? ojson(*m.mean_confidence) : ojson(nullptr);
    months.push_back(std::move(e));
  }
  j["monthly"] = std::move(months);
  return j;
}

ojson separability_to_json(const SeparabilityReport& s) {
  ojson j;
  j["mean_within"] = s.mean_within;
  j["mean_cross"] = s.mean_cross;
  j["gap_delta_s"] = s.gap_delta_s;
  j["std_within"] = s.std_within;
  j["t_statistic"] = s.t_statistic;
  j["p_value"] = s.p_value;
  j["sampled_pairs"] = s.sampled_pairs;
  j["required_gap"] = s.required_gap;
  return j;
}

void append_csv_row(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
}

}  // namespace

std::string fmt_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

ojson callback_to_json(const CallbackTelemetry& cb) {
  ojson j;
  j["timestamp"] = timeutil::format_rfc3339(cb.timestamp);
  j["source_ip"] = cb.source_ip;
  j["asn_prefix"] = cb.asn_prefix;
  j["is_tor"] = cb.is_tor;
  j["is_vpn"] = cb.is_vpn;
  j["is_vm"] = cb.is_vm;
  j["os_family"] = cb.os_family;
  j["locale"] = cb.locale;
  j["utc_offset"] = cb.utc_offset;
  j["country"] = cb.country;
  j["tools"] = cb.tools;
  j["dwell_hours"] = cb.dwell_hours;
  return j;
}

CallbackTelemetry callback_from_json(const nlohmann::json& j) {
  CallbackTelemetry cb;
  cb.timestamp = timeutil::parse_rfc3339(field(j, "timestamp").get<std::string>());
  cb.source_ip = field(j, "source_ip").get<std::string>();
  cb.asn_prefix = field(j, "asn_prefix").get<std::string>();
  cb.is_tor = field(j, "is_tor").get<bool>();
  cb.is_vpn = field(j, "is_vpn").get<bool>();
  cb.is_vm = field(j, "is_vm").get<bool>();
  cb.os_family = field(j, "os_family").get<std::string>();
  cb.locale = field(j, "locale").get<std::string>();
  cb.utc_offset = field(j, "utc_offset").get<int>();
  cb.country = field(j, "country").get<std::string>();
  cb.tools = field(j, "tools").get<std::vector<std::string>>();
  std::sort(cb.tools.begin(), cb.tools.end());
  cb.dwell_hours = field(j, "dwell_hours").get<double>();
  return cb;
}

ojson campaign_to_json(const Campaign& c) {
  ojson j;
  j["campaign_id"] = c.campaign_id;
  j["actor_id"] = c.actor_id;
  j["start_date"] = timeutil::format_date(c.start_date);
  j["evasion_level"] = c.evasion_level;
  ojson callbacks = ojson::array();
  for (const auto& cb : c.callbacks) callbacks.push_back(callback_to_json(cb));
  j["callbacks"] = std::move(callbacks);
  return j;
}

Campaign campaign_from_json(const nlohmann::json& j) {
  Campaign c;
  c.campaign_id = field(j, "campaign_id").get<std::string>();
  c.actor_id = field(j, "actor_id").get<std::string>();
  c.start_date = timeutil::parse_date(field(j, "start_date").get<std::string>());
  c.evasion_level = field(j, "evasion_level").get<double>();
  for (const auto& cb : field(j, "callbacks")) c.callbacks.push_back(callback_from_json(cb));
  return c;
}

void write_campaigns_jsonl(const std::vector<Campaign>& campaigns, const std::string& path) {
  std::string out;
  for (const auto& c : campaigns) {
    out += campaign_to_json(c).dump();
    out += '\n';
  }
  write_text_file(path, out);
}

std::vector<Campaign> read_campaigns_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open for reading: " + path);
  std::vector<Campaign> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(campaign_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw InputError(path + ": line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

ojson dataset_manifest(const DatasetConfig& config, const std::vector<Campaign>& campaigns) {
  std::size_t callbacks = 0;
  for (const auto& c : campaigns) callbacks += c.callbacks.size();
  ojson j;
  j["schema"] = "arcane-dataset/1";
  j["seed"] = config.seed;
  j["actor_count"] = config.actors.size();
  j["campaigns_per_actor"] = config.campaigns_per_actor;
  j["campaign_count"] = campaigns.size();
  j["callback_count"] = callbacks;
  j["window_start"] = timeutil::format_date(config.window_start);
  j["window_end"] = timeutil::format_date(config.window_end);
  j["evasion_enabled"] = config.evasion_enabled;
  j["evasion_override"] =
      config.evasion_override ? ojson(*config.evasion_override) : ojson(nullptr);
  ojson ids = ojson::array();
  for (const auto& a : config.actors) ids.push_back(a.actor_id);
  j["actors"] = std::move(ids);
  return j;
}

ojson actor_profile_to_json(const ActorProfile& p) {
  ojson j;
  j["actor_id"] = p.actor_id;
  j["alias"] = p.alias;
  j["origin_country"] = p.origin_country;
  j["sophistication"] = p.sophistication;
  j["tor_prob"] = p.tor_prob;
  j["vpn_prob"] = p.vpn_prob;
  j["tool_churn"] = p.tool_churn;
  j["ip_rotation"] = p.ip_rotation;
  j["mean_dwell_hours"] = p.mean_dwell_hours;
  j["preferred_locale"] = p.preferred_locale;
  j["base_toolset"] = p.base_toolset;
  j["working_hours"] = ojson::array({p.working_hours.first, p.working_hours.second});
  j["utc_offset"] = p.utc_offset;
  return j;
}

ActorProfile actor_profile_from_json(const nlohmann::json& j) {
  ActorProfile p;
  p.actor_id = field(j, "actor_id").get<std::string>();
  p.alias = field(j, "alias").get<std::string>();
  p.origin_country = field(j, "origin_country").get<std::string>();
  p.sophistication = field(j, "sophistication").get<double>();
  p.tor_prob = field(j, "tor_prob").get<double>();
  p.vpn_prob = field(j, "vpn_prob").get<double>();
  p.tool_churn = field(j, "tool_churn").get<double>();
  p.ip_rotation = field(j, "ip_rotation").get<double>();
  p.mean_dwell_hours = field(j, "mean_dwell_hours").get<double>();
  p.preferred_locale = field(j, "preferred_locale").get<std::string>();
  p.base_toolset = field(j, "base_toolset").get<std::vector<std::string>>();
  const auto& wh = field(j, "working_hours");
  if (!wh.is_array() || wh.size() != 2)
    throw InputError("working_hours: expected [start, end]");
  p.working_hours = {wh[0].get<int>(), wh[1].get<int>()};
  p.utc_offset = field(j, "utc_offset").get<int>();
  return p;
}

ojson fingerprint_to_json(const CampaignFingerprint& fp) {
  ojson j;
  j["campaign_id"] = fp.campaign_id;
  j["campaign_date"] = timeutil::format_date(fp.campaign_date);
  j["callback_count"] = fp.callback_count;
  ojson vals = ojson::array();
  for (double v : fp.values) vals.push_back(v);
  j["values"] = std::move(vals);
  return j;
}

ojson report_to_json(const EvaluationReport& report) {
  ojson j;
  j["schema"] = "arcane-report/1";
  ojson cfg;
  cfg["decay_rate_delta"] = report.config.decay_rate_delta;
  cfg["similarity_threshold_tau_s"] = report.config.similarity_threshold_tau_s;
  cfg["confidence_threshold_tau_c"] = report.config.confidence_threshold_tau_c;
  cfg["min_train"] = report.config.min_train;
  cfg["num_actors_n"] = report.config.num_actors_n;
  cfg["carry_forward_prior"] = report.config.carry_forward_prior;
  j["config"] = std::move(cfg);
  j["total_campaigns"] = report.total_campaigns;
  ojson methods;
  methods["arcane"] = method_to_json(report.arcane);
  methods["baseline"] = method_to_json(report.baseline);
  j["methods"] = std::move(methods);
  ojson mc;
  mc["b"] = report.mcnemar.b;
  mc["c"] = report.mcnemar.c;
  mc["statistic"] = report.mcnemar.statistic;
  mc["p_value"] = report.mcnemar.p;
  mc["n"] = report.mcnemar_n;
  j["mcnemar"] = std::move(mc);
  if (report.separability_computed) j["separability"] = separability_to_json(report.separability);
  ojson log = ojson::array();
  for (const auto& e : report.attribution_log) {
    ojson le;
    le["campaign_id"] = e.campaign_id;
    le["true_actor"] = e.true_actor;
    le["campaign_date"] = timeutil::format_date(e.campaign_date);
    le["evidence_max_date"] =
        e.evidence_max_date ? ojson(timeutil::format_date(*e.evidence_max_date)) : ojson(nullptr);
    le["arcane"] = outcome_to_json(e.arcane);
    le["baseline"] = outcome_to_json(e.baseline);
    log.push_back(std::move(le));
  }
  j["attribution_log"] = std::move(log);
  return j;
}

ojson learning_curve_to_json(const std::vector<LearningCurvePoint>& points) {
  ojson j;
  j["schema"] = "arcane-learning-curve/1";
  ojson arr = ojson::array();
  for (const auto& p : points) {
    ojson e;
    e["min_train"] = p.min_train;
    ojson a;
    a["evaluated"] = p.arcane_evaluated;
    a["accuracy"] = p.arcane_accuracy;
    e["arcane"] = std::move(a);
    ojson b;
    b["evaluated"] = p.baseline_evaluated;
    b["accuracy"] = p.baseline_accuracy;
    e["baseline"] = std::move(b);
    arr.push_back(std::move(e));
  }
  j["points"] = std::move(arr);
  return j;
}

ojson evasion_sweep_to_json(const EvasionSweepReport& sweep) {
  ojson j;
  j["schema"] = "arcane-evasion-sweep/1";
  ojson arr = ojson::array();
  for (const auto& p : sweep.points) {
    ojson e;
    e["evasion_level"] = p.evasion_level;
    e["trials"] = p.trials;
    e["mean_accuracy"] = p.mean_accuracy;
    e["std_accuracy"] = p.std_accuracy;
    e["trial_accuracies"] = p.trial_accuracies;
    arr.push_back(std::move(e));
  }
  j["points"] = std::move(arr);
  ojson t;
  t["slope"] = sweep.trend.slope;
  t["t_statistic"] = sweep.trend.t;
  t["p_value"] = sweep.trend.p;
  t["n"] = sweep.trend.n;
  j["trend"] = std::move(t);
  return j;
}

ojson similarity_to_json(const SimilarityMatrix& matrix, const SeparabilityReport& separability) {
  ojson j;
  j["schema"] = "arcane-similarity/1";
  j["actor_ids"] = matrix.actor_ids;
  ojson rows = ojson::array();
  for (const auto& row : matrix.mean_similarity) rows.push_back(row);
  j["mean_similarity"] = std::move(rows);
  j["separability"] = separability_to_json(separability);
  return j;
}

void write_similarity_pairs_csv(const std::string& path, const std::vector<double>& within,
                                const std::vector<double>& cross) {
  std::string out = "pair_type,similarity\n";
  for (double s : within) append_csv_row(out, {"within", fmt_double(s)});
  for (double s : cross) append_csv_row(out, {"cross", fmt_double(s)});
  write_text_file(path, out);
}

void write_per_actor_accuracy_csv(const std::string& path, const EvaluationReport& report) {
  std::string out = "actor_id,method,evaluated,correct,accuracy\n";
  for (const MethodSummary* s : {&report.arcane, &report.baseline})
    for (const auto& [actor, st] : s->per_actor)
      append_csv_row(out, {actor, s->method, std::to_string(st.evaluated),
                           std::to_string(st.correct), fmt_double(st.accuracy)});
  write_text_file(path, out);
}

void write_monthly_accuracy_csv(const std::string& path, const EvaluationReport& report) {
  std::string out = "month,method,evaluated,accuracy,mean_confidence\n";
  for (const MethodSummary* s : {&report.arcane, &report.baseline})
    for (const auto& m : s->monthly)
      append_csv_row(out, {m.month, s->method, std::to_string(m.evaluated),
                           m.accuracy ? fmt_double(*m.accuracy) : std::string(),
                           m.mean_confidence ? fmt_double(*m.mean_confidence) : std::string()});
  write_text_file(path, out);
}

void write_learning_curve_csv(const std::string& path,
                              const std::vector<LearningCurvePoint>& points) {
  std::string out = "min_train,method,evaluated,accuracy\n";
  for (const auto& p : points) {
    append_csv_row(out, {std::to_string(p.min_train), "arcane",
                         std::to_string(p.arcane_evaluated), fmt_double(p.arcane_accuracy)});
    append_csv_row(out, {std::to_string(p.min_train), "baseline",
                         std::to_string(p.baseline_evaluated), fmt_double(p.baseline_accuracy)});
  }
  write_text_file(path, out);
}

void write_evasion_sweep_csv(const std::string& path, const EvasionSweepReport& sweep) {
  std::string out = "evasion_level,trials,mean_accuracy,std_accuracy\n";
  for (const auto& p : sweep.points)
    append_csv_row(out, {fmt_double(p.evasion_level), std::to_string(p.trials),
                         fmt_double(p.mean_accuracy), fmt_double(p.std_accuracy)});
  write_text_file(path, out);
}

void write_similarity_matrix_csv(const std::string& path, const SimilarityMatrix& matrix) {
  std::string out = "actor_id";
  for (const auto& id : matrix.actor_ids) {
    out += ',';
    out += id;
  }
  out += '\n';
  for (std::size_t i = 0; i < matrix.actor_ids.size(); ++i) {
    out += matrix.actor_ids[i];
    for (double v : matrix.mean_similarity[i]) {
      out += ',';
      out += fmt_double(v);
    }
    out += '\n';
  }
  write_text_file(path, out);
}

void write_similarity_edges_csv(const std::string& path, const SimilarityMatrix& matrix) {
  std::string out = "source,target,mean_similarity\n";
  for (std::size_t i = 0; i < matrix.actor_ids.size(); ++i)
    for (std::size_t j = i + 1; j < matrix.actor_ids.size(); ++j)
      append_csv_row(out, {matrix.actor_ids[i], matrix.actor_ids[j],
                           fmt_double(matrix.mean_similarity[i][j])});
  write_text_file(path, out);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw InputError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig default_run_config() {
  RunConfig c;
  c.dataset.actors = default_actor_roster();
  apply_seed(c);
  return c;
}

void apply_seed(RunConfig& config) { config.dataset.seed = config.seed; }

namespace {

void reject_unknown_keys(const nlohmann::json& j, const std::vector<std::string>& known,
                         const std::string& scope) {
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw InputError("config: unknown key '" + (scope.empty() ? key : scope + "." + key) + "'");
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  if (!j.is_object()) throw InputError("config: top level must be an object");
  reject_unknown_keys(j, {"seed", "output_dir", "format", "dataset", "attribution", "eval"}, "");

  RunConfig c = default_run_config();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
  if (j.contains("format")) c.format = j["format"].get<std::string>();
  if (c.format != "json" && c.format != "csv" && c.format != "both")
    throw InputError("config: format must be json, csv, or both");

  if (j.contains("dataset")) {
    const auto& d = j["dataset"];
    reject_unknown_keys(d,
                        {"actors", "campaigns_per_actor", "window_start", "window_end",
                         "evasion_enabled", "evasion_override"},
                        "dataset");
    if (d.contains("actors")) {
      std::vector<ActorProfile> actors;
      for (const auto& a : d["actors"]) actors.push_back(actor_profile_from_json(a));
      c.dataset.actors = std::move(actors);
    }
    if (d.contains("campaigns_per_actor"))
      c.dataset.campaigns_per_actor = d["campaigns_per_actor"].get<int>();
    if (d.contains("window_start"))
      c.dataset.window_start = timeutil::parse_date(d["window_start"].get<std::string>());
    if (d.contains("window_end"))
      c.dataset.window_end = timeutil::parse_date(d["window_end"].get<std::string>());
    if (d.contains("evasion_enabled")) c.dataset.evasion_enabled = d["evasion_enabled"].get<bool>();
    if (d.contains("evasion_override") && !d["evasion_override"].is_null())
      c.dataset.evasion_override = d["evasion_override"].get<double>();
  }

  if (j.contains("attribution")) {
    const auto& a = j["attribution"];
    reject_unknown_keys(a,
                        {"decay_rate_delta", "similarity_threshold_tau_s",
                         "confidence_threshold_tau_c", "min_train", "num_actors_n",
                         "carry_forward_prior"},
                        "attribution");
    if (a.contains("decay_rate_delta"))
      c.attribution.decay_rate_delta = a["decay_rate_delta"].get<double>();
    if (a.contains("similarity_threshold_tau_s"))
      c.attribution.similarity_threshold_tau_s = a["similarity_threshold_tau_s"].get<double>();
    if (a.contains("confidence_threshold_tau_c"))
      c.attribution.confidence_threshold_tau_c = a["confidence_threshold_tau_c"].get<double>();
    if (a.contains("min_train")) c.attribution.min_train = a["min_train"].get<int>();
    if (a.contains("num_actors_n")) c.attribution.num_actors_n = a["num_actors_n"].get<int>();
    if (a.contains("carry_forward_prior"))
      c.attribution.carry_forward_prior = a["carry_forward_prior"].get<bool>();
  }

  if (j.contains("eval")) {
    const auto& e = j["eval"];
    reject_unknown_keys(e, {"pairs", "evasion_levels", "trials", "min_train_values"}, "eval");
    if (e.contains("pairs")) c.eval.pairs_per_class = e["pairs"].get<int>();
    if (e.contains("evasion_levels"))
      c.eval.evasion_levels = e["evasion_levels"].get<std::vector<double>>();
    if (e.contains("trials")) c.eval.trials = e["trials"].get<int>();
    if (e.contains("min_train_values"))
      c.eval.min_train_values = e["min_train_values"].get<std::vector<int>>();
  }

  c.attribution.num_actors_n = static_cast<int>(c.dataset.actors.size());
  apply_seed(c);
  return c;
}

ojson run_config_to_json(const RunConfig& config) {
  ojson j;
  j["seed"] = config.seed;
  j["output_dir"] = config.output_dir;
  j["format"] = config.format;
  ojson d;
  ojson actors = ojson::array();
  for (const auto& a : config.dataset.actors) actors.push_back(actor_profile_to_json(a));
  d["actors"] = std::move(actors);
  d["campaigns_per_actor"] = config.dataset.campaigns_per_actor;
  d["window_start"] = timeutil::format_date(config.dataset.window_start);
  d["window_end"] = timeutil::format_date(config.dataset.window_end);
  d["evasion_enabled"] = config.dataset.evasion_enabled;
  d["evasion_override"] = config.dataset.evasion_override
                              ? ojson(*config.dataset.evasion_override)
                              : ojson(nullptr);
  j["dataset"] = std::move(d);
  ojson a;
  a["decay_rate_delta"] = config.attribution.decay_rate_delta;
  a["similarity_threshold_tau_s"] = config.attribution.similarity_threshold_tau_s;
  a["confidence_threshold_tau_c"] = config.attribution.confidence_threshold_tau_c;
  a["min_train"] = config.attribution.min_train;
  a["num_actors_n"] = config.attribution.num_actors_n;
  a["carry_forward_prior"] = config.attribution.carry_forward_prior;
  j["attribution"] = std::move(a);
  ojson e;
  e["pairs"] = config.eval.pairs_per_class;
  e["evasion_levels"] = config.eval.evasion_levels;
  e["trials"] = config.eval.trials;
  e["min_train_values"] = config.eval.min_train_values;
  j["eval"] = std::move(e);
  return j;
}

}  // namespace arcane
