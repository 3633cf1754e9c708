#include "arcane/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <set>
#include <utility>

#include "arcane/attribution.hpp"
#include "arcane/baseline.hpp"
#include "arcane/error.hpp"
#include "arcane/fingerprint.hpp"
#include "arcane/generator.hpp"
#include "arcane/log.hpp"
#include "arcane/rng.hpp"
#include "arcane/roster.hpp"
#include "arcane/time_util.hpp"

namespace arcane {

namespace {

std::vector<std::string> actor_ids_of(const std::vector<FingerprintRecord>& records) {
  std::set<std::string> ids;
  for (const auto& r : records) ids.insert(r.actor_id);
  return {ids.begin(), ids.end()};
}

void check_order(const std::vector<FingerprintRecord>& records) {
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& a = records[i - 1].fingerprint;
    const auto& b = records[i].fingerprint;
    if (a.campaign_date < b.campaign_date) continue;
    if (a.campaign_date == b.campaign_date && a.campaign_id < b.campaign_id) continue;
    throw InputError("run_temporal_loo: records not in evaluation order");
  }
}

std::vector<MonthlyPoint> monthly_series(const std::vector<LogEntry>& log, bool use_arcane) {
  if (log.empty()) return {};
  const std::string first = timeutil::month_key(log.front().campaign_date);
  const std::string last = timeutil::month_key(log.back().campaign_date);
  std::map<std::string, MonthlyPoint> by_month;
  for (std::string m = first;; m = timeutil::next_month(m)) {
    by_month[m].month = m;
    if (m == last) break;
    if (by_month.size() > 12000) throw InputError("monthly_series: runaway month range");
  }
  std::map<std::string, double> conf_sum;
  for (const auto& e : log) {
    const MethodOutcome& o = use_arcane ? e.arcane : e.baseline;
    if (!o.evaluated) continue;
    MonthlyPoint& p = by_month[timeutil::month_key(e.campaign_date)];
    ++p.evaluated;
    if (o.correct) ++p.correct;
    conf_sum[p.month] += o.confidence;
  }
  std::vector<MonthlyPoint> out;
  out.reserve(by_month.size());
  for (auto& [m, p] : by_month) {
    if (p.evaluated > 0) {
      p.accuracy = static_cast<double>(p.correct) / p.evaluated;
      p.mean_confidence = conf_sum[m] / p.evaluated;
    }
    out.push_back(p);
  }
  return out;
}

MethodSummary summarize(const std::string& method, const std::vector<LogEntry>& log,
                        bool use_arcane) {
  MethodSummary s;
  s.method = method;
  double conf_sum = 0.0;
  for (const auto& e : log) {
    PerActorStats& pa = s.per_actor[e.true_actor];
    const MethodOutcome& o = use_arcane ? e.arcane : e.baseline;
    if (!o.evaluated) continue;
    ++s.evaluated;
    ++pa.evaluated;
    if (o.correct) {
      ++s.correct;
      ++pa.correct;
    }
    conf_sum += o.confidence;
    if (o.confidence > s.max_confidence) s.max_confidence = o.confidence;
    if (o.high_confidence) ++s.high_confidence_count;
  }
  if (s.evaluated > 0) {
    s.overall_accuracy = static_cast<double>(s.correct) / s.evaluated;
    s.mean_confidence = conf_sum / s.evaluated;
  }
  for (auto& [_, pa] : s.per_actor)
    if (pa.evaluated > 0) pa.accuracy = static_cast<double>(pa.correct) / pa.evaluated;
  s.monthly = monthly_series(log, use_arcane);
  return s;
}

}  // namespace

std::vector<FingerprintRecord> fingerprint_campaigns(const std::vector<Campaign>& campaigns,
                                                     const ToolClusterCatalog& catalog) {
  if (campaigns.empty()) throw InputError("fingerprint_campaigns: no campaigns");
  std::vector<FingerprintRecord> out;
  out.reserve(campaigns.size());
  std::set<std::string> seen;
  for (const auto& c : campaigns) {
    if (!seen.insert(c.campaign_id).second)
      throw ValidationError("fingerprint_campaigns: duplicate campaign_id " + c.campaign_id);
    FingerprintRecord r;
    r.fingerprint = extract_fingerprint(c, catalog);
    r.actor_id = c.actor_id;
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [](const FingerprintRecord& a, const FingerprintRecord& b) {
    if (a.fingerprint.campaign_date != b.fingerprint.campaign_date)
      return a.fingerprint.campaign_date < b.fingerprint.campaign_date;
    return a.fingerprint.campaign_id < b.fingerprint.campaign_id;
  });
  return out;
}

EvaluationReport run_temporal_loo(const std::vector<FingerprintRecord>& records,
                                  const AttributionConfig& config) {
  validate_attribution_config(config);
  if (records.empty()) throw InputError("run_temporal_loo: no records");
  check_order(records);
  const std::vector<std::string> ids = actor_ids_of(records);
  if (ids.size() < 2) throw InputError("run_temporal_loo: need at least 2 actors");

  AttributionConfig cfg = config;
  cfg.num_actors_n = static_cast<int>(ids.size());

  KnowledgeBase kb = KnowledgeBase::for_actors(ids);
  BaselineState baseline = BaselineState::for_actors(ids);
  PosteriorDistribution carried = uniform_prior(ids);

  EvaluationReport report;
  report.config = cfg;
  report.total_campaigns = static_cast<int>(records.size());
  report.attribution_log.reserve(records.size());

  int b = 0, c = 0, both = 0;
  for (const auto& rec : records) {
    LogEntry entry;
    entry.campaign_id = rec.fingerprint.campaign_id;
    entry.true_actor = rec.actor_id;
    entry.campaign_date = rec.fingerprint.campaign_date;
    bool any = false;
    std::int64_t max_date = 0;
    for (const auto& [_, v] : kb.entries)
      for (const auto& e : v) {
        max_date = any ? std::max(max_date, e.campaign_date) : e.campaign_date;
        any = true;
      }
    if (any) entry.evidence_max_date = max_date;

    const PosteriorDistribution prior =
        cfg.carry_forward_prior ? carried : uniform_prior(ids);
    if (const auto res = attribute_campaign(kb, rec.fingerprint, prior, cfg)) {
      entry.arcane.evaluated = true;
      entry.arcane.predicted_actor = res->predicted_actor;
      entry.arcane.confidence = res->confidence;
      entry.arcane.high_confidence = res->high_confidence;
      entry.arcane.correct = res->predicted_actor == rec.actor_id;
      if (cfg.carry_forward_prior) carried = res->posterior;
    }
    if (const auto res = baseline_attribute(baseline, rec.fingerprint, cfg)) {
      entry.baseline.evaluated = true;
      entry.baseline.predicted_actor = res->predicted_actor;
      entry.baseline.confidence = res->confidence;
      entry.baseline.high_confidence = res->high_confidence;
      entry.baseline.correct = res->predicted_actor == rec.actor_id;
    }
    if (entry.arcane.evaluated && entry.baseline.evaluated) {
      ++both;
      if (entry.arcane.correct && !entry.baseline.correct) ++b;
      if (!entry.arcane.correct && entry.baseline.correct) ++c;
    }

    observe_campaign(kb, rec.fingerprint, rec.actor_id);
    baseline_observe(baseline, rec.fingerprint, rec.actor_id);
    report.attribution_log.push_back(std::move(entry));
  }

  report.arcane = summarize("arcane", report.attribution_log, true);
  report.baseline = summarize("baseline", report.attribution_log, false);
  report.mcnemar = stats::mcnemar_test(b, c);
  report.mcnemar_n = both;
  return report;
}

SeparabilityReport separability_analysis(const std::vector<FingerprintRecord>& records,
                                         int pairs_per_class, std::uint64_t seed,
                                         std::vector<double>* within_out,
                                         std::vector<double>* cross_out) {
  if (pairs_per_class < 2)
    throw InputError("separability_analysis: pairs_per_class must be >= 2");
  const std::size_t n = records.size();
  std::vector<std::pair<std::size_t, std::size_t>> within, cross;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      (records[i].actor_id == records[j].actor_id ? within : cross).emplace_back(i, j);
  if (within.empty()) throw InputError("separability_analysis: no within-actor pairs");
  if (cross.empty()) throw InputError("separability_analysis: no cross-actor pairs");

  Rng rng(derive_seed(seed, kStreamPairSampling));
  const auto draw = [&](const std::vector<std::pair<std::size_t, std::size_t>>& space) {
    std::vector<double> sims;
    sims.reserve(static_cast<std::size_t>(pairs_per_class));
    for (int k = 0; k < pairs_per_class; ++k) {
      const auto& pr = space[static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(space.size()) - 1))];
      sims.push_back(cosine_similarity(records[pr.first].fingerprint.values,
                                       records[pr.second].fingerprint.values));
    }
    return sims;
  };
  // Draw order (within first) is part of the deterministic contract.
  const std::vector<double> w = draw(within);
  const std::vector<double> x = draw(cross);

  SeparabilityReport rep;
  rep.sampled_pairs = pairs_per_class;
  rep.mean_within = stats::mean(w);
  rep.mean_cross = stats::mean(x);
  rep.gap_delta_s = rep.mean_within - rep.mean_cross;
  rep.std_within = std::sqrt(stats::sample_variance(w));
  const double vw = stats::sample_variance(w);
  const double vx = stats::sample_variance(x);
  if (vw <= 0.0 && vx <= 0.0) {
    // No spread in either class: identical-population edge, not a test failure.
    rep.t_statistic = 0.0;
    rep.p_value = std::abs(rep.gap_delta_s) < 1e-12 ? 1.0 : 0.0;
  } else {
    const stats::WelchResult t = stats::welch_t_test(w, x);
    rep.t_statistic = t.t;
    rep.p_value = t.p;
  }
  const double per_actor =
      static_cast<double>(n) / static_cast<double>(actor_ids_of(records).size());
  rep.required_gap = stats::kZTwoSided95 * rep.std_within / std::sqrt(per_actor);
  if (within_out) *within_out = w;
  if (cross_out) *cross_out = x;
  return rep;
}

SeparabilityReport separability_analysis(const std::vector<FingerprintRecord>& records,
                                         int pairs_per_class, std::uint64_t seed) {
  return separability_analysis(records, pairs_per_class, seed, nullptr, nullptr);
}

EvaluationReport evaluate_dataset(const std::vector<Campaign>& campaigns,
                                  const AttributionConfig& config,
                                  const ToolClusterCatalog& catalog,
                                  const EvaluationOptions& options) {
  const std::vector<FingerprintRecord> records = fingerprint_campaigns(campaigns, catalog);
  EvaluationReport report = run_temporal_loo(records, config);
  report.separability =
      separability_analysis(records, options.pairs_per_class, options.pair_seed);
  report.separability_computed = true;
  return report;
}

std::vector<LearningCurvePoint> learning_curve(const std::vector<FingerprintRecord>& records,
                                               const AttributionConfig& config,
                                               const std::vector<int>& min_train_values) {
  if (min_train_values.empty()) throw InputError("learning_curve: no min_train values");
  std::vector<LearningCurvePoint> out;
  out.reserve(min_train_values.size());
  for (int v : min_train_values) {
    AttributionConfig cfg = config;
    cfg.min_train = v;
    const EvaluationReport rep = run_temporal_loo(records, cfg);
    LearningCurvePoint p;
    p.min_train = v;
    p.arcane_evaluated = rep.arcane.evaluated;
    p.arcane_accuracy = rep.arcane.overall_accuracy;
    p.baseline_evaluated = rep.baseline.evaluated;
    p.baseline_accuracy = rep.baseline.overall_accuracy;
    out.push_back(p);
  }
  return out;
}

EvasionSweepReport evasion_sweep(const DatasetConfig& base_config,
                                 const AttributionConfig& attribution_config,
                                 const std::vector<double>& levels, int trials) {
  if (levels.empty()) throw InputError("evasion_sweep: no levels");
  if (trials < 1) throw InputError("evasion_sweep: trials must be >= 1");
  for (double lv : levels)
    if (!(lv >= 0.0 && lv <= 1.0)) throw InputError("evasion_sweep: level outside [0, 1]");
  validate_dataset_config(base_config);
  validate_attribution_config(attribution_config);
  const ToolClusterCatalog catalog = default_tool_clusters();

  const auto run_level = [&](std::size_t li) {
    EvasionSweepPoint point;
    point.evasion_level = levels[li];
    point.trials = trials;
    point.trial_accuracies.reserve(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
      DatasetConfig cfg = base_config;
      cfg.evasion_override = levels[li];
      cfg.seed = derive_seed(base_config.seed,
                             kStreamSweepBase + li * kStreamSweepStride +
                                 static_cast<std::uint64_t>(t));
      const std::vector<Campaign> campaigns = generate_dataset(cfg);
      const std::vector<FingerprintRecord> records =
          fingerprint_campaigns(campaigns, catalog);
      const EvaluationReport rep = run_temporal_loo(records, attribution_config);
      point.trial_accuracies.push_back(rep.arcane.overall_accuracy);
    }
    point.mean_accuracy = stats::mean(point.trial_accuracies);
    point.std_accuracy =
        trials >= 2 ? std::sqrt(stats::sample_variance(point.trial_accuracies)) : 0.0;
    return point;
  };

  std::vector<std::future<EvasionSweepPoint>> futures;
  futures.reserve(levels.size());
  for (std::size_t li = 0; li < levels.size(); ++li)
    futures.push_back(std::async(std::launch::async, run_level, li));

  EvasionSweepReport report;
  report.points.reserve(levels.size());
  for (auto& f : futures) report.points.push_back(f.get());

  std::vector<double> xs, ys;
  for (const auto& p : report.points)
    for (double a : p.trial_accuracies) {
      xs.push_back(p.evasion_level);
      ys.push_back(a);
    }
  const std::set<double> distinct(xs.begin(), xs.end());
  if (distinct.size() >= 2 && xs.size() >= 3) {
    report.trend = stats::slope_trend_test(xs, ys);
  } else {
    report.trend.slope = 0.0;
    report.trend.t = 0.0;
    report.trend.p = 1.0;
    report.trend.n = static_cast<int>(xs.size());
  }
  return report;
}

SimilarityMatrix similarity_matrix(const std::vector<FingerprintRecord>& records) {
  if (records.empty()) throw InputError("similarity_matrix: no records");
  std::map<std::string, std::vector<const CampaignFingerprint*>> groups;
  for (const auto& r : records) groups[r.actor_id].push_back(&r.fingerprint);

  SimilarityMatrix m;
  m.actor_ids.reserve(groups.size());
  for (const auto& [id, _] : groups) m.actor_ids.push_back(id);
  const std::size_t n = m.actor_ids.size();
  m.mean_similarity.assign(n, std::vector<double>(n, 0.0));

  for (std::size_t i = 0; i < n; ++i) {
    const auto& gi = groups[m.actor_ids[i]];
    if (gi.size() == 1) {
      m.mean_similarity[i][i] = 1.0;  // single campaign: self-similarity by convention
    } else {
      double s = 0.0;
      std::size_t cnt = 0;
      for (std::size_t a = 0; a < gi.size(); ++a)
        for (std::size_t b = a + 1; b < gi.size(); ++b) {
          s += cosine_similarity(gi[a]->values, gi[b]->values);
          ++cnt;
        }
      m.mean_similarity[i][i] = s / static_cast<double>(cnt);
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& gj = groups[m.actor_ids[j]];
      double s = 0.0;
      for (const auto* fa : gi)
        for (const auto* fb : gj) s += cosine_similarity(fa->values, fb->values);
      const double v = s / static_cast<double>(gi.size() * gj.size());
      m.mean_similarity[i][j] = v;
      m.mean_similarity[j][i] = v;
    }
  }
  return m;
}

}  // namespace arcane
