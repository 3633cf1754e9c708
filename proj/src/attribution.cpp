#include "arcane/attribution.hpp"

#include <algorithm>
#include <cmath>

#include "arcane/error.hpp"
#include "arcane/fingerprint.hpp"
#include "arcane/log.hpp"

namespace arcane {

void validate_attribution_config(const AttributionConfig& config) {
  if (!(config.decay_rate_delta >= 0.0))
    throw ValidationError("decay_rate_delta: must be >= 0");
  if (!(config.similarity_threshold_tau_s >= 0.0 &&
        config.similarity_threshold_tau_s <= 1.0))
    throw ValidationError("similarity_threshold_tau_s: outside [0, 1]");
  if (!(config.confidence_threshold_tau_c >= 0.0 &&
        config.confidence_threshold_tau_c <= 1.0))
    throw ValidationError("confidence_threshold_tau_c: outside [0, 1]");
  if (config.min_train < 1) throw ValidationError("min_train: must be >= 1");
  if (config.num_actors_n < 2) throw ValidationError("num_actors_n: must be >= 2");
}

PosteriorDistribution uniform_prior(const std::vector<std::string>& actor_ids) {
  if (actor_ids.empty()) throw InputError("uniform_prior: no actors");
  PosteriorDistribution prior;
  const double p = 1.0 / static_cast<double>(actor_ids.size());
  for (const auto& id : actor_ids) prior.probabilities[id] = p;
  if (prior.probabilities.size() != actor_ids.size())
    throw InputError("uniform_prior: duplicate actor ids");
  return prior;
}

double cross_campaign_confidence(const CampaignFingerprint& query,
                                 const std::vector<KbEntry>& entries,
                                 std::int64_t reference_date,
                                 const AttributionConfig& config) {
  double sum = 0.0;
  int kept = 0;
  for (const auto& entry : entries) {
    const double s = cosine_similarity(query.values, entry.fingerprint.values);
    if (s < config.similarity_threshold_tau_s) continue;
    const double d_k =
        static_cast<double>(std::max<std::int64_t>(0, reference_date - entry.campaign_date));
    sum += s * std::exp(-config.decay_rate_delta * d_k);
    ++kept;
  }
  return kept == 0 ? 0.0 : sum / kept;
}

LikelihoodPair evidence_likelihood(double ccc, const AttributionConfig& config) {
  constexpr double kSlack = 1e-9;
  if (ccc < -kSlack || ccc > 1.0 + kSlack)
    throw InputError("evidence_likelihood: ccc outside [0, 1]");
  if (config.num_actors_n < 2)
    throw InputError("evidence_likelihood: num_actors_n must be >= 2");
  ccc = std::clamp(ccc, 0.0, 1.0);
  LikelihoodPair out;
  out.l = 0.50 + 0.45 * ccc;
  out.l_bar = std::max(0.05, 0.50 - 0.45 * ccc / (config.num_actors_n - 1));
  return out;
}

void bayes_update(PosteriorDistribution& posterior,
                  const std::map<std::string, double>& ccc_scores,
                  const AttributionConfig& config) {
  if (posterior.probabilities.empty()) throw InputError("bayes_update: empty posterior");
  for (auto& [actor, p] : posterior.probabilities) {
    const auto it = ccc_scores.find(actor);
    const double ccc = it == ccc_scores.end() ? 0.0 : it->second;
    const LikelihoodPair lk = evidence_likelihood(ccc, config);
    const double numer = lk.l * p;
    const double denom = numer + lk.l_bar * (1.0 - p);
    p = denom > 0.0 ? numer / denom : 0.0;
  }
  double total = 0.0;
  for (const auto& [_, p] : posterior.probabilities) total += p;
  if (!(total > 0.0)) throw InputError("bayes_update: posterior mass vanished");
  for (auto& [_, p] : posterior.probabilities) p /= total;
}

std::optional<AttributionResult> attribute_campaign(const KnowledgeBase& kb,
                                                    const CampaignFingerprint& query,
                                                    const PosteriorDistribution& prior,
                                                    const AttributionConfig& config) {
  validate_attribution_config(config);
  if (kb.entries.size() < 2) throw InputError("attribute_campaign: need at least 2 actors");
  if (kb.total_entries() < static_cast<std::size_t>(config.min_train)) return std::nullopt;
  if (prior.probabilities.size() != kb.entries.size())
    throw InputError("attribute_campaign: prior does not cover the actor set");
  for (const auto& [actor, entries] : kb.entries)
    if (!prior.probabilities.count(actor))
      throw InputError("attribute_campaign: prior does not cover the actor set");

  // N is the actual candidate count; a mismatching configured value would
  // silently skew l_bar.
  AttributionConfig local = config;
  local.num_actors_n = static_cast<int>(kb.entries.size());
  if (local.num_actors_n != config.num_actors_n)
    logging::debug("attribution: num_actors_n adjusted to the knowledge base actor count");

  AttributionResult result;
  for (const auto& [actor, entries] : kb.entries)
    result.ccc_scores[actor] =
        cross_campaign_confidence(query, entries, query.campaign_date, local);

  result.posterior = prior;
  bayes_update(result.posterior, result.ccc_scores, local);

  const auto& probs = result.posterior.probabilities;
  auto best = probs.begin();
  for (auto it = std::next(probs.begin()); it != probs.end(); ++it)
    if (it->second > best->second) best = it;  // ties keep the smaller actor_id
  result.predicted_actor = best->first;
  result.confidence = best->second;
  result.high_confidence = result.confidence >= local.confidence_threshold_tau_c;
  return result;
}

std::optional<AttributionResult> attribute_campaign(const KnowledgeBase& kb,
                                                    const CampaignFingerprint& query,
                                                    const AttributionConfig& config) {
  std::vector<std::string> ids;
  ids.reserve(kb.entries.size());
  for (const auto& [actor, _] : kb.entries) ids.push_back(actor);
  if (ids.empty()) throw InputError("attribute_campaign: empty knowledge base");
  return attribute_campaign(kb, query, uniform_prior(ids), config);
}

void observe_campaign(KnowledgeBase& kb, const CampaignFingerprint& fingerprint,
                      const std::string& actor_id) {
  if (actor_id.empty()) throw InputError("observe_campaign: empty actor_id");
  KbEntry entry;
  entry.fingerprint = fingerprint;
  entry.campaign_date = fingerprint.campaign_date;
  entry.actor_id = actor_id;
  kb.entries[actor_id].push_back(std::move(entry));
  kb.reference_date = std::max(kb.reference_date, fingerprint.campaign_date);
}

}  // namespace arcane
