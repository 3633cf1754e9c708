#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arcane/types.hpp"

namespace arcane {

void validate_attribution_config(const AttributionConfig& config);

// 1/N over the given actors. Throws on an empty or duplicate-bearing list.
PosteriorDistribution uniform_prior(const std::vector<std::string>& actor_ids);

// Time-decayed mean of the similarities that clear tau_s:
//   CCC = mean over {k : S_k >= tau_s} of S_k * exp(-delta * d_k)
// where d_k = max(0, reference_date - entry date) in days. No entry clears the
// threshold (or the actor has no history) -> 0.
double cross_campaign_confidence(const CampaignFingerprint& query,
                                 const std::vector<KbEntry>& entries,
                                 std::int64_t reference_date,
                                 const AttributionConfig& config);

struct LikelihoodPair {
  double l = 0.0;      // likelihood of the evidence if the actor matches
  double l_bar = 0.0;  // likelihood if it does not
};

// L = 0.50 + 0.45 * CCC, L_bar = max(0.05, 0.50 - 0.45 * CCC / (N - 1)).
// ccc outside [0, 1] beyond 1e-9 slack is an error; within slack it is clamped.
LikelihoodPair evidence_likelihood(double ccc, const AttributionConfig& config);

// One odds-form update per actor, then renormalization. Actors missing from
// ccc_scores contribute CCC = 0.
void bayes_update(PosteriorDistribution& posterior,
                  const std::map<std::string, double>& ccc_scores,
                  const AttributionConfig& config);

// Full attribution of one query against the knowledge base, measuring decay
// against the query's own campaign_date. Returns nullopt while the knowledge
// base holds fewer than min_train fingerprints. Ties on the posterior break
// toward the lexicographically smallest actor_id.
std::optional<AttributionResult> attribute_campaign(const KnowledgeBase& kb,
                                                    const CampaignFingerprint& query,
                                                    const PosteriorDistribution& prior,
                                                    const AttributionConfig& config);

// Same, with a uniform prior over the knowledge base's actors.
std::optional<AttributionResult> attribute_campaign(const KnowledgeBase& kb,
                                                    const CampaignFingerprint& query,
                                                    const AttributionConfig& config);

// Appends the fingerprint to the actor's history and advances reference_date.
void observe_campaign(KnowledgeBase& kb, const CampaignFingerprint& fingerprint,
                      const std::string& actor_id);

}  // namespace arcane
