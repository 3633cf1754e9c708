#include "arcane/baseline.hpp"

#include <algorithm>

#include "arcane/attribution.hpp"
#include "arcane/error.hpp"
#include "arcane/fingerprint.hpp"

namespace arcane {

BaselineState BaselineState::for_actors(const std::vector<std::string>& actor_ids) {
  BaselineState state;
  for (const auto& id : actor_ids) {
    RunningProfile p;
    p.actor_id = id;
    state.profiles[id] = std::move(p);
  }
  if (state.profiles.size() != actor_ids.size())
    throw InputError("BaselineState: duplicate actor ids");
  return state;
}

void baseline_observe(BaselineState& state, const CampaignFingerprint& fingerprint,
                      const std::string& actor_id) {
  auto it = state.profiles.find(actor_id);
  if (it == state.profiles.end()) {
    RunningProfile p;
    p.actor_id = actor_id;
    it = state.profiles.emplace(actor_id, std::move(p)).first;
  }
  RunningProfile& profile = it->second;
  const double next = profile.count + 1;
  for (int i = 0; i < kFingerprintDims; ++i)
    profile.mean_fingerprint[static_cast<std::size_t>(i)] +=
        (fingerprint.values[static_cast<std::size_t>(i)] -
         profile.mean_fingerprint[static_cast<std::size_t>(i)]) /
        next;
  ++profile.count;
}

std::optional<AttributionResult> baseline_attribute(const BaselineState& state,
                                                    const CampaignFingerprint& query,
                                                    const AttributionConfig& config) {
  validate_attribution_config(config);
  std::map<std::string, double> sims;
  double total = 0.0;
  for (const auto& [actor, profile] : state.profiles) {
    if (profile.count < config.min_train) continue;
    const double s = cosine_similarity(query.values, profile.mean_fingerprint);
    sims[actor] = s;
    total += s;
  }
  // A single trained profile offers no alternative to discriminate against, so
  // the query is not yet attributable rather than trivially "certain".
  if (sims.size() < 2) return std::nullopt;

  AttributionResult result;
  for (const auto& [actor, _] : state.profiles) {
    const auto it = sims.find(actor);
    result.ccc_scores[actor] = it == sims.end() ? 0.0 : it->second;
    result.posterior.probabilities[actor] = 0.0;
  }
  const double uniform = 1.0 / static_cast<double>(sims.size());
  for (const auto& [actor, s] : sims)
    result.posterior.probabilities[actor] = total > 0.0 ? s / total : uniform;

  auto best = sims.begin();
  for (auto it = std::next(sims.begin()); it != sims.end(); ++it)
    if (it->second > best->second) best = it;  // ties keep the smaller actor_id
  result.predicted_actor = best->first;
  result.confidence = result.posterior.probabilities[best->first];
  result.high_confidence = result.confidence >= config.confidence_threshold_tau_c;
  return result;
}

}  // namespace arcane
