#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arcane/types.hpp"

namespace arcane {

// Per-actor running-mean fingerprints for the nearest-neighbour baseline.
struct BaselineState {
  std::map<std::string, RunningProfile> profiles;

  static BaselineState for_actors(const std::vector<std::string>& actor_ids);
};

// Folds one fingerprint into the actor's running mean.
void baseline_observe(BaselineState& state, const CampaignFingerprint& fingerprint,
                      const std::string& actor_id);

// Nearest profile by cosine similarity among actors with count >= min_train.
// The posterior is each eligible actor's share of the similarity mass
// (ineligible actors are carried at 0); ccc_scores holds the raw similarities.
// Returns nullopt while no profile is eligible.
std::optional<AttributionResult> baseline_attribute(const BaselineState& state,
                                                    const CampaignFingerprint& query,
                                                    const AttributionConfig& config);

}  // namespace arcane
