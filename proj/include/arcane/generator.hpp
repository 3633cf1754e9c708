#pragma once

#include <cstdint>
#include <vector>

#include "arcane/types.hpp"

namespace arcane {

// Linear evasion schedule: 0 on an actor's first campaign, sophistication / 2
// on the last. total_campaigns == 1 degenerates to 0.
double evasion_level(const ActorProfile& profile, int campaign_index, int total_campaigns);

// Deterministic synthetic dataset: campaigns_per_actor campaigns per actor on
// a jittered grid across the window, globally date-sorted with unique start
// dates, each campaign carrying Uniform{3..8} callbacks sampled from the
// owning profile with its evasion level applied.
std::vector<Campaign> generate_dataset(const DatasetConfig& config);

std::size_t count_callbacks(const std::vector<Campaign>& campaigns);

void validate_dataset_config(const DatasetConfig& config);

}  // namespace arcane
