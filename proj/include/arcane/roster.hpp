#pragma once

#include <string>
#include <vector>

#include "arcane/types.hpp"

namespace arcane {

// The 8 built-in actor profiles. Tabulated parameters (origin, sophistication,
// TOR probability, tool churn, mean dwell) are fixed; the remaining fields are
// documented defaults keyed to each actor's origin and tradecraft.
std::vector<ActorProfile> default_actor_roster();

std::vector<std::string> actor_ids(const std::vector<ActorProfile>& roster);

// Every tool the generator may place in a campaign toolset: the 17 cluster
// tools plus 8 commodity utilities that belong to no cluster.
const std::vector<std::string>& global_tool_pool();

// Indices into default_tool_clusters() that an actor's toolset is always
// biased to include. Credential theft and a C2 framework are universal
// tradecraft; each origin additionally keeps one specialty family: Chinese
// RATs for CN, AD recon for RU, nation-state implants for KP, analyst
// tooling for IR.
std::vector<int> characteristic_clusters(const ActorProfile& profile);

// Throws ValidationError on a profile violating its invariants.
void validate_profile(const ActorProfile& profile);

}  // namespace arcane
