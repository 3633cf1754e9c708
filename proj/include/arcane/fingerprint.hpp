#pragma once

#include <string>
#include <vector>

#include "arcane/types.hpp"

namespace arcane {

// The 6 tool-family clusters behind fingerprint dims 18-23, in fixed order:
// credential theft, C2 frameworks, Chinese RAT families, AD recon,
// nation-state implants, analyst tools.
ToolClusterCatalog default_tool_clusters();

// Stable names for the 24 fingerprint dimensions, index-aligned with values[].
const std::vector<std::string>& fingerprint_feature_names();

// Throws ValidationError naming the offending field.
void validate_callback(const CallbackTelemetry& cb);

// |a n b| / |a u b|; two empty sets compare as identical (1.0).
double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b);

// Shannon entropy of the hour-of-day histogram, normalized by log(24).
double hour_entropy(const std::vector<int>& hours);

// Cosine similarity clamped to [0, 1]. A zero vector yields 0 with a logged
// warning rather than an error, so degenerate fingerprints cannot abort a sweep.
double cosine_similarity(const std::array<double, kFingerprintDims>& a,
                         const std::array<double, kFingerprintDims>& b);
double cosine_similarity(const CampaignFingerprint& a, const CampaignFingerprint& b);

// Computes the 24-dim fingerprint; campaign_id and campaign_date are left for
// the caller to fill (see the Campaign overload).
CampaignFingerprint extract_fingerprint(const std::vector<CallbackTelemetry>& callbacks,
                                        const ToolClusterCatalog& catalog);

CampaignFingerprint extract_fingerprint(const Campaign& campaign,
                                        const ToolClusterCatalog& catalog);

}  // namespace arcane
