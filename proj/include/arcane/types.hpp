#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace arcane {

constexpr int kFingerprintDims = 24;

// One beacon callback. `timestamp` is seconds since the Unix epoch (UTC);
// `tools` is a set kept as a sorted, duplicate-free vector.
struct CallbackTelemetry {
  std::int64_t timestamp = 0;
  std::string source_ip;
  std::string asn_prefix;
  bool is_tor = false;
  bool is_vpn = false;
  bool is_vm = false;
  std::string os_family;
  std::string locale;
  int utc_offset = 0;  // hours, in [-12, +14]
  std::string country;
  std::vector<std::string> tools;
  double dwell_hours = 0.0;
};

// 24-dimensional behavioural summary of one campaign; every component in [0, 1].
struct CampaignFingerprint {
  std::array<double, kFingerprintDims> values{};
  std::string campaign_id;
  std::int64_t campaign_date = 0;  // campaign start, days since epoch
  int callback_count = 0;
};

struct ToolCluster {
  std::string name;
  std::vector<std::string> tools;
};

// Ordered list of 6 tool-family clusters; the order maps to fingerprint dims 18-23.
struct ToolClusterCatalog {
  std::vector<ToolCluster> clusters;
};

// Generator parameters for one simulated threat actor.
struct ActorProfile {
  std::string actor_id;
  std::string alias;
  std::string origin_country;
  double sophistication = 0.0;
  double tor_prob = 0.0;
  double vpn_prob = 0.0;
  double tool_churn = 0.0;
  double ip_rotation = 0.0;
  double mean_dwell_hours = 1.0;
  std::string preferred_locale;
  std::vector<std::string> base_toolset;
  std::pair<int, int> working_hours{9, 18};  // local [start, end)
  int utc_offset = 0;
};

struct Campaign {
  std::string campaign_id;
  std::string actor_id;  // ground truth
  std::int64_t start_date = 0;
  double evasion_level = 0.0;  // in [0, 0.5]
  std::vector<CallbackTelemetry> callbacks;
};

struct DatasetConfig {
  std::vector<ActorProfile> actors;
  int campaigns_per_actor = 12;
  std::int64_t window_start = 19723;  // 2024-01-01
  std::int64_t window_end = 20269;    // 2025-06-30
  std::uint64_t seed = 42;
  bool evasion_enabled = true;
  // When set, fixes every campaign's evasion to override * sophistication / 2,
  // replacing the linear schedule (used by the evasion sweep).
  std::optional<double> evasion_override;
};

struct AttributionConfig {
  double decay_rate_delta = 0.005;          // per day
  double similarity_threshold_tau_s = 0.45;
  double confidence_threshold_tau_c = 0.85;
  int min_train = 1;
  int num_actors_n = 8;
  // Keeps the posterior across query campaigns instead of resetting to the
  // uniform prior before each query. Off by default: campaigns are attributed
  // independently under temporal leave-one-out.
  bool carry_forward_prior = false;
};

struct PosteriorDistribution {
  std::map<std::string, double> probabilities;
};

struct AttributionResult {
  std::string predicted_actor;
  PosteriorDistribution posterior;
  double confidence = 0.0;  // max posterior
  bool high_confidence = false;
  std::map<std::string, double> ccc_scores;
};

struct KbEntry {
  CampaignFingerprint fingerprint;
  std::int64_t campaign_date = 0;
  std::string actor_id;
};

// Dated historical fingerprints per actor. The key set fixes the configured
// actor set; entries stay in insertion (temporal) order.
struct KnowledgeBase {
  std::map<std::string, std::vector<KbEntry>> entries;
  std::int64_t reference_date = 0;  // elapsed days are measured against this

  static KnowledgeBase for_actors(const std::vector<std::string>& actor_ids) {
    KnowledgeBase kb;
    for (const auto& id : actor_ids) kb.entries[id];
    return kb;
  }

  std::size_t total_entries() const {
    std::size_t n = 0;
    for (const auto& [_, v] : entries) n += v.size();
    return n;
  }
};

// Arithmetic-mean fingerprint per actor, for the nearest-neighbour baseline.
struct RunningProfile {
  std::string actor_id;
  std::array<double, kFingerprintDims> mean_fingerprint{};
  int count = 0;
};

}  // namespace arcane
