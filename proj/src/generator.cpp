#include "arcane/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <map>
#include <set>
#include <string>

#include "arcane/error.hpp"
#include "arcane/fingerprint.hpp"
#include "arcane/rng.hpp"
#include "arcane/roster.hpp"
#include "arcane/time_util.hpp"

namespace arcane {

namespace {

// Sampling knobs. These set where the fingerprint population sits, and the
// evaluation bands are sensitive to them; change with care.
constexpr double kOffHoursRate = 0.25;
constexpr double kDwellLogSigma = 0.90;
constexpr int kDateJitterDays = 7;
constexpr int kCallbackSpanDays = 7;  // callback day offsets in [0, 6]
constexpr int kMinCallbacks = 3;
constexpr int kMaxCallbacks = 8;
constexpr double kEnUsSpoofShare = 0.5;
constexpr std::size_t kRecentIpWindow = 6;

// Churn replacement weights. Characteristic-cluster tools are favoured, but
// other families keep real mass so no cluster is exclusive evidence of one
// actor; commodity utilities sit in between. Cluster weights are per family
// (split across member tools) so two- and three-tool families surface at the
// same rate. kAnchorBeta is the probability a replacement draw returns to the
// actor's own base kit instead of exploring the pool; it bounds how far the
// walk wanders from the base toolset.
constexpr double kCharacteristicClusterWeight = 4.0;
constexpr double kOtherClusterWeight = 3.5;
constexpr double kCommodityWeight = 3.0;
constexpr double kAnchorBeta = 0.30;

// Each callback carries the subset of the campaign toolset actually exercised
// in that beacon window; operators rarely run the whole kit at once.
constexpr double kToolUseRate = 0.58;
constexpr std::size_t kMinToolsPerCallback = 2;

// VM usage rises with sophistication (disposable sandboxed operations).
double vm_probability(double sophistication) { return 0.55 + 0.35 * sophistication; }

// ASN footprint grows with infrastructure rotation.
int asn_pool_size(double ip_rotation) {
  const int sz = 2 + static_cast<int>(std::lround(8.0 * (ip_rotation - 0.5)));
  return std::clamp(sz, 2, 8);
}

const std::vector<std::string>& country_pool() {
  static const std::vector<std::string> v = {"KP", "RU", "CN", "IR", "US",
                                             "DE", "NL", "UA", "VN", "BR"};
  return v;
}

const std::vector<std::string>& locale_pool() {
  static const std::vector<std::string> v = {"en_US", "ko_KR", "ru_RU", "zh_CN",
                                             "fa_IR", "de_DE", "pt_BR", "ja_JP"};
  return v;
}

struct OsWeights {
  std::vector<std::string> names;
  std::vector<double> weights;
};

OsWeights os_weights_for(const std::string& origin) {
  if (origin == "CN") return {{"windows", "linux", "macos"}, {0.6, 0.3, 0.1}};
  if (origin == "RU") return {{"windows", "linux"}, {0.5, 0.5}};
  if (origin == "IR") return {{"windows", "linux"}, {0.7, 0.3}};
  return {{"windows", "linux"}, {0.6, 0.4}};
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Stable per-actor ASN pool; independent of the dataset seed so an actor's
// infrastructure footprint is a property of the profile, not of one run.
std::vector<std::string> make_asn_pool(const ActorProfile& p) {
  const int n = asn_pool_size(p.ip_rotation);
  std::vector<std::string> pool;
  std::set<std::string> seen;
  std::uint64_t salt = 0;
  while (static_cast<int>(pool.size()) < n) {
    const std::uint64_t v = mix64(fnv1a(p.actor_id) + salt++);
    std::string asn = "AS" + std::to_string(1000 + v % 64000);
    if (seen.insert(asn).second) pool.push_back(std::move(asn));
  }
  return pool;
}

std::string fresh_ip(Rng& rng) {
  const int a = static_cast<int>(rng.uniform_int(11, 223));
  const int b = static_cast<int>(rng.uniform_int(0, 255));
  const int c = static_cast<int>(rng.uniform_int(0, 255));
  const int d = static_cast<int>(rng.uniform_int(1, 254));
  return std::to_string(a) + "." + std::to_string(b) + "." + std::to_string(c) + "." +
         std::to_string(d);
}

// tool name -> cluster index in the default catalog, or -1 for commodity tools.
int cluster_of(const std::string& tool) {
  static const std::map<std::string, int> index = [] {
    std::map<std::string, int> m;
    const ToolClusterCatalog catalog = default_tool_clusters();
    for (std::size_t c = 0; c < catalog.clusters.size(); ++c)
      for (const auto& t : catalog.clusters[c].tools) m[t] = static_cast<int>(c);
    return m;
  }();
  const auto it = index.find(tool);
  return it == index.end() ? -1 : it->second;
}

bool contains(const std::vector<int>& xs, int v) {
  return std::find(xs.begin(), xs.end(), v) != xs.end();
}

bool has_tool(const std::vector<std::string>& tools, const std::string& t) {
  return std::find(tools.begin(), tools.end(), t) != tools.end();
}

// Size of the cluster a tool belongs to, for per-family weight normalization.
int cluster_size(int cluster_index) {
  static const std::vector<int> sizes = [] {
    std::vector<int> s;
    for (const auto& c : default_tool_clusters().clusters)
      s.push_back(static_cast<int>(c.tools.size()));
    return s;
  }();
  return sizes[static_cast<std::size_t>(cluster_index)];
}

std::string draw_replacement(Rng& rng, const std::vector<std::string>& current,
                             const std::vector<std::string>& base,
                             const std::vector<int>& characteristic) {
  // Anchor pull: operators re-issue kit from their own arsenal more often
  // than they adopt something new.
  if (rng.bernoulli(kAnchorBeta)) {
    std::vector<const std::string*> home;
    for (const auto& tool : base)
      if (!has_tool(current, tool)) home.push_back(&tool);
    if (!home.empty())
      return *home[static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(home.size()) - 1))];
  }
  const auto& pool = global_tool_pool();
  std::vector<const std::string*> candidates;
  std::vector<double> weights;
  for (const auto& tool : pool) {
    if (has_tool(current, tool)) continue;
    const int c = cluster_of(tool);
    double w = kCommodityWeight;
    if (c >= 0) {
      const double fam =
          contains(characteristic, c) ? kCharacteristicClusterWeight : kOtherClusterWeight;
      w = fam * 3.0 / static_cast<double>(cluster_size(c));
    }
    candidates.push_back(&tool);
    weights.push_back(w);
  }
  if (candidates.empty()) throw InputError("draw_replacement: tool pool exhausted");
  return *candidates[rng.weighted_index(weights)];
}

void ensure_characteristic(Rng& rng, std::vector<std::string>& tools,
                           const std::vector<int>& characteristic,
                           const ToolClusterCatalog& catalog) {
  for (int ci : characteristic) {
    const auto& cluster = catalog.clusters[static_cast<std::size_t>(ci)].tools;
    bool present = false;
    for (const auto& t : tools)
      if (has_tool(cluster, t)) {
        present = true;
        break;
      }
    if (present) continue;
    const std::string& add =
        cluster[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(cluster.size()) - 1))];
    // Evict a slot that is not itself holding another characteristic family.
    std::vector<std::size_t> victims;
    for (std::size_t i = 0; i < tools.size(); ++i)
      if (!contains(characteristic, cluster_of(tools[i]))) victims.push_back(i);
    const std::size_t vi =
        victims.empty()
            ? static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(tools.size()) - 1))
            : victims[static_cast<std::size_t>(
                  rng.uniform_int(0, static_cast<std::int64_t>(victims.size()) - 1))];
    tools[vi] = add;
  }
}

// One campaign's toolset: churn-driven replacement of the previous campaign's
// set (each replacement either returns to the base kit or explores the pool),
// then the characteristic-cluster bias.
std::vector<std::string> churn_toolset(Rng& rng, std::vector<std::string> tools,
                                       const std::vector<std::string>& base,
                                       double churn_eff, const std::vector<int>& characteristic,
                                       const ToolClusterCatalog& catalog) {
  const std::vector<std::string> before = tools;
  for (const auto& t : before) {
    if (!rng.bernoulli(churn_eff)) continue;
    const auto it = std::find(tools.begin(), tools.end(), t);
    if (it == tools.end()) continue;
    tools.erase(it);
    tools.push_back(draw_replacement(rng, tools, base, characteristic));
  }
  ensure_characteristic(rng, tools, characteristic, catalog);
  std::sort(tools.begin(), tools.end());
  return tools;
}

}  // namespace

double evasion_level(const ActorProfile& profile, int campaign_index, int total_campaigns) {
  if (total_campaigns < 1) throw InputError("evasion_level: total_campaigns must be >= 1");
  if (campaign_index < 0 || campaign_index >= total_campaigns)
    throw InputError("evasion_level: campaign index out of range");
  if (total_campaigns == 1) return 0.0;
  return profile.sophistication / 2.0 * static_cast<double>(campaign_index) /
         static_cast<double>(total_campaigns - 1);
}

void validate_dataset_config(const DatasetConfig& config) {
  if (config.actors.empty()) throw ValidationError("actors: empty roster");
  std::set<std::string> ids;
  for (const auto& p : config.actors) {
    validate_profile(p);
    if (!ids.insert(p.actor_id).second)
      throw ValidationError("actors: duplicate actor_id " + p.actor_id);
  }
  if (config.campaigns_per_actor < 1)
    throw ValidationError("campaigns_per_actor: must be >= 1");
  if (!(config.window_start < config.window_end))
    throw ValidationError("window: window_start must precede window_end");
  if (config.evasion_override &&
      !(*config.evasion_override >= 0.0 && *config.evasion_override <= 1.0))
    throw ValidationError("evasion_override: outside [0, 1]");
}

std::vector<Campaign> generate_dataset(const DatasetConfig& config) {
  validate_dataset_config(config);
  Rng rng(derive_seed(config.seed, kStreamDataset));
  const ToolClusterCatalog catalog = default_tool_clusters();

  const std::int64_t span = config.window_end - config.window_start;
  const int per_actor = config.campaigns_per_actor;

  struct Draft {
    int actor_index = 0;
    int campaign_index = 0;
    std::int64_t date = 0;
    double evasion = 0.0;
    std::vector<CallbackTelemetry> callbacks;
  };
  std::vector<Draft> drafts;
  drafts.reserve(config.actors.size() * static_cast<std::size_t>(per_actor));
  std::set<std::int64_t> used_dates;

  for (std::size_t ai = 0; ai < config.actors.size(); ++ai) {
    const ActorProfile& p = config.actors[ai];
    const std::vector<int> characteristic = characteristic_clusters(p);
    const std::vector<std::string> asns = make_asn_pool(p);
    const OsWeights os = os_weights_for(p.origin_country);
    const double vm_prob = vm_probability(p.sophistication);
    std::vector<std::string> toolset = p.base_toolset;
    std::sort(toolset.begin(), toolset.end());
    std::deque<std::string> recent_ips;

    for (int j = 0; j < per_actor; ++j) {
      double e = 0.0;
      if (config.evasion_override)
        e = *config.evasion_override * p.sophistication / 2.0;
      else if (config.evasion_enabled)
        e = evasion_level(p, j, per_actor);

      // Jittered grid slot; campaign start dates are globally unique so the
      // temporal protocol has a strict order.
      const std::int64_t center =
          config.window_start +
          static_cast<std::int64_t>((j + 0.5) * static_cast<double>(span) / per_actor);
      std::int64_t date = 0;
      bool placed = false;
      for (int attempt = 0; attempt < 100; ++attempt) {
        date = center + rng.uniform_int(-kDateJitterDays, kDateJitterDays);
        if (used_dates.count(date) == 0) {
          placed = true;
          break;
        }
      }
      if (!placed) {
        date = center + kDateJitterDays + 1;
        while (used_dates.count(date) != 0) ++date;
      }
      used_dates.insert(date);

      const double churn_eff = std::min(1.0, p.tool_churn + e / 2.0);
      toolset =
          churn_toolset(rng, std::move(toolset), p.base_toolset, churn_eff, characteristic, catalog);

      const int n_callbacks = static_cast<int>(rng.uniform_int(kMinCallbacks, kMaxCallbacks));
      const double tor_eff = std::min(1.0, p.tor_prob + e);
      const double mu = std::log(p.mean_dwell_hours) - kDwellLogSigma * kDwellLogSigma / 2.0;

      std::vector<CallbackTelemetry> callbacks;
      callbacks.reserve(static_cast<std::size_t>(n_callbacks));
      for (int k = 0; k < n_callbacks; ++k) {
        CallbackTelemetry cb;
        const std::int64_t day = date + rng.uniform_int(0, kCallbackSpanDays - 1);
        int local_hour;
        if (rng.bernoulli(1.0 - kOffHoursRate))
          local_hour = static_cast<int>(
              rng.uniform_int(p.working_hours.first, p.working_hours.second - 1));
        else
          local_hour = static_cast<int>(rng.uniform_int(0, 23));
        const int utc_hour = ((local_hour - p.utc_offset) % 24 + 24) % 24;
        cb.timestamp = day * timeutil::kSecondsPerDay + utc_hour * 3600 +
                       rng.uniform_int(0, 59) * 60 + rng.uniform_int(0, 59);
        cb.is_tor = rng.bernoulli(tor_eff);
        cb.is_vpn = rng.bernoulli(p.vpn_prob);
        cb.is_vm = rng.bernoulli(vm_prob);
        if (rng.bernoulli(e))
          cb.locale = rng.bernoulli(kEnUsSpoofShare) ? "en_US" : rng.pick(locale_pool());
        else
          cb.locale = p.preferred_locale;
        cb.utc_offset = p.utc_offset;
        cb.country =
            rng.bernoulli(1.0 - e / 2.0) ? p.origin_country : rng.pick(country_pool());
        if (recent_ips.empty() || rng.bernoulli(p.ip_rotation)) {
          cb.source_ip = fresh_ip(rng);
          recent_ips.push_front(cb.source_ip);
          if (recent_ips.size() > kRecentIpWindow) recent_ips.pop_back();
        } else {
          cb.source_ip = recent_ips[static_cast<std::size_t>(
              rng.uniform_int(0, static_cast<std::int64_t>(recent_ips.size()) - 1))];
        }
        cb.asn_prefix = asns[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(asns.size()) - 1))];
        cb.os_family = os.names[rng.weighted_index(os.weights)];
        cb.dwell_hours = std::exp(mu + kDwellLogSigma * rng.normal());
        cb.tools.clear();
        for (const auto& t : toolset)
          if (rng.bernoulli(kToolUseRate)) cb.tools.push_back(t);
        while (cb.tools.size() < kMinToolsPerCallback) {
          const auto& t = toolset[static_cast<std::size_t>(
              rng.uniform_int(0, static_cast<std::int64_t>(toolset.size()) - 1))];
          if (!has_tool(cb.tools, t)) cb.tools.push_back(t);
        }
        std::sort(cb.tools.begin(), cb.tools.end());
        callbacks.push_back(std::move(cb));
      }
      std::stable_sort(callbacks.begin(), callbacks.end(),
                       [](const CallbackTelemetry& a, const CallbackTelemetry& b) {
                         return a.timestamp < b.timestamp;
                       });

      drafts.push_back({static_cast<int>(ai), j, date, e, std::move(callbacks)});
    }
  }

  std::sort(drafts.begin(), drafts.end(), [](const Draft& a, const Draft& b) {
    if (a.date != b.date) return a.date < b.date;
    if (a.actor_index != b.actor_index) return a.actor_index < b.actor_index;
    return a.campaign_index < b.campaign_index;
  });

  std::vector<Campaign> out;
  out.reserve(drafts.size());
  for (std::size_t i = 0; i < drafts.size(); ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "C-%04zu", i + 1);
    Campaign c;
    c.campaign_id = id;
    c.actor_id = config.actors[static_cast<std::size_t>(drafts[i].actor_index)].actor_id;
    c.start_date = drafts[i].date;
    c.evasion_level = drafts[i].evasion;
    c.callbacks = std::move(drafts[i].callbacks);
    out.push_back(std::move(c));
  }
  return out;
}

std::size_t count_callbacks(const std::vector<Campaign>& campaigns) {
  std::size_t n = 0;
  for (const auto& c : campaigns) n += c.callbacks.size();
  return n;
}

}  // namespace arcane
