#include "arcane/fingerprint.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "arcane/error.hpp"
#include "arcane/log.hpp"
#include "arcane/stats.hpp"
#include "arcane/time_util.hpp"

namespace arcane {

namespace {

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

const double kLog20 = std::log(20.0);
const double kLog24 = std::log(24.0);

}  // namespace

ToolClusterCatalog default_tool_clusters() {
  ToolClusterCatalog catalog;
  catalog.clusters = {
      {"credential_theft", {"Mimikatz", "LaZagne", "Rubeus"}},
      {"c2_framework", {"Cobalt Strike", "Metasploit", "Havoc"}},
      {"chinese_rat", {"PlugX", "Gh0st RAT", "ShadowPad"}},
      {"ad_recon", {"BloodHound", "Impacket"}},
      {"nation_state_implant", {"Turla", "ComRAT", "AppleJeus"}},
      {"analyst_tool", {"Wireshark", "IDA Pro", "Ghidra"}},
  };
  return catalog;
}

const std::vector<std::string>& fingerprint_feature_names() {
  static const std::vector<std::string> names = {
      "tor_rate",
      "vpn_rate",
      "dwell_mean",
      "dwell_stddev",
      "utc_offset_mean",
      "vm_rate",
      "asn_diversity",
      "ip_diversity",
      "tool_consistency",
      "tool_count",
      "locale_nonstandard_rate",
      "country_kp",
      "country_ru",
      "country_cn",
      "country_ir",
      "hour_entropy",
      "country_concentration",
      "callback_volume",
      "cluster_credential_theft",
      "cluster_c2_framework",
      "cluster_chinese_rat",
      "cluster_ad_recon",
      "cluster_nation_state_implant",
      "cluster_analyst_tool",
  };
  return names;
}

void validate_callback(const CallbackTelemetry& cb) {
  if (cb.utc_offset < -12 || cb.utc_offset > 14)
    throw ValidationError("utc_offset: " + std::to_string(cb.utc_offset) +
                          " outside [-12, +14]");
  if (!(cb.dwell_hours >= 0.0) || !std::isfinite(cb.dwell_hours))
    throw ValidationError("dwell_hours: must be a finite non-negative real");
  std::vector<std::string> tools = cb.tools;
  std::sort(tools.begin(), tools.end());
  if (std::adjacent_find(tools.begin(), tools.end()) != tools.end())
    throw ValidationError("tools: duplicate entries in tool set");
}

double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const std::set<std::string> sa(a.begin(), a.end());
  const std::set<std::string> sb(b.begin(), b.end());
  if (sa.empty() && sb.empty()) return 1.0;
  std::size_t inter = 0;
  for (const auto& t : sa) inter += sb.count(t);
  const std::size_t uni = sa.size() + sb.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double hour_entropy(const std::vector<int>& hours) {
  if (hours.empty()) throw InputError("hour_entropy: empty hour list");
  std::vector<int> counts(24, 0);
  for (int h : hours) {
    if (h < 0 || h > 23) throw InputError("hour_entropy: hour outside [0, 23]");
    counts[static_cast<std::size_t>(h)] += 1;
  }
  return stats::shannon_entropy(counts) / kLog24;
}

double cosine_similarity(const std::array<double, kFingerprintDims>& a,
                         const std::array<double, kFingerprintDims>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (int i = 0; i < kFingerprintDims; ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) {
    logging::warn("cosine_similarity: zero fingerprint vector, returning 0");
    return 0.0;
  }
  return clamp01(dot / (std::sqrt(na) * std::sqrt(nb)));
}

double cosine_similarity(const CampaignFingerprint& a, const CampaignFingerprint& b) {
  return cosine_similarity(a.values, b.values);
}

CampaignFingerprint extract_fingerprint(const std::vector<CallbackTelemetry>& callbacks,
                                        const ToolClusterCatalog& catalog) {
  if (callbacks.empty()) throw InputError("extract_fingerprint: empty callback list");
  for (const auto& cb : callbacks) validate_callback(cb);

  const std::size_t count = callbacks.size();
  const double n = static_cast<double>(count);

  double tor = 0.0, vpn = 0.0, vm = 0.0, offset_sum = 0.0, tool_size_sum = 0.0,
         nonstandard_locale = 0.0;
  std::vector<double> dwells;
  dwells.reserve(count);
  std::set<std::string> asns, ips, countries;
  double kp = 0.0, ru = 0.0, cn = 0.0, ir = 0.0;
  std::vector<int> hours;
  hours.reserve(count);

  for (const auto& cb : callbacks) {
    tor += cb.is_tor ? 1.0 : 0.0;
    vpn += cb.is_vpn ? 1.0 : 0.0;
    vm += cb.is_vm ? 1.0 : 0.0;
    dwells.push_back(cb.dwell_hours);
    offset_sum += cb.utc_offset;
    asns.insert(cb.asn_prefix);
    ips.insert(cb.source_ip);
    countries.insert(cb.country);
    if (cb.country == "KP") kp += 1.0;
    if (cb.country == "RU") ru += 1.0;
    if (cb.country == "CN") cn += 1.0;
    if (cb.country == "IR") ir += 1.0;
    tool_size_sum += static_cast<double>(cb.tools.size());
    if (cb.locale != "en_US") nonstandard_locale += 1.0;
    hours.push_back(timeutil::hour_of_day(cb.timestamp));
  }

  // Mean pairwise Jaccard over callback tool sets; a single callback has no
  // pairs and counts as perfectly consistent.
  double tool_consistency = 1.0;
  if (count > 1) {
    double acc = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) {
        acc += jaccard(callbacks[i].tools, callbacks[j].tools);
        pairs += 1;
      }
    }
    tool_consistency = acc / static_cast<double>(pairs);
  }

  CampaignFingerprint fp;
  fp.callback_count = static_cast<int>(count);
  auto& v = fp.values;
  v[0] = tor / n;
  v[1] = vpn / n;
  v[2] = clamp01(stats::mean(dwells) / 24.0);
  v[3] = clamp01(stats::population_stddev(dwells) / 12.0);
  v[4] = (offset_sum / n + 12.0) / 26.0;
  v[5] = vm / n;
  v[6] = static_cast<double>(asns.size()) / n;
  v[7] = static_cast<double>(ips.size()) / n;
  v[8] = tool_consistency;
  v[9] = clamp01(tool_size_sum / n / 10.0);
  v[10] = nonstandard_locale / n;
  v[11] = kp / n;
  v[12] = ru / n;
  v[13] = cn / n;
  v[14] = ir / n;
  v[15] = hour_entropy(hours);
  v[16] = 1.0 - static_cast<double>(countries.size()) / n;
  v[17] = std::min(std::log(n + 1.0) / kLog20, 1.0);

  if (catalog.clusters.size() != 6)
    throw InputError("extract_fingerprint: catalog must hold exactly 6 clusters");
  for (std::size_t c = 0; c < 6; ++c) {
    const auto& cluster = catalog.clusters[c];
    if (cluster.tools.empty())
      throw InputError("extract_fingerprint: empty tool cluster " + cluster.name);
    bool hit = false;
    for (const auto& cb : callbacks) {
      for (const auto& t : cb.tools) {
        if (std::find(cluster.tools.begin(), cluster.tools.end(), t) != cluster.tools.end()) {
          hit = true;
          break;
        }
      }
      if (hit) break;
    }
    v[18 + c] = hit ? 1.0 : 0.0;
  }

  return fp;
}

CampaignFingerprint extract_fingerprint(const Campaign& campaign,
                                        const ToolClusterCatalog& catalog) {
  CampaignFingerprint fp = extract_fingerprint(campaign.callbacks, catalog);
  fp.campaign_id = campaign.campaign_id;
  fp.campaign_date = campaign.start_date;
  return fp;
}

}  // namespace arcane
