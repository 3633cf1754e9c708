#include "arcane/roster.hpp"

#include "arcane/error.hpp"

namespace arcane {

std::vector<ActorProfile> default_actor_roster() {
  // actor_id, alias, origin, sophistication, tor, vpn, churn, rotation, dwell,
  // locale, toolset, working hours (local), utc offset.
  // Base toolsets hold the actor's signature families (credential theft, a C2
  // framework, the origin's specialty implant) plus commodity utilities; the
  // per-campaign churn walk is anchored to this set.
  std::vector<ActorProfile> roster;
  roster.push_back({"APT-001", "LAZARUSHOUND", "KP", 0.82, 0.65, 0.70, 0.15, 0.74, 4.2,
                    "ko_KR",
                    {"Mimikatz", "Cobalt Strike", "AppleJeus", "PsExec", "ProcDump",
                     "Nmap", "Responder", "Seatbelt"},
                    {9, 18},
                    9});
  roster.push_back({"APT-002", "FROZENBEAR", "RU", 0.91, 0.55, 0.64, 0.20, 0.72, 2.8,
                    "ru_RU",
                    {"LaZagne", "Metasploit", "Impacket", "ProcDump", "Nmap", "Chisel",
                     "PowerView", "PsExec"},
                    {8, 17},
                    3});
  roster.push_back({"APT-003", "DOUBLEPANDA", "CN", 0.88, 0.40, 0.74, 0.18, 0.74, 6.1,
                    "zh_CN",
                    {"Mimikatz", "Cobalt Strike", "PlugX", "ShadowPad", "CrackMapExec",
                     "PsExec", "Nmap", "PowerView"},
                    {9, 19},
                    8});
  roster.push_back({"APT-004", "SILENTFOX", "IR", 0.76, 0.70, 0.70, 0.25, 0.80, 3.5,
                    "fa_IR",
                    {"Rubeus", "Havoc", "Wireshark", "Responder", "Chisel", "PsExec",
                     "Nmap", "ProcDump"},
                    {8, 16},
                    4});
  roster.push_back({"APT-005", "MINTLEAF", "KP", 0.79, 0.60, 0.74, 0.20, 0.70, 5.0,
                    "ko_KR",
                    {"LaZagne", "Metasploit", "AppleJeus", "Chisel", "PowerView",
                     "Seatbelt", "Nmap", "PsExec"},
                    {10, 19},
                    9});
  roster.push_back({"APT-006", "IRONSHARD", "RU", 0.85, 0.50, 0.70, 0.22, 0.78, 3.2,
                    "ru_RU",
                    {"Rubeus", "Cobalt Strike", "BloodHound", "Impacket", "ProcDump",
                     "PowerView", "CrackMapExec", "Seatbelt"},
                    {9, 17},
                    3});
  roster.push_back({"APT-007", "VOIDLOTUS", "CN", 0.93, 0.35, 0.70, 0.15, 0.70, 7.3,
                    "zh_CN",
                    {"Mimikatz", "Havoc", "Gh0st RAT", "PlugX", "CrackMapExec",
                     "Chisel", "Seatbelt", "PowerView"},
                    {9, 18},
                    8});
  roster.push_back({"APT-008", "STORMVIPER", "KP", 0.84, 0.68, 0.78, 0.18, 0.78, 4.8,
                    "ko_KR",
                    {"Rubeus", "Metasploit", "ComRAT", "Responder", "Nmap",
                     "CrackMapExec", "ProcDump", "Chisel"},
                    {7, 18},
                    9});
  return roster;
}

std::vector<std::string> actor_ids(const std::vector<ActorProfile>& roster) {
  std::vector<std::string> ids;
  ids.reserve(roster.size());
  for (const auto& p : roster) ids.push_back(p.actor_id);
  return ids;
}

const std::vector<std::string>& global_tool_pool() {
  static const std::vector<std::string> pool = {
      // cluster tools
      "Mimikatz", "LaZagne", "Rubeus",
      "Cobalt Strike", "Metasploit", "Havoc",
      "PlugX", "Gh0st RAT", "ShadowPad",
      "BloodHound", "Impacket",
      "Turla", "ComRAT", "AppleJeus",
      "Wireshark", "IDA Pro", "Ghidra",
      // commodity utilities, no cluster membership
      "PsExec", "ProcDump", "Nmap", "CrackMapExec",
      "Chisel", "Responder", "PowerView", "Seatbelt",
  };
  return pool;
}

std::vector<int> characteristic_clusters(const ActorProfile& profile) {
  // Credential theft and a C2 framework are universal tradecraft; each origin
  // additionally keeps its specialty family in every campaign.
  std::vector<int> idx = {0, 1};
  if (profile.origin_country == "CN") idx.push_back(2);
  if (profile.origin_country == "RU") idx.push_back(3);
  if (profile.origin_country == "KP") idx.push_back(4);
  if (profile.origin_country == "IR") idx.push_back(5);
  return idx;
}

void validate_profile(const ActorProfile& profile) {
  if (profile.actor_id.empty()) throw ValidationError("actor_id: empty");
  auto check01 = [&](double v, const char* field) {
    if (!(v >= 0.0 && v <= 1.0))
      throw ValidationError(std::string(field) + ": outside [0, 1] for " + profile.actor_id);
  };
  check01(profile.sophistication, "sophistication");
  check01(profile.tor_prob, "tor_prob");
  check01(profile.vpn_prob, "vpn_prob");
  check01(profile.tool_churn, "tool_churn");
  check01(profile.ip_rotation, "ip_rotation");
  if (!(profile.mean_dwell_hours > 0.0))
    throw ValidationError("mean_dwell_hours: must be positive for " + profile.actor_id);
  if (profile.base_toolset.empty())
    throw ValidationError("base_toolset: empty for " + profile.actor_id);
  if (profile.working_hours.first < 0 || profile.working_hours.first > 23 ||
      profile.working_hours.second < 1 || profile.working_hours.second > 24 ||
      profile.working_hours.first >= profile.working_hours.second)
    throw ValidationError("working_hours: need 0 <= start < end <= 24 for " +
                          profile.actor_id);
  if (profile.utc_offset < -12 || profile.utc_offset > 14)
    throw ValidationError("utc_offset: outside [-12, +14] for " + profile.actor_id);
}

}  // namespace arcane
