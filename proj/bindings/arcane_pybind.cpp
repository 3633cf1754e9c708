// Python surface for the core operations: dataset generation, fingerprinting,
// similarity, and the leave-one-out evaluation. Structured results cross the
// boundary as plain dicts/lists (via the JSON forms), so the Python side never
// sees C++ object lifetimes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "arcane/evaluation.hpp"
#include "arcane/fingerprint.hpp"
#include "arcane/generator.hpp"
#include "arcane/roster.hpp"
#include "arcane/serialize.hpp"

namespace py = pybind11;
using namespace arcane;

namespace {

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(py::str(j.dump()));
}

nlohmann::json py_to_json(const py::handle& obj) {
  const auto dumped =
      py::cast<std::string>(py::module_::import("json").attr("dumps")(obj));
  return nlohmann::json::parse(dumped);
}

std::array<double, kFingerprintDims> to_values(const std::vector<double>& v) {
  if (v.size() != static_cast<std::size_t>(kFingerprintDims))
    throw std::invalid_argument("expected 24 fingerprint values");
  std::array<double, kFingerprintDims> out{};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = v[i];
  return out;
}

DatasetConfig make_dataset_config(std::uint64_t seed, int campaigns_per_actor,
                                  bool evasion_enabled, const py::object& evasion_override) {
  DatasetConfig cfg;
  cfg.actors = default_actor_roster();
  cfg.seed = seed;
  cfg.campaigns_per_actor = campaigns_per_actor;
  cfg.evasion_enabled = evasion_enabled;
  if (!evasion_override.is_none()) cfg.evasion_override = evasion_override.cast<double>();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_arcane, m) {
  m.doc() = "Cross-campaign attacker re-identification core";
  m.attr("__version__") = "0.1.0";

  m.def("feature_names", &fingerprint_feature_names,
        "Stable names of the 24 fingerprint dimensions");

  m.def(
      "default_roster",
      []() {
        ojson arr = ojson::array();
        for (const auto& p : default_actor_roster()) arr.push_back(actor_profile_to_json(p));
        return json_to_py(arr);
      },
      "The built-in eight-actor roster as a list of dicts");

  m.def(
      "generate",
      [](std::uint64_t seed, int campaigns_per_actor, bool evasion_enabled,
         const py::object& evasion_override) {
        const DatasetConfig cfg = make_dataset_config(seed, campaigns_per_actor,
                                                      evasion_enabled, evasion_override);
        ojson arr = ojson::array();
        for (const auto& c : generate_dataset(cfg)) arr.push_back(campaign_to_json(c));
        return json_to_py(arr);
      },
      py::arg("seed") = 42, py::arg("campaigns_per_actor") = 12,
      py::arg("evasion_enabled") = true, py::arg("evasion_override") = py::none(),
      "Generate the synthetic campaign dataset as a list of dicts");

  m.def(
      "fingerprint",
      [](const py::object& campaign) {
        const Campaign c = campaign_from_json(py_to_json(campaign));
        return json_to_py(fingerprint_to_json(extract_fingerprint(c, default_tool_clusters())));
      },
      py::arg("campaign"), "24-dimensional fingerprint of one campaign dict");

  m.def(
      "cosine",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        return cosine_similarity(to_values(a), to_values(b));
      },
      py::arg("a"), py::arg("b"), "Cosine similarity of two 24-value fingerprints");

  m.def(
      "evaluate",
      [](std::uint64_t seed, int min_train, int pairs, int campaigns_per_actor) {
        const DatasetConfig dcfg =
            make_dataset_config(seed, campaigns_per_actor, true, py::none());
        AttributionConfig acfg;
        acfg.min_train = min_train;
        acfg.num_actors_n = static_cast<int>(dcfg.actors.size());
        EvaluationOptions opts;
        opts.pairs_per_class = pairs;
        opts.pair_seed = seed;
        const EvaluationReport report = evaluate_dataset(
            generate_dataset(dcfg), acfg, default_tool_clusters(), opts);
        return json_to_py(report_to_json(report));
      },
      py::arg("seed") = 42, py::arg("min_train") = 1, py::arg("pairs") = 2000,
      py::arg("campaigns_per_actor") = 12,
      "Temporal leave-one-out evaluation; returns the full report dict");

  m.def(
      "similarity_matrix",
      [](std::uint64_t seed, int campaigns_per_actor) {
        const DatasetConfig dcfg =
            make_dataset_config(seed, campaigns_per_actor, true, py::none());
        const auto records =
            fingerprint_campaigns(generate_dataset(dcfg), default_tool_clusters());
        const SimilarityMatrix matrix = similarity_matrix(records);
        ojson j;
        j["actor_ids"] = matrix.actor_ids;
        ojson rows = ojson::array();
        for (const auto& row : matrix.mean_similarity) rows.push_back(row);
        j["mean_similarity"] = std::move(rows);
        return json_to_py(j);
      },
      py::arg("seed") = 42, py::arg("campaigns_per_actor") = 12,
      "Actor-by-actor mean fingerprint similarity");
}
