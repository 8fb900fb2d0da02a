#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qtop/catalog.hpp"
#include "qtop/domain.hpp"
#include "qtop/game.hpp"
#include "qtop/qmetric.hpp"
#include "qtop/repr.hpp"
#include "qtop/space.hpp"

namespace qtop::io {

using ordered_json = nlohmann::ordered_json;

// Space files: either an explicit open family
//   {"points": ["a","b"], "opens": [[], [1], [0,1]]}
// or a catalog reference
//   {"catalog": "omega_plus_one_scott", "depth": 12}.
struct LoadedSpace {
  topo::FiniteSpace space;
  std::optional<topo::CatalogSpace> catalog;
  bool is_catalog() const { return catalog.has_value(); }
};

LoadedSpace load_space_file(const std::string& path);
LoadedSpace parse_space_json(const ordered_json& j);

// Metric files: {"points": [...], "table": [["0","1/2"],...]}.
qm::QMetric load_metric_file(const std::string& path);
qm::QMetric parse_metric_json(const ordered_json& j);
ordered_json metric_to_json(const qm::QMetric& d);

// Poset files: {"elements": [...], "le": [[true,...],...]}.
dom::FinPoset load_poset_file(const std::string& path);

// Presentation files:
// {"pairs": [{"U": [[0],[1,2]], "V": [[0,1]]}], "depth": 6}.
dom::Pi02Presentation load_presentation_file(const std::string& path);
dom::Pi02Presentation parse_presentation_json(const ordered_json& j);

// Pi2 pair files for the subspace derivation:
// {"pairs": [{"U": [point indices], "A": [point indices]}]}.
std::vector<qm::Pi2Pair> load_pi2_pairs_file(const std::string& path,
                                             const topo::FiniteSpace& sp);

// Prefix-function tables:
// {"alphabet": 4, "depth": 5, "rule": "delta"} or
// {"alphabet": 2, "depth": 3, "table": {"": [], "0": [1], ...}} with
// sequences as comma-free digit strings and values as lists of naturals.
repr::PrefixFun load_prefix_fun_file(const std::string& path);

// Transcript / verdict serialization (stable field order for golden tests).
ordered_json transcript_to_json(const topo::FiniteSpace& sp,
                                const game::Transcript& t);
ordered_json verdict_to_json(const topo::FiniteSpace& sp, const game::Verdict& v);

ordered_json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

std::vector<int> json_to_indices(const ordered_json& arr);

}  // namespace qtop::io
