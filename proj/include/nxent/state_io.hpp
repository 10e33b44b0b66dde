#pragma once

// JSON documents for states and bin partitions.
//
// State kinds (complex numbers are [re, im] pairs):
//   {"kind": "fock", "n": 2, "N": 10}
//   {"kind": "coherent", "alpha": [1.0, 0.5], "N": 30}
//   {"kind": "superposition", "coeffs": [[0.6, 0], [0, 0.8]]}      renormalized
//   {"kind": "random", "seed": 7, "N": 15}
//   {"kind": "mixture", "components": [{"weight": 0.5, "state": {...}}, ...]}
//
// Partitions:
//   {"xi_edges": [...], "k_edges": [...]}
//   {"uniform": {"dxi": 0.5, "dk": 0.5, "extent": 8}}

#include <filesystem>

#include <json.hpp>

#include "nxent/probability.hpp"
#include "nxent/states.hpp"

namespace nxent {

/// Throws ParseError for malformed documents and unknown kinds; domain
/// violations (e.g. n > N) surface as DomainError.
MixedState parse_state(const nlohmann::json& doc);
MixedState load_state(const std::filesystem::path& path);

/// Pure states as "superposition", mixtures as "mixture".
nlohmann::json state_to_json(const MixedState& state);

BinPartition parse_partition(const nlohmann::json& doc);

/// Parses a whole file; ParseError on IO failure or invalid JSON.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace nxent
