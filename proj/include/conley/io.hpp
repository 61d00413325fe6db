#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "conley/morse.hpp"
#include "conley/mvf.hpp"
#include "conley/reduce.hpp"

namespace conley {

// JSON formats:
//   complex    {"simplices": [[v,...], ...]}         (maximal or any generating set)
//   field      {"vectors": [[simplex_id,...], ...]}
//   morse      {"morse_sets": [...], "poset_edges": [[p,q],...], "linear_ext": [...]}
//   connection {"kept": [simplex ids], "grading": [...], "dims": [...],
//               "entries": [[i,j],...] (local), "basis_chains": [[...],...]}
//   order      {"order": [simplex ids]}
// All writers are deterministic: fixed key order, 2-space indent, trailing
// newline.

nlohmann::json complex_to_json(const SimplicialComplex& K);
SimplicialComplex complex_from_json(const nlohmann::json& j);

nlohmann::json field_to_json(const MultivectorField& V);
MultivectorField field_from_json(const SimplicialComplex& K, const nlohmann::json& j);

nlohmann::json morse_to_json(const MorseDecomposition& md);

nlohmann::json connection_to_json(const ConnectionMatrix& cm);
ConnectionMatrix connection_from_json(const nlohmann::json& j);

// A full-complex order (one simplex id per position); validated against the
// decomposition: contiguous blocks following a linear extension of the
// poset, non-decreasing dimensions inside blocks.
FilteredOrder order_from_json(const SimplicialComplex& K, const MorseDecomposition& md,
                              const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);
std::string slurp_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace conley
