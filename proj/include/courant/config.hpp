#pragma once

#include <optional>
#include <string>
#include <vector>

#include "courant/algebra.hpp"
#include "courant/catalog.hpp"

namespace courant {

/// Directory named by COURANT_FLOW_CATALOG, if set.
std::optional<std::string> user_catalog_dir();
/// *.json entries of the user catalog (stem names), sorted.
std::vector<std::string> user_catalog_entries();

/// {"dim": n, "structure_constants": [[i,j,k,value],...], "pairing": [row-major n*n]}.
/// The pairing may also be nested rows. Throws ConfigInvalid.
QuadraticLieAlgebra parse_algebra_config(const std::string& json_text, const std::string& name = "config");

/// {"dim": d, "H": preset or {"terms": [...]}, "domain": [[lo,hi],...], "g": ..., "b": ...}.
/// H presets: "zero", or {"preset": "su2_volume", "lambda": l} (d = 3).
/// A polynomial term {"indices": [i,j,k], "coeff": c, "powers": [p_0..p_{d-1}]}
/// adds c * prod x_l^p_l to H_ijk and its antisymmetric images.
/// g and b are constant matrices (default identity and zero). Throws ConfigInvalid.
Background parse_chart_config(const std::string& json_text, const std::string& name = "config");

/// Built-in name, then <catalog>/<key>.json, then key as a file path.
QuadraticLieAlgebra load_algebra(const std::string& key);
Background load_background(const std::string& key);

/// "identity", "zero", an inline JSON matrix, or a path to a JSON file holding one.
Mat load_matrix(const std::string& spec, int rows, int cols);

std::string read_text_file(const std::string& path);

}  // namespace courant
