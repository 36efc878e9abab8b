#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "stablam/dissections.hpp"
#include "stablam/fractal.hpp"
#include "stablam/gw_trees.hpp"
#include "stablam/laminations.hpp"
#include "stablam/stable_paths.hpp"

namespace stablam::io {

using Json = nlohmann::ordered_json;

Json to_json(const OrderedTree& t);
Json to_json(const Dissection& d);
Json to_json(const GridPath& p);
Json to_json(const Lamination& l);
Json to_json(const DimensionEstimate& e);

// Parsers throw BadInput on malformed documents.
OrderedTree tree_from_json(const Json& j);
Dissection dissection_from_json(const Json& j);
GridPath path_from_json(const Json& j);
Lamination lamination_from_json(const Json& j);
DimensionEstimate estimate_from_json(const Json& j);

/// Weight file {"mu": {"2": 0.5, ...}, "theta": 1.5 (optional)}.
WeightSpec weights_from_json(const Json& j);

/// Accepts a lamination document or a dissection document.
Lamination lamination_from_document(const Json& j);

std::string path_csv(const GridPath& p);
Json jump_sidecar(const GridPath& p);
std::string scales_csv(const DimensionEstimate& e);

/// Unit circle plus chords as straight segments, viewBox -1.05..1.05.
std::string render_svg(const Lamination& l);

std::string pgm(const Raster& r);

std::string dump(const Json& j);
Json parse(const std::string& text);

std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const std::string& content);

}  // namespace stablam::io
