#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "hyperfact/hypergraph.hpp"

namespace hyperfact {

struct DetachmentResult;

// Canonical hypergraph format:
//   {"vertices": [ids], "edges": [{"verts": [...], "color": j, "count": c}]}
// verts are sorted with repetition encoding hinge count (length 1..3); the
// edge list is sorted lexicographically by verts then color, so serializing
// a parsed file reproduces it byte for byte.
nlohmann::json hypergraph_to_json(const Hypergraph& g);
Hypergraph hypergraph_from_json(const nlohmann::json& j);

// Hypergraph format plus {"psi": {detached_id: amalgam_id}} and "seed".
nlohmann::json detachment_to_json(const DetachmentResult& result);
DetachmentResult detachment_from_json(const nlohmann::json& j);

std::string dump_canonical(const nlohmann::json& j);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

}  // namespace hyperfact
