#pragma once

#include <string>
#include <vector>

#include "glueback/corner_complex.hpp"

namespace glueback {

/// Parse the complex file format (a single JSON document with fields name,
/// dim, vertices, top_cells, panels). Unknown fields are rejected.
CornerComplex parse_complex(const std::string& text);
CornerComplex load_complex(const std::string& path);

/// Serialize in the same format (round-trips through parse_complex).
std::string serialize_complex(const CornerComplex& c);

/// A panel permutation induced by a simplicial automorphism; the vertex map
/// is the witness, the panel map is what acts on colorings.
struct PanelPermutation {
    std::map<std::string, std::string> vertex_map;
    std::map<std::string, std::string> panel_map;
};

/// Validate that the vertex map is a simplicial automorphism of c mapping
/// each panel onto its image panel (kind-preserving, intertwining the
/// involutions). Throws ValidationError otherwise.
void check_panel_permutation(const CornerComplex& c, const PanelPermutation& perm);

/// Parse a JSON list of {vertices: {..}, panels: {..}} generator objects.
std::vector<PanelPermutation> parse_aut_generators(const std::string& text);
std::vector<PanelPermutation> load_aut_generators(const std::string& path);

std::string read_file(const std::string& path);

/// FNV-1a digest of a byte string, for deterministic input fingerprints.
std::string fnv1a_digest(const std::string& bytes);

} // namespace glueback
