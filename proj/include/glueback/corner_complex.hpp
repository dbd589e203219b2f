#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "glueback/errors.hpp"

namespace glueback {

// Vertices are indices into CornerComplex::vertex_labels(); simplices are
// sorted index vectors. All iteration orders derive from the sorted label
// order, so every operation is deterministic.
using Vertex = int;
using Simplex = std::vector<Vertex>;

enum class PanelKind { Principal, Reflexive };

std::string to_string(PanelKind k);

/// Label-based description of a panel, as it appears in complex files.
struct PanelSpec {
    std::string id;
    PanelKind kind = PanelKind::Principal;
    std::vector<std::vector<std::string>> cells;   // (n-1)-simplices, by vertex label
    std::map<std::string, std::string> involution; // empty for reflexive panels
};

/// One panel of the boundary: facet-simplices (their downward closure is the
/// panel) plus a simplicial involution on the panel's vertices. Reflexive
/// panels carry the identity involution.
struct Panel {
    std::string id;
    PanelKind kind = PanelKind::Principal;
    std::vector<Simplex> facets;          // (n-1)-simplices, sorted
    std::map<Vertex, Vertex> involution;  // defined exactly on the panel's vertices
};

struct ValidationIssue {
    std::string condition; // which axiom failed, e.g. "(a) unique panel per facet"
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> violations;
    std::vector<std::string> warnings; // e.g. principal panel with a fixed cell

    bool valid() const { return violations.empty(); }
    std::string to_string() const;
};

/// Finite abstract simplicial complex modeling a nice manifold with corners:
/// the downward closure of its top cells, with a panel decomposition of the
/// boundary and per-panel involutions.
class CornerComplex {
  public:
    CornerComplex(std::string name, int dim, std::vector<std::string> vertex_labels,
                  const std::vector<std::vector<std::string>>& top_cells,
                  const std::vector<PanelSpec>& panels);

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }

    const std::vector<std::string>& vertex_labels() const { return labels_; }
    const std::string& label(Vertex v) const { return labels_[static_cast<std::size_t>(v)]; }
    Vertex vertex_index(const std::string& label) const;
    std::string simplex_label(const Simplex& s) const;

    /// All d-simplices, lexicographically sorted.
    const std::vector<Simplex>& cells(int d) const;
    int cell_count(int d) const { return static_cast<int>(cells(d).size()); }
    long long total_cells() const;
    int euler() const;

    /// Index of s among the d-simplices (d = |s|-1); throws if absent.
    int cell_index(const Simplex& s) const;
    bool has_cell(const Simplex& s) const;

    const std::vector<Panel>& panels() const { return panels_; }
    const Panel& panel(const std::string& id) const;
    int panel_index(const std::string& id) const;
    bool has_panel(const std::string& id) const;
    std::vector<std::string> panel_ids(std::optional<PanelKind> kind = std::nullopt) const;

    /// Panels whose closure contains the given simplex (indices into panels()).
    const std::vector<int>& panels_containing(int d, int cell_idx) const;
    bool panel_contains(int panel_idx, int d, int cell_idx) const;

    /// Image of a simplex under a panel's involution.
    Simplex involution_image(int panel_idx, const Simplex& s) const;

    /// Boundary (n-1)-simplices: contained in exactly one top cell.
    const std::vector<int>& boundary_facet_indices() const { return boundary_facets_; }

    ValidationReport validate() const;
    void require_valid() const; // throws ValidationError if validate() fails

    /// Orbit of s under the groupoid generated by panel involutions whose
    /// panel contains the current simplex. Always contains s.
    std::set<Simplex> duplicate_orbit(const Simplex& s) const;

    /// True iff every boundary simplex contained in exactly p principal
    /// panels has a duplicate orbit of size exactly 2^p. On failure, the
    /// witness is the first offending simplex in canonical order.
    std::pair<bool, std::optional<Simplex>> is_perfect() const;

    /// The subpanel P_I (intersection of the named principal panels) as an
    /// (n-|I|)-dimensional complex with the induced panel structure.
    CornerComplex subpanel_complex(const std::set<std::string>& panel_ids) const;

    /// Standard barycentric subdivision with panels and involutions
    /// transported along. New vertex labels join the old ones with '|'.
    CornerComplex barycentric_subdivide() const;

    /// Structural equality: same dim, labels, top cells and panel data.
    bool same_structure(const CornerComplex& o) const;

  private:
    void build_closure();
    void index_panels();
    Vertex vertex_index_or_throw(const std::string& label, const char* what) const;

    std::string name_;
    int dim_ = 0;
    std::vector<std::string> labels_;
    std::vector<Panel> panels_;
    std::vector<std::vector<Simplex>> cells_;                 // per dim
    std::vector<std::map<Simplex, int>> cell_index_;          // per dim
    std::vector<std::vector<std::vector<int>>> panel_membership_; // dim -> cell -> panels
    std::vector<int> boundary_facets_;
    std::vector<int> facet_top_count_; // per (n-1)-cell: number of containing top cells
};

/// All (|s|-1)-dimensional faces of s, in canonical order.
std::vector<Simplex> simplex_facets(const Simplex& s);

/// Cone over the barycentric subdivision of a simple polytope's boundary,
/// given as facet -> vertex-label incidence. Each polytope facet becomes one
/// reflexive panel. Dimension is limited to 3.
CornerComplex simple_polytope(const std::string& name, int dim,
                              const std::vector<std::string>& polytope_vertices,
                              const std::vector<std::pair<std::string, std::vector<std::string>>>&
                                  facet_vertices);

} // namespace glueback
