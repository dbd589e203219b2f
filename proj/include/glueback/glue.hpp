#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "glueback/coloring.hpp"
#include "glueback/corner_complex.hpp"
#include "glueback/gf2.hpp"

namespace glueback {

/// An explicit crossing sequence of principal panels; the combinatorial
/// shadow of a closed curve transverse to the cut sections.
using EdgePath = std::vector<std::string>;

struct ComponentInfo {
    std::vector<int> cells_per_dim;
    int euler = 0;
};

struct IsotropyEntry {
    int dim = 0;
    int cell = 0;                     // glued cell index within its dimension
    std::string representative;      // "(simplex, g)" of the canonical member
    std::vector<GroupElement> basis; // basis of the isotropy subgroup
};

struct FreenessReport {
    bool free = true;
    std::vector<IsotropyEntry> fixed_cells; // cells with nontrivial isotropy
};

struct LocalStandardReport {
    bool locally_standard = true;
    std::vector<std::string> failures;
};

struct GlueOptions {
    int min_subdivision_level = 0; // force at least this many subdivisions
    bool require_connected_base = true;
    int jobs = 1;
};

/// The glue-back construction: the quotient of base x (Z2)^m by
/// (x, g) ~ (tau_i(x), g + color(P_i)), with the induced (Z2)^m-action.
/// The base is barycentrically subdivided (at most twice) until the quotient
/// is a genuine simplicial complex.
class GluedComplex {
  public:
    const CornerComplex& base() const { return *base_; }
    int subdivision_level() const { return level_; }
    int dim() const { return base_->dim(); }
    int group_rank() const { return m_; }
    std::uint64_t group_size() const { return std::uint64_t(1) << m_; }
    bool reflexive_glued() const { return reflexive_glued_; }

    /// Colors actually used for gluing, by panel index of base(); panels
    /// without a color (reflexive under a partial coloring) are not glued.
    const std::vector<std::optional<GroupElement>>& panel_colors() const {
        return panel_colors_;
    }

    int cell_count(int d) const;
    long long total_cells() const;
    int euler() const;

    /// Quotient map: class of the pair (base cell, g).
    int cell_class(int d, int base_cell_idx, const GroupElement& g) const;
    /// Canonical member of a class (minimal base cell index, then minimal g).
    std::pair<int, GroupElement> class_representative(int d, int cls) const;
    int class_size(int d, int cls) const;
    std::string class_label(int d, int cls) const;

    /// Sorted vertex classes spanning a cell; the simplicial structure.
    const std::vector<int>& cell_vertices(int d, int cls) const;
    /// Facet classes of a cell, in canonical order.
    std::vector<int> cell_facets(int d, int cls) const;

    /// The induced action: g . [(x, g0)] = [(x, g + g0)].
    int apply_action(const GroupElement& g, int d, int cls) const;

    int component_count() const { return static_cast<int>(components_.size()); }
    const std::vector<ComponentInfo>& components() const { return components_; }
    int component_of(int d, int cls) const;
    /// Pairwise-isomorphism evidence: stable-refinement certificates of the
    /// face poset agree across components (or per-dimension cell counts for
    /// complexes above the size threshold, flagged in the second member).
    std::pair<bool, std::string> components_pairwise_isomorphic() const;

    /// True iff no cell class is fixed by any nonzero group element.
    FreenessReport freeness() const;
    std::vector<GroupElement> isotropy_basis(int d, int cls) const;

    /// For every cell class, the isotropy subgroup must equal the span of
    /// the mu-colors of the reflexive panels containing its base simplex.
    LocalStandardReport locally_standard_isotropy() const;

    /// Whether the complex is closed (every (n-1)-cell in exactly two
    /// n-cells).
    bool closed() const;

    /// Rebuild as a plain complex (fresh vertex labels "v0", "v1", ...).
    CornerComplex to_corner_complex(const std::string& name) const;

    friend GluedComplex glue_impl(const CornerComplex&, int,
                                  const std::map<std::string, GroupElement>&, bool,
                                  const GlueOptions&);

  private:
    GluedComplex() = default;
    void build_classes();
    bool check_simplicial();
    void build_components();

    std::shared_ptr<const CornerComplex> base_;
    int level_ = 0;
    int m_ = 0;
    int jobs_ = 1;
    bool reflexive_glued_ = false;
    std::vector<std::optional<GroupElement>> panel_colors_;

    // Per dimension: pair id = base_cell * group_size + g.
    std::vector<std::vector<int>> class_of_pair_;              // dim -> pair -> class
    std::vector<std::vector<std::uint64_t>> class_rep_;        // dim -> class -> pair id
    std::vector<std::vector<int>> class_size_;                 // dim -> class -> members
    std::vector<std::vector<std::vector<int>>> cell_vertices_; // dim -> class -> vertices
    std::vector<std::map<std::vector<int>, int>> cells_by_vertices_;
    std::vector<std::vector<int>> component_of_;               // dim -> class -> component
    std::vector<ComponentInfo> components_;
    bool pinch_warning_ = false;
};

GluedComplex glue(const CornerComplex& c, const Coloring& col, const GlueOptions& opts = {});
GluedComplex glue(const CornerComplex& c, const CompositeColoring& col,
                  const GlueOptions& opts = {});

/// The restoring-map quotient: glue with the trivial coloring into (Z2)^0.
GluedComplex glue_trivial(const CornerComplex& c, const GlueOptions& opts = {});

/// 2^(m - rank(lambda)); requires an all-principal perfect complex.
std::uint64_t component_count_formula(const CornerComplex& c, const Coloring& col);

/// 2^(m - rank(lambda, mu)).
std::uint64_t component_count_formula(const CornerComplex& c, const CompositeColoring& col);

/// Monodromy of an explicit crossing sequence: the mod-2 sum of the colors
/// of the crossed principal panels.
GroupElement monodromy(const CornerComplex& c, const Coloring& col, const EdgePath& path);
GroupElement monodromy(const CornerComplex& c, const CompositeColoring& col,
                       const EdgePath& path);

/// Component count when the cut system is not dual to the curve basis:
/// intersection_numbers has one row per curve and one column per panel;
/// lambda_values[j] is the color of panel j. Returns
/// 2^(m - dim span{ sum_j a_ij lambda_j }).
std::uint64_t component_count_general(int m, const Gf2Matrix& intersection_numbers,
                                      const std::vector<GroupElement>& lambda_values);

struct SubpanelPreimage {
    int dim = 0;                       // dimension of the subpanel
    int component_count = 0;           // components of the preimage inside g
    int glued_subpanel_components = 0; // components of M(P_I, lambda^in)
    bool relation_holds = false;       // glued == 2^|I| * preimage
};

/// The preimage of a subpanel inside a glued complex, together with the
/// independently built M(P_I, lambda^in) and the 2^|I| component relation.
SubpanelPreimage preimage_of_subpanel(const GluedComplex& g,
                                      const std::set<std::string>& panel_ids);

/// Induced coloring on a subpanel complex: every surviving panel keeps the
/// color of the panel it came from.
Coloring induced_coloring(const CornerComplex& subpanel, const Coloring& col);

} // namespace glueback
