#pragma once

#include <string>
#include <vector>

#include "glueback/coloring.hpp"
#include "glueback/complex_io.hpp"
#include "glueback/corner_complex.hpp"
#include "glueback/gf2.hpp"

namespace glueback {

// Enumeration guards.
inline constexpr int kMaxCharacteristicPanels = 12;
inline constexpr int kMaxCharacteristicRank = 5;
inline constexpr long long kMaxColoringSpace = 200000;
inline constexpr long long kMaxOrbitWork = 50'000'000;
inline constexpr int kMaxAutClosure = 10000;

/// Valid characteristic functions on an all-reflexive complex: every panel
/// set meeting at a common face must receive independent colors.
struct CharacteristicEnumeration {
    std::vector<std::string> panel_ids;              // sorted
    std::vector<std::vector<GroupElement>> valid;    // values in panel_ids order, lex sorted
    std::string diagnostic;                          // set when infeasible

    long long count() const { return static_cast<long long>(valid.size()); }
};

CharacteristicEnumeration enumerate_characteristic(const CornerComplex& x, int m);

/// The full composite-coloring space of a complex: free lambda over the
/// principal panels times the valid mu over the reflexive panels.
class ColoringSpace {
  public:
    static ColoringSpace build(const CornerComplex& c, int m);

    const CornerComplex& complex() const { return *complex_; }
    int group_rank() const { return m_; }
    /// Principal ids (sorted) followed by reflexive ids (sorted).
    const std::vector<std::string>& panel_ids() const { return panel_ids_; }
    int principal_count() const { return principal_count_; }

    long long size() const { return static_cast<long long>(colorings_.size()); }
    const std::vector<std::vector<GroupElement>>& colorings() const { return colorings_; }
    const std::string& diagnostic() const { return diagnostic_; }

    CompositeColoring composite(long long index) const;
    long long index_of(const std::vector<GroupElement>& values) const;

  private:
    std::shared_ptr<const CornerComplex> complex_;
    int m_ = 0;
    int principal_count_ = 0;
    std::vector<std::string> panel_ids_;
    std::vector<std::vector<GroupElement>> colorings_;
    std::string diagnostic_;
};

struct OrbitCount {
    long long direct_count = 0;   // union-find over the coloring space
    long long burnside_count = 0; // Burnside's lemma; must agree with direct
    std::vector<long long> representatives; // lex-least index of each orbit
};

/// Orbits of the coloring space under GL(m,2) acting on the color values.
OrbitCount orbits_under_gl(const ColoringSpace& space);

/// Orbits under panel relabeling (use_gl = false) or double cosets under
/// GL x Aut (use_gl = true). Generators are validated against the complex
/// and closed into a permutation group (guarded).
OrbitCount double_cosets(const ColoringSpace& space,
                         const std::vector<PanelPermutation>& aut_generators, bool use_gl);

} // namespace glueback
