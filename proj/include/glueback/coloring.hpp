#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "glueback/corner_complex.hpp"
#include "glueback/gf2.hpp"

namespace glueback {

/// A (Z2)^m-coloring of the principal panels. When glued against a complex
/// that also has reflexive panels, those are left unglued and the result has
/// boundary.
struct Coloring {
    int group_rank = 0;
    std::map<std::string, GroupElement> assignment; // principal panel id -> color

    const GroupElement& color(const std::string& panel_id) const;

    /// Every principal panel of c colored, all values of length group_rank.
    void check_complete(const CornerComplex& c) const;
};

/// A composite coloring: lambda on principal panels plus mu on reflexive
/// panels, with mu linearly independent at every nonempty intersection of
/// reflexive panels.
struct CompositeColoring {
    int group_rank = 0;
    std::map<std::string, GroupElement> lambda; // principal panel id -> color
    std::map<std::string, GroupElement> mu;     // reflexive panel id -> color

    const GroupElement& color(const std::string& panel_id) const;

    void check_complete(const CornerComplex& c) const;

    /// Throws ValidationError if some nonempty intersection of reflexive
    /// panels carries dependent mu-values (the independence condition on
    /// characteristic functions).
    void check_linear_independence(const CornerComplex& c) const;
};

/// Values of a coloring listed in sorted-panel-id order.
std::vector<GroupElement> sorted_values(const std::map<std::string, GroupElement>& m);

/// rank(lambda): GF(2) dimension of the span of the assigned colors.
int coloring_rank(const Coloring& col);

/// rank(lambda, mu): dimension of the span of all assigned colors.
int coloring_rank(const CompositeColoring& col);

/// Parse the coloring file format: one "panel_id:bitstring" per line; blank
/// lines and lines starting with '#' are ignored. The group rank is the
/// common bitstring length. split_for() assigns ids to lambda or mu by the
/// panel kind in the given complex.
struct ParsedColoring {
    int group_rank = 0;
    std::map<std::string, GroupElement> values;

    /// Principal-only (partial) interpretation; rejects mu assignments.
    Coloring as_coloring(const CornerComplex& c) const;
    /// Composite interpretation; requires mu on every reflexive panel.
    CompositeColoring as_composite(const CornerComplex& c) const;
};

ParsedColoring parse_coloring(const std::string& text);

} // namespace glueback
