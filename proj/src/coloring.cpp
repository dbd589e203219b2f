#include "glueback/coloring.hpp"

#include <algorithm>
#include <sstream>

namespace glueback {

namespace {

const GroupElement& lookup(const std::map<std::string, GroupElement>& m,
                           const std::string& id, const char* what) {
    auto it = m.find(id);
    if (it == m.end())
        throw ValidationError(std::string("no ") + what + " color for panel '" + id + "'");
    return it->second;
}

void check_lengths(const std::map<std::string, GroupElement>& m, int rank) {
    for (const auto& [id, v] : m)
        if (v.length() != rank)
            throw DimensionMismatchError("color of panel '" + id + "' has rank " +
                                         std::to_string(v.length()) + ", expected " +
                                         std::to_string(rank));
}

} // namespace

const GroupElement& Coloring::color(const std::string& panel_id) const {
    return lookup(assignment, panel_id, "lambda");
}

void Coloring::check_complete(const CornerComplex& c) const {
    check_lengths(assignment, group_rank);
    for (const auto& id : c.panel_ids(PanelKind::Principal))
        if (!assignment.count(id))
            throw ValidationError("incomplete coloring: principal panel '" + id +
                                  "' has no color");
    for (const auto& [id, v] : assignment)
        if (!c.has_panel(id) || c.panel(id).kind != PanelKind::Principal)
            throw ValidationError("coloring assigns '" + id +
                                  "', which is not a principal panel of '" + c.name() + "'");
}

const GroupElement& CompositeColoring::color(const std::string& panel_id) const {
    auto it = lambda.find(panel_id);
    if (it != lambda.end()) return it->second;
    return lookup(mu, panel_id, "mu");
}

void CompositeColoring::check_complete(const CornerComplex& c) const {
    check_lengths(lambda, group_rank);
    check_lengths(mu, group_rank);
    for (const auto& id : c.panel_ids(PanelKind::Principal))
        if (!lambda.count(id))
            throw ValidationError("incomplete coloring: principal panel '" + id +
                                  "' has no lambda color");
    for (const auto& id : c.panel_ids(PanelKind::Reflexive))
        if (!mu.count(id))
            throw ValidationError("incomplete coloring: reflexive panel '" + id +
                                  "' has no mu color");
    for (const auto& [id, v] : lambda)
        if (!c.has_panel(id) || c.panel(id).kind != PanelKind::Principal)
            throw ValidationError("lambda assigns '" + id + "', not a principal panel");
    for (const auto& [id, v] : mu)
        if (!c.has_panel(id) || c.panel(id).kind != PanelKind::Reflexive)
            throw ValidationError("mu assigns '" + id + "', not a reflexive panel");
}

void CompositeColoring::check_linear_independence(const CornerComplex& c) const {
    // For every simplex, the reflexive panels containing it must carry
    // independent colors; it is enough to check each simplex's panel set.
    for (int d = 0; d < c.dim(); ++d) {
        const auto& dcells = c.cells(d);
        for (std::size_t ci = 0; ci < dcells.size(); ++ci) {
            std::vector<GroupElement> vals;
            std::vector<std::string> ids;
            for (int pi : c.panels_containing(d, static_cast<int>(ci))) {
                const Panel& p = c.panels()[static_cast<std::size_t>(pi)];
                if (p.kind != PanelKind::Reflexive) continue;
                vals.push_back(lookup(mu, p.id, "mu"));
                ids.push_back(p.id);
            }
            if (vals.size() <= 0) continue;
            if (rank(vals) != static_cast<int>(vals.size())) {
                std::ostringstream msg;
                msg << "linear independence fails at " << c.simplex_label(dcells[ci])
                    << ": mu values of";
                for (const auto& id : ids) msg << " '" << id << "'";
                msg << " are dependent";
                throw ValidationError(msg.str());
            }
        }
    }
}

std::vector<GroupElement> sorted_values(const std::map<std::string, GroupElement>& m) {
    std::vector<GroupElement> out;
    out.reserve(m.size());
    for (const auto& [id, v] : m) out.push_back(v);
    return out;
}

int coloring_rank(const Coloring& col) { return rank(sorted_values(col.assignment)); }

int coloring_rank(const CompositeColoring& col) {
    std::vector<GroupElement> all = sorted_values(col.lambda);
    for (const auto& v : sorted_values(col.mu)) all.push_back(v);
    return rank(all);
}

ParsedColoring parse_coloring(const std::string& text) {
    ParsedColoring out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int rank = -1;
    while (std::getline(in, line)) {
        ++lineno;
        // trim
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        if (line.empty() || line[0] == '#') continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 >= line.size())
            throw ParseError("coloring line " + std::to_string(lineno) +
                             ": expected 'panel_id:bitstring'");
        const std::string id = line.substr(0, colon);
        const std::string bits = line.substr(colon + 1);
        GroupElement v = GroupElement::from_string(bits);
        if (rank < 0) rank = v.length();
        if (v.length() != rank)
            throw ParseError("coloring line " + std::to_string(lineno) +
                             ": bitstring length " + std::to_string(v.length()) +
                             " differs from earlier length " + std::to_string(rank));
        if (!out.values.emplace(id, v).second)
            throw ParseError("coloring line " + std::to_string(lineno) + ": panel '" + id +
                             "' colored twice");
    }
    if (rank < 0) throw ParseError("coloring file assigns no panels");
    out.group_rank = rank;
    return out;
}

Coloring ParsedColoring::as_coloring(const CornerComplex& c) const {
    Coloring col;
    col.group_rank = group_rank;
    for (const auto& [id, v] : values) {
        if (!c.has_panel(id))
            throw ValidationError("coloring assigns unknown panel '" + id + "'");
        if (c.panel(id).kind == PanelKind::Reflexive)
            throw ValidationError("coloring assigns reflexive panel '" + id +
                                  "' but is used in principal-only (partial) mode");
        col.assignment.emplace(id, v);
    }
    col.check_complete(c);
    return col;
}

CompositeColoring ParsedColoring::as_composite(const CornerComplex& c) const {
    CompositeColoring col;
    col.group_rank = group_rank;
    for (const auto& [id, v] : values) {
        if (!c.has_panel(id))
            throw ValidationError("coloring assigns unknown panel '" + id + "'");
        if (c.panel(id).kind == PanelKind::Principal)
            col.lambda.emplace(id, v);
        else
            col.mu.emplace(id, v);
    }
    col.check_complete(c);
    col.check_linear_independence(c);
    return col;
}

} // namespace glueback
