#include "glueback/corner_complex.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace glueback {

std::string to_string(PanelKind k) {
    return k == PanelKind::Principal ? "principal" : "reflexive";
}

std::string ValidationReport::to_string() const {
    std::ostringstream out;
    for (const auto& v : violations)
        out << "violation " << v.condition << ": " << v.detail << "\n";
    for (const auto& w : warnings) out << "warning: " << w << "\n";
    return out.str();
}

std::vector<Simplex> simplex_facets(const Simplex& s) {
    std::vector<Simplex> out;
    if (s.size() <= 1) return out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex f;
        f.reserve(s.size() - 1);
        for (std::size_t j = 0; j < s.size(); ++j)
            if (j != i) f.push_back(s[j]);
        out.push_back(std::move(f));
    }
    return out;
}

namespace {

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out.push_back(sep);
        out += parts[i];
    }
    return out;
}

} // namespace

CornerComplex::CornerComplex(std::string name, int dim,
                             std::vector<std::string> vertex_labels,
                             const std::vector<std::vector<std::string>>& top_cells,
                             const std::vector<PanelSpec>& panels)
    : name_(std::move(name)), dim_(dim) {
    if (dim_ < 0) throw ValidationError("complex dimension must be nonnegative");

    labels_ = std::move(vertex_labels);
    std::sort(labels_.begin(), labels_.end());
    if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end())
        throw ValidationError("duplicate vertex label in complex '" + name_ + "'");
    for (const auto& lab : labels_)
        if (lab.empty() || lab.find_first_of(" ,{}") != std::string::npos)
            throw ValidationError("vertex label '" + lab +
                                  "' is empty or contains a reserved character");

    auto to_simplex = [&](const std::vector<std::string>& cell, const char* what) {
        Simplex s;
        s.reserve(cell.size());
        for (const auto& lab : cell) s.push_back(vertex_index_or_throw(lab, what));
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw ValidationError(std::string(what) + " has a repeated vertex in complex '" +
                                  name_ + "'");
        return s;
    };

    std::vector<Simplex> tops;
    tops.reserve(top_cells.size());
    for (const auto& cell : top_cells) {
        Simplex s = to_simplex(cell, "top cell");
        if (static_cast<int>(s.size()) != dim_ + 1)
            throw ValidationError("top cell of size " + std::to_string(s.size()) + " in a " +
                                  std::to_string(dim_) + "-dimensional complex '" + name_ +
                                  "'");
        tops.push_back(std::move(s));
    }
    std::sort(tops.begin(), tops.end());
    if (std::adjacent_find(tops.begin(), tops.end()) != tops.end())
        throw ValidationError("duplicate top cell in complex '" + name_ + "'");

    cells_.assign(static_cast<std::size_t>(dim_) + 1, {});
    cells_[static_cast<std::size_t>(dim_)] = std::move(tops);
    build_closure();

    std::set<std::string> seen_ids;
    panels_.reserve(panels.size());
    for (const auto& spec : panels) {
        if (spec.id.empty()) throw ValidationError("panel with empty id in '" + name_ + "'");
        if (!seen_ids.insert(spec.id).second)
            throw ValidationError("duplicate panel id '" + spec.id + "' in '" + name_ + "'");
        if (dim_ == 0)
            throw ValidationError("a 0-dimensional complex cannot carry panels");
        Panel p;
        p.id = spec.id;
        p.kind = spec.kind;
        std::set<Vertex> pverts;
        for (const auto& cell : spec.cells) {
            Simplex s = to_simplex(cell, "panel cell");
            if (static_cast<int>(s.size()) != dim_)
                throw ValidationError("panel '" + spec.id + "' cell of wrong dimension in '" +
                                      name_ + "'");
            if (!has_cell(s))
                throw ValidationError("panel '" + spec.id +
                                      "' names a simplex not in complex '" + name_ + "'");
            pverts.insert(s.begin(), s.end());
            p.facets.push_back(std::move(s));
        }
        std::sort(p.facets.begin(), p.facets.end());
        p.facets.erase(std::unique(p.facets.begin(), p.facets.end()), p.facets.end());

        if (spec.kind == PanelKind::Reflexive) {
            for (const auto& [k, v] : spec.involution)
                if (k != v)
                    throw ValidationError("reflexive panel '" + spec.id +
                                          "' must carry the identity involution");
            for (Vertex v : pverts) p.involution[v] = v;
        } else {
            std::set<Vertex> dom, img;
            for (const auto& [k, v] : spec.involution) {
                const Vertex a = vertex_index_or_throw(k, "involution");
                const Vertex b = vertex_index_or_throw(v, "involution");
                p.involution[a] = b;
                dom.insert(a);
                img.insert(b);
            }
            if (dom != pverts || img != pverts)
                throw ValidationError("involution of panel '" + spec.id +
                                      "' is not a bijection of the panel's vertex set in '" +
                                      name_ + "'");
        }
        panels_.push_back(std::move(p));
    }
    index_panels();
}

Vertex CornerComplex::vertex_index(const std::string& lab) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), lab);
    if (it == labels_.end() || *it != lab)
        throw ValidationError("unknown vertex label '" + lab + "' in '" + name_ + "'");
    return static_cast<Vertex>(it - labels_.begin());
}

Vertex CornerComplex::vertex_index_or_throw(const std::string& lab, const char* what) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), lab);
    if (it == labels_.end() || *it != lab)
        throw ValidationError(std::string(what) + " uses unknown vertex '" + lab +
                              "' in complex '" + name_ + "'");
    return static_cast<Vertex>(it - labels_.begin());
}

void CornerComplex::build_closure() {
    for (int d = dim_; d >= 1; --d) {
        std::set<Simplex> lower;
        for (const auto& s : cells_[static_cast<std::size_t>(d)])
            for (auto& f : simplex_facets(s)) lower.insert(std::move(f));
        cells_[static_cast<std::size_t>(d) - 1].assign(lower.begin(), lower.end());
    }
    cell_index_.assign(static_cast<std::size_t>(dim_) + 1, {});
    for (int d = 0; d <= dim_; ++d)
        for (std::size_t i = 0; i < cells_[static_cast<std::size_t>(d)].size(); ++i)
            cell_index_[static_cast<std::size_t>(d)][cells_[static_cast<std::size_t>(d)][i]] =
                static_cast<int>(i);

    facet_top_count_.clear();
    boundary_facets_.clear();
    if (dim_ >= 1) {
        facet_top_count_.assign(cells_[static_cast<std::size_t>(dim_) - 1].size(), 0);
        for (const auto& s : cells_[static_cast<std::size_t>(dim_)])
            for (const auto& f : simplex_facets(s))
                ++facet_top_count_[static_cast<std::size_t>(cell_index(f))];
        for (std::size_t i = 0; i < facet_top_count_.size(); ++i)
            if (facet_top_count_[i] == 1) boundary_facets_.push_back(static_cast<int>(i));
    }
}

void CornerComplex::index_panels() {
    panel_membership_.assign(static_cast<std::size_t>(dim_) + 1, {});
    for (int d = 0; d <= dim_; ++d)
        panel_membership_[static_cast<std::size_t>(d)].assign(
            cells_[static_cast<std::size_t>(d)].size(), {});
    for (std::size_t pi = 0; pi < panels_.size(); ++pi) {
        std::vector<std::set<Simplex>> closure(static_cast<std::size_t>(dim_));
        for (const auto& f : panels_[pi].facets)
            closure[static_cast<std::size_t>(dim_) - 1].insert(f);
        for (int d = dim_ - 1; d >= 1; --d)
            for (const auto& s : closure[static_cast<std::size_t>(d)])
                for (auto& f : simplex_facets(s))
                    closure[static_cast<std::size_t>(d) - 1].insert(std::move(f));
        for (int d = 0; d < dim_; ++d)
            for (const auto& s : closure[static_cast<std::size_t>(d)])
                panel_membership_[static_cast<std::size_t>(d)]
                                 [static_cast<std::size_t>(cell_index(s))]
                                     .push_back(static_cast<int>(pi));
    }
}

std::string CornerComplex::simplex_label(const Simplex& s) const {
    std::vector<std::string> parts;
    parts.reserve(s.size());
    for (Vertex v : s) parts.push_back(label(v));
    return "{" + join(parts, ',') + "}";
}

const std::vector<Simplex>& CornerComplex::cells(int d) const {
    static const std::vector<Simplex> empty;
    if (d < 0 || d > dim_) return empty;
    return cells_[static_cast<std::size_t>(d)];
}

long long CornerComplex::total_cells() const {
    long long n = 0;
    for (int d = 0; d <= dim_; ++d) n += cell_count(d);
    return n;
}

int CornerComplex::euler() const {
    int chi = 0;
    for (int d = 0; d <= dim_; ++d) chi += (d % 2 == 0 ? 1 : -1) * cell_count(d);
    return chi;
}

int CornerComplex::cell_index(const Simplex& s) const {
    const int d = static_cast<int>(s.size()) - 1;
    if (d >= 0 && d <= dim_) {
        auto it = cell_index_[static_cast<std::size_t>(d)].find(s);
        if (it != cell_index_[static_cast<std::size_t>(d)].end()) return it->second;
    }
    throw ValidationError("simplex " + simplex_label(s) + " is not in complex '" + name_ + "'");
}

bool CornerComplex::has_cell(const Simplex& s) const {
    const int d = static_cast<int>(s.size()) - 1;
    if (d < 0 || d > dim_) return false;
    return cell_index_[static_cast<std::size_t>(d)].count(s) > 0;
}

const Panel& CornerComplex::panel(const std::string& id) const {
    return panels_[static_cast<std::size_t>(panel_index(id))];
}

int CornerComplex::panel_index(const std::string& id) const {
    for (std::size_t i = 0; i < panels_.size(); ++i)
        if (panels_[i].id == id) return static_cast<int>(i);
    throw ValidationError("unknown panel id '" + id + "' in complex '" + name_ + "'");
}

bool CornerComplex::has_panel(const std::string& id) const {
    for (const auto& p : panels_)
        if (p.id == id) return true;
    return false;
}

std::vector<std::string> CornerComplex::panel_ids(std::optional<PanelKind> kind) const {
    std::vector<std::string> out;
    for (const auto& p : panels_)
        if (!kind || p.kind == *kind) out.push_back(p.id);
    std::sort(out.begin(), out.end());
    return out;
}

const std::vector<int>& CornerComplex::panels_containing(int d, int cell_idx) const {
    static const std::vector<int> empty;
    if (d < 0 || d >= dim_) return empty;
    return panel_membership_[static_cast<std::size_t>(d)][static_cast<std::size_t>(cell_idx)];
}

bool CornerComplex::panel_contains(int panel_idx, int d, int cell_idx) const {
    const auto& v = panels_containing(d, cell_idx);
    return std::find(v.begin(), v.end(), panel_idx) != v.end();
}

Simplex CornerComplex::involution_image(int panel_idx, const Simplex& s) const {
    const auto& inv = panels_[static_cast<std::size_t>(panel_idx)].involution;
    Simplex out;
    out.reserve(s.size());
    for (Vertex v : s) {
        auto it = inv.find(v);
        if (it == inv.end())
            throw ValidationError("vertex '" + label(v) + "' is outside panel '" +
                                  panels_[static_cast<std::size_t>(panel_idx)].id + "'");
        out.push_back(it->second);
    }
    std::sort(out.begin(), out.end());
    return out;
}

ValidationReport CornerComplex::validate() const {
    ValidationReport rep;
    auto add = [&](const std::string& cond, const std::string& detail) {
        rep.violations.push_back({cond, detail});
    };

    if (dim_ >= 1) {
        for (std::size_t v = 0; v < labels_.size(); ++v)
            if (!has_cell(Simplex{static_cast<Vertex>(v)}))
                add("pure", "vertex '" + labels_[v] + "' lies in no top cell");

        const auto& facets = cells_[static_cast<std::size_t>(dim_) - 1];
        for (std::size_t i = 0; i < facets.size(); ++i)
            if (facet_top_count_[i] > 2)
                add("facet-multiplicity",
                    "simplex " + simplex_label(facets[i]) + " lies in " +
                        std::to_string(facet_top_count_[i]) + " top cells");

        // Condition (a): boundary facet-simplices partition into panels.
        std::vector<int> owner_count(facets.size(), 0);
        for (const auto& p : panels_)
            for (const auto& f : p.facets)
                ++owner_count[static_cast<std::size_t>(cell_index(f))];
        for (std::size_t i = 0; i < facets.size(); ++i) {
            const bool boundary = facet_top_count_[i] == 1;
            if (boundary && owner_count[i] == 0)
                add("(a) facet coverage",
                    "boundary simplex " + simplex_label(facets[i]) + " belongs to no panel");
            if (boundary && owner_count[i] > 1)
                add("(a) unique panel per facet",
                    "boundary simplex " + simplex_label(facets[i]) + " belongs to " +
                        std::to_string(owner_count[i]) + " panels");
            if (!boundary && owner_count[i] > 0)
                add("(a) facet coverage", "interior simplex " + simplex_label(facets[i]) +
                                              " is assigned to a panel");
        }
    }

    // Condition (b): involutions square to the identity and are simplicial.
    for (std::size_t pi = 0; pi < panels_.size(); ++pi) {
        const auto& p = panels_[pi];
        for (const auto& [k, v] : p.involution) {
            auto it = p.involution.find(v);
            if (it == p.involution.end() || it->second != k)
                add("(b) involution squares to identity",
                    "panel '" + p.id + "': vertex '" + label(k) + "'");
        }
        bool fixes_a_cell = false;
        std::set<Simplex> facet_set(p.facets.begin(), p.facets.end());
        for (const auto& f : p.facets) {
            Simplex img = involution_image(static_cast<int>(pi), f);
            if (!facet_set.count(img))
                add("(b) involution is simplicial",
                    "panel '" + p.id + "': image of " + simplex_label(f) +
                        " is not a panel cell");
            if (img == f) fixes_a_cell = true;
        }
        if (p.kind == PanelKind::Principal) {
            for (const auto& [k, v] : p.involution)
                if (k == v) fixes_a_cell = true;
            if (fixes_a_cell)
                rep.warnings.push_back("principal panel '" + p.id +
                                       "' has a non-free involution (fixed cell)");
        }
    }

    // Condition (c): stability and commutation on pairwise intersections.
    for (std::size_t pi = 0; pi < panels_.size(); ++pi) {
        for (std::size_t pj = 0; pj < panels_.size(); ++pj) {
            if (pi == pj) continue;
            for (int d = 0; d < dim_; ++d) {
                const auto& dcells = cells(d);
                for (std::size_t ci = 0; ci < dcells.size(); ++ci) {
                    if (!panel_contains(static_cast<int>(pi), d, static_cast<int>(ci)) ||
                        !panel_contains(static_cast<int>(pj), d, static_cast<int>(ci)))
                        continue;
                    const Simplex& s = dcells[ci];
                    Simplex img = involution_image(static_cast<int>(pi), s);
                    const int img_idx = cell_index(img);
                    if (!panel_contains(static_cast<int>(pi), d, img_idx) ||
                        !panel_contains(static_cast<int>(pj), d, img_idx))
                        add("(c) intersection stability",
                            "tau[" + panels_[pi].id + "] moves " + simplex_label(s) +
                                " outside the intersection with '" + panels_[pj].id + "'");
                    if (d == 0) {
                        const Vertex v = s[0];
                        const auto& inv_i = panels_[pi].involution;
                        const auto& inv_j = panels_[pj].involution;
                        auto jt = inv_j.find(v);
                        if (jt == inv_j.end()) continue;
                        auto i_of_j = inv_i.find(jt->second);
                        auto it = inv_i.find(v);
                        if (it == inv_i.end() || i_of_j == inv_i.end()) continue;
                        auto j_of_i = inv_j.find(it->second);
                        if (j_of_i == inv_j.end() || i_of_j->second != j_of_i->second)
                            add("(c) commutation",
                                "tau[" + panels_[pi].id + "] and tau[" + panels_[pj].id +
                                    "] do not commute at vertex '" + label(v) + "'");
                    }
                }
            }
        }
    }
    return rep;
}

void CornerComplex::require_valid() const {
    ValidationReport rep = validate();
    if (!rep.valid())
        throw ValidationError("complex '" + name_ + "' is invalid:\n" + rep.to_string());
}

std::set<Simplex> CornerComplex::duplicate_orbit(const Simplex& s) const {
    const int d = static_cast<int>(s.size()) - 1;
    cell_index(s); // throws if absent
    std::set<Simplex> seen{s};
    std::deque<Simplex> queue{s};
    while (!queue.empty()) {
        Simplex cur = std::move(queue.front());
        queue.pop_front();
        const int idx = cell_index(cur);
        for (int pi : panels_containing(d, idx)) {
            Simplex img = involution_image(pi, cur);
            if (seen.insert(img).second) queue.push_back(img);
        }
    }
    return seen;
}

std::pair<bool, std::optional<Simplex>> CornerComplex::is_perfect() const {
    require_valid();
    for (int d = 0; d < dim_; ++d) {
        const auto& dcells = cells(d);
        for (std::size_t ci = 0; ci < dcells.size(); ++ci) {
            const auto& owners = panels_containing(d, static_cast<int>(ci));
            if (owners.empty()) continue;
            int principal = 0;
            for (int pi : owners)
                if (panels_[static_cast<std::size_t>(pi)].kind == PanelKind::Principal)
                    ++principal;
            const std::size_t expected = std::size_t(1) << principal;
            if (duplicate_orbit(dcells[ci]).size() != expected)
                return {false, dcells[ci]};
        }
    }
    return {true, std::nullopt};
}

CornerComplex CornerComplex::subpanel_complex(const std::set<std::string>& ids) const {
    require_valid();
    if (ids.empty()) return *this;
    std::vector<int> sel;
    for (const auto& id : ids) {
        const Panel& p = panel(id);
        if (p.kind != PanelKind::Principal)
            throw ValidationError("subpanel intersection requires principal panels; '" + id +
                                  "' is reflexive");
        sel.push_back(panel_index(id));
    }
    const int s = static_cast<int>(sel.size());
    const int new_dim = dim_ - s;
    if (new_dim < 0) throw ValidationError("empty subpanel intersection");

    auto in_all = [&](int d, int ci) {
        for (int pi : sel)
            if (!panel_contains(pi, d, ci)) return false;
        return true;
    };

    std::vector<std::vector<Simplex>> members(static_cast<std::size_t>(dim_) + 1);
    for (int d = 0; d < dim_; ++d) {
        const auto& dcells = cells(d);
        for (std::size_t ci = 0; ci < dcells.size(); ++ci)
            if (in_all(d, static_cast<int>(ci))) {
                if (d > new_dim)
                    throw ValidationError("subpanel intersection contains a " +
                                          std::to_string(d) + "-simplex but should be " +
                                          std::to_string(new_dim) +
                                          "-dimensional: structure is not nice");
                members[static_cast<std::size_t>(d)].push_back(dcells[ci]);
            }
    }
    if (members[static_cast<std::size_t>(new_dim)].empty())
        throw ValidationError("empty subpanel intersection");

    std::vector<std::string> new_labels;
    for (const auto& v : members[0]) new_labels.push_back(label(v[0]));

    auto relabel = [&](const Simplex& m) {
        std::vector<std::string> cell;
        for (Vertex v : m) cell.push_back(label(v));
        return cell;
    };

    std::vector<std::vector<std::string>> new_tops;
    for (const auto& t : members[static_cast<std::size_t>(new_dim)])
        new_tops.push_back(relabel(t));

    std::vector<PanelSpec> new_panels;
    if (new_dim >= 1) {
        std::set<std::string> member_labels(new_labels.begin(), new_labels.end());
        for (std::size_t pj = 0; pj < panels_.size(); ++pj) {
            if (std::find(sel.begin(), sel.end(), static_cast<int>(pj)) != sel.end()) continue;
            bool touches = false;
            for (int d = 0; d <= dim_ - 1 && !touches; ++d)
                for (const auto& m : members[static_cast<std::size_t>(d)])
                    if (panel_contains(static_cast<int>(pj), d, cell_index(m))) {
                        touches = true;
                        break;
                    }
            if (!touches) continue;
            PanelSpec np;
            np.id = panels_[pj].id;
            np.kind = panels_[pj].kind;
            for (const auto& m : members[static_cast<std::size_t>(new_dim) - 1])
                if (panel_contains(static_cast<int>(pj), new_dim - 1, cell_index(m)))
                    np.cells.push_back(relabel(m));
            if (np.cells.empty())
                throw ValidationError("panel '" + np.id +
                                      "' meets the subpanel only in low dimension: structure "
                                      "is not nice");
            if (np.kind == PanelKind::Principal) {
                std::set<std::string> pv;
                for (const auto& c : np.cells) pv.insert(c.begin(), c.end());
                for (const auto& lab : pv) {
                    const Vertex img = panels_[pj].involution.at(vertex_index(lab));
                    np.involution[lab] = label(img);
                }
            }
            new_panels.push_back(std::move(np));
        }
    }
    std::vector<std::string> id_list(ids.begin(), ids.end());
    return CornerComplex(name_ + "/sub(" + join(id_list, ',') + ")", new_dim, new_labels,
                         new_tops, new_panels);
}

CornerComplex CornerComplex::barycentric_subdivide() const {
    auto chain_vertex = [&](const Simplex& s) {
        std::vector<std::string> parts;
        for (Vertex v : s) parts.push_back(label(v));
        return join(parts, '|');
    };

    std::vector<std::string> new_labels;
    for (int d = 0; d <= dim_; ++d)
        for (const auto& s : cells(d)) new_labels.push_back(chain_vertex(s));

    // A top simplex of the subdivision is the chain of sorted prefixes of a
    // vertex ordering of a top cell.
    auto chains_of = [&](const Simplex& cell) {
        std::vector<std::vector<std::string>> out;
        Simplex perm = cell;
        std::sort(perm.begin(), perm.end());
        do {
            std::vector<std::string> chain;
            Simplex prefix;
            for (Vertex v : perm) {
                prefix.push_back(v);
                Simplex sp = prefix;
                std::sort(sp.begin(), sp.end());
                chain.push_back(chain_vertex(sp));
            }
            out.push_back(std::move(chain));
        } while (std::next_permutation(perm.begin(), perm.end()));
        return out;
    };

    std::vector<std::vector<std::string>> new_tops;
    for (const auto& top : cells(dim_))
        for (auto& chain : chains_of(top)) new_tops.push_back(std::move(chain));

    std::vector<PanelSpec> new_panels;
    for (std::size_t pi = 0; pi < panels_.size(); ++pi) {
        const Panel& p = panels_[pi];
        PanelSpec np;
        np.id = p.id;
        np.kind = p.kind;
        for (const auto& f : p.facets)
            for (auto& chain : chains_of(f)) np.cells.push_back(std::move(chain));
        if (p.kind == PanelKind::Principal) {
            for (int d = 0; d < dim_; ++d)
                for (std::size_t ci = 0; ci < cells(d).size(); ++ci)
                    if (panel_contains(static_cast<int>(pi), d, static_cast<int>(ci))) {
                        const Simplex& s = cells(d)[ci];
                        np.involution[chain_vertex(s)] =
                            chain_vertex(involution_image(static_cast<int>(pi), s));
                    }
        }
        new_panels.push_back(std::move(np));
    }

    return CornerComplex(name_ + "'", dim_, new_labels, new_tops, new_panels);
}

bool CornerComplex::same_structure(const CornerComplex& o) const {
    if (dim_ != o.dim_ || labels_ != o.labels_ || cells_ != o.cells_) return false;
    if (panels_.size() != o.panels_.size()) return false;
    for (std::size_t i = 0; i < panels_.size(); ++i) {
        const Panel &a = panels_[i], &b = o.panels_[i];
        if (a.id != b.id || a.kind != b.kind || a.facets != b.facets ||
            a.involution != b.involution)
            return false;
    }
    return true;
}

CornerComplex simple_polytope(
    const std::string& name, int dim, const std::vector<std::string>& polytope_vertices,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& facet_vertices) {
    if (dim < 1 || dim > 3)
        throw ValidationError("simple_polytope supports dimensions 1 to 3");
    for (const auto& v : polytope_vertices)
        if (v.find_first_of(".|,{} ") != std::string::npos)
            throw ValidationError("polytope vertex label '" + v +
                                  "' contains a reserved character");

    // Simplicity: each vertex lies in exactly `dim` facets.
    std::map<std::string, int> facet_count;
    for (const auto& v : polytope_vertices) facet_count[v] = 0;
    for (const auto& [fid, verts] : facet_vertices)
        for (const auto& v : verts) {
            auto it = facet_count.find(v);
            if (it == facet_count.end())
                throw ValidationError("facet '" + fid + "' uses unknown polytope vertex '" +
                                      v + "'");
            ++it->second;
        }
    for (const auto& [v, c] : facet_count)
        if (c != dim)
            throw ValidationError("polytope is not simple: vertex '" + v + "' lies in " +
                                  std::to_string(c) + " facets, expected " +
                                  std::to_string(dim));

    // Proper faces: nonempty intersections of facet subsets, ordered by
    // strict inclusion of their vertex sets.
    using Face = std::set<std::string>;
    std::set<Face> faces;
    std::vector<Face> facet_sets;
    for (const auto& [fid, verts] : facet_vertices) {
        Face f(verts.begin(), verts.end());
        if (f.empty()) throw ValidationError("facet '" + fid + "' has no vertices");
        facet_sets.push_back(f);
        faces.insert(f);
    }
    // Close under pairwise intersection (enough for a finite lattice).
    bool grew = true;
    while (grew) {
        grew = false;
        std::set<Face> next = faces;
        for (const auto& a : faces)
            for (const auto& b : facet_sets) {
                Face c;
                std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                      std::inserter(c, c.begin()));
                if (!c.empty() && !next.count(c)) {
                    next.insert(c);
                    grew = true;
                }
            }
        faces = std::move(next);
    }

    auto face_label = [](const Face& f) {
        std::vector<std::string> parts(f.begin(), f.end());
        return join(parts, '.');
    };

    const std::string apex = "@center";
    std::vector<std::string> labels{apex};
    for (const auto& f : faces) labels.push_back(face_label(f));

    // Top cells: apex + maximal chains f_1 < ... < f_dim in the face poset.
    std::vector<std::vector<std::string>> tops;
    std::vector<Face> face_list(faces.begin(), faces.end());
    std::vector<std::vector<std::string>> max_chains;
    std::vector<Face> chain;
    auto extend = [&](auto&& self, const Face& cur) -> void {
        chain.push_back(cur);
        bool extended = false;
        for (const auto& nxt : face_list)
            if (cur != nxt &&
                std::includes(nxt.begin(), nxt.end(), cur.begin(), cur.end())) {
                // only extend by covers: no face strictly between cur and nxt
                bool cover = true;
                for (const auto& mid : face_list)
                    if (mid != cur && mid != nxt &&
                        std::includes(mid.begin(), mid.end(), cur.begin(), cur.end()) &&
                        std::includes(nxt.begin(), nxt.end(), mid.begin(), mid.end())) {
                        cover = false;
                        break;
                    }
                if (cover) {
                    extended = true;
                    self(self, nxt);
                }
            }
        if (!extended) {
            std::vector<std::string> labels_chain;
            for (const auto& f : chain) labels_chain.push_back(face_label(f));
            max_chains.push_back(std::move(labels_chain));
        }
        chain.pop_back();
    };
    for (const auto& f : face_list)
        if (f.size() == 1) extend(extend, f); // chains start at polytope vertices

    for (const auto& c : max_chains) {
        if (static_cast<int>(c.size()) != dim)
            throw ValidationError("face lattice of '" + name +
                                  "' has a maximal chain of length " +
                                  std::to_string(c.size()) + ", expected " +
                                  std::to_string(dim));
        std::vector<std::string> cell = c;
        cell.push_back(apex);
        tops.push_back(std::move(cell));
    }

    // One reflexive panel per polytope facet: the chains ending at it.
    std::vector<PanelSpec> panels;
    for (std::size_t i = 0; i < facet_vertices.size(); ++i) {
        PanelSpec p;
        p.id = facet_vertices[i].first;
        p.kind = PanelKind::Reflexive;
        const std::string flab = face_label(facet_sets[i]);
        for (const auto& c : max_chains)
            if (c.back() == flab) p.cells.push_back(c);
        if (p.cells.empty())
            throw ValidationError("facet '" + p.id + "' yields an empty panel");
        panels.push_back(std::move(p));
    }

    return CornerComplex(name, dim, labels, tops, panels);
}

} // namespace glueback
