#include "glueback/glue.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <thread>

namespace glueback {

namespace {

// Union-find with path halving; the resulting partition is independent of
// union order, and class ids are canonicalized afterwards by minimal member.
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent[static_cast<std::size_t>(b)] = a;
    }
};

constexpr long long kMaxGluePairs = 20'000'000;

} // namespace

GluedComplex glue_impl(const CornerComplex& input, int m,
                       const std::map<std::string, GroupElement>& colors_by_id,
                       bool glue_reflexive, const GlueOptions& opts);

int GluedComplex::cell_count(int d) const {
    if (d < 0 || d > dim()) return 0;
    return static_cast<int>(class_rep_[static_cast<std::size_t>(d)].size());
}

long long GluedComplex::total_cells() const {
    long long n = 0;
    for (int d = 0; d <= dim(); ++d) n += cell_count(d);
    return n;
}

int GluedComplex::euler() const {
    int chi = 0;
    for (int d = 0; d <= dim(); ++d) chi += (d % 2 == 0 ? 1 : -1) * cell_count(d);
    return chi;
}

int GluedComplex::cell_class(int d, int base_cell_idx, const GroupElement& g) const {
    if (g.length() != m_) throw DimensionMismatchError("group element of wrong rank");
    const std::uint64_t pid =
        static_cast<std::uint64_t>(base_cell_idx) * group_size() + g.bits();
    return class_of_pair_[static_cast<std::size_t>(d)][static_cast<std::size_t>(pid)];
}

std::pair<int, GroupElement> GluedComplex::class_representative(int d, int cls) const {
    const std::uint64_t pid = class_rep_[static_cast<std::size_t>(d)][static_cast<std::size_t>(cls)];
    return {static_cast<int>(pid / group_size()),
            GroupElement(pid % group_size(), m_)};
}

int GluedComplex::class_size(int d, int cls) const {
    return class_size_[static_cast<std::size_t>(d)][static_cast<std::size_t>(cls)];
}

std::string GluedComplex::class_label(int d, int cls) const {
    auto [cell, g] = class_representative(d, cls);
    return "(" + base_->simplex_label(base_->cells(d)[static_cast<std::size_t>(cell)]) + "," +
           (m_ == 0 ? "-" : g.to_string()) + ")";
}

const std::vector<int>& GluedComplex::cell_vertices(int d, int cls) const {
    return cell_vertices_[static_cast<std::size_t>(d)][static_cast<std::size_t>(cls)];
}

std::vector<int> GluedComplex::cell_facets(int d, int cls) const {
    std::vector<int> out;
    if (d == 0) return out;
    const auto& verts = cell_vertices(d, cls);
    out.reserve(verts.size());
    for (std::size_t omit = 0; omit < verts.size(); ++omit) {
        std::vector<int> sub;
        sub.reserve(verts.size() - 1);
        for (std::size_t j = 0; j < verts.size(); ++j)
            if (j != omit) sub.push_back(verts[j]);
        auto it = cells_by_vertices_[static_cast<std::size_t>(d) - 1].find(sub);
        if (it == cells_by_vertices_[static_cast<std::size_t>(d) - 1].end())
            throw InternalError("missing facet class in glued complex");
        out.push_back(it->second);
    }
    return out;
}

int GluedComplex::apply_action(const GroupElement& g, int d, int cls) const {
    auto [cell, h] = class_representative(d, cls);
    return cell_class(d, cell, h + g);
}

int GluedComplex::component_of(int d, int cls) const {
    return component_of_[static_cast<std::size_t>(d)][static_cast<std::size_t>(cls)];
}

void GluedComplex::build_classes() {
    const int n = dim();
    const std::uint64_t G = group_size();

    class_of_pair_.assign(static_cast<std::size_t>(n) + 1, {});
    class_rep_.assign(static_cast<std::size_t>(n) + 1, {});
    class_size_.assign(static_cast<std::size_t>(n) + 1, {});

    for (int d = 0; d <= n; ++d) {
        const std::uint64_t pairs = static_cast<std::uint64_t>(base_->cell_count(d)) * G;
        UnionFind uf(pairs);

        // Relations (s, g) ~ (tau_i(s), g + color_i) for every glued panel
        // containing s. The relation templates are (cell, image, color);
        // expanding them over the group and merging is order-independent.
        if (d < n) {
            struct Template { int cell, image; std::uint64_t color; };
            std::vector<Template> templates;
            const auto& dcells = base_->cells(d);
            for (std::size_t ci = 0; ci < dcells.size(); ++ci) {
                for (int pi : base_->panels_containing(d, static_cast<int>(ci))) {
                    const auto& color = panel_colors_[static_cast<std::size_t>(pi)];
                    if (!color) continue;
                    const int img =
                        base_->cell_index(base_->involution_image(pi, dcells[ci]));
                    templates.push_back({static_cast<int>(ci), img, color->bits()});
                }
            }
            if (jobs_ > 1 && templates.size() * G > 4096) {
                const int nthreads =
                    std::min<int>(jobs_, static_cast<int>(std::thread::hardware_concurrency()
                                                              ? std::thread::hardware_concurrency()
                                                              : 1));
                std::vector<std::vector<std::pair<int, int>>> buffers(
                    static_cast<std::size_t>(nthreads));
                std::vector<std::thread> workers;
                for (int t = 0; t < nthreads; ++t) {
                    workers.emplace_back([&, t]() {
                        auto& buf = buffers[static_cast<std::size_t>(t)];
                        for (std::size_t i = static_cast<std::size_t>(t);
                             i < templates.size(); i += static_cast<std::size_t>(nthreads)) {
                            const auto& tp = templates[i];
                            const std::uint64_t a0 = static_cast<std::uint64_t>(tp.cell) * G;
                            const std::uint64_t b0 = static_cast<std::uint64_t>(tp.image) * G;
                            for (std::uint64_t g = 0; g < G; ++g)
                                buf.emplace_back(static_cast<int>(a0 + g),
                                                 static_cast<int>(b0 + (g ^ tp.color)));
                        }
                    });
                }
                for (auto& w : workers) w.join();
                for (const auto& buf : buffers)
                    for (const auto& [a, b] : buf) uf.unite(a, b);
            } else {
                for (const auto& tp : templates) {
                    const std::uint64_t a0 = static_cast<std::uint64_t>(tp.cell) * G;
                    const std::uint64_t b0 = static_cast<std::uint64_t>(tp.image) * G;
                    for (std::uint64_t g = 0; g < G; ++g)
                        uf.unite(static_cast<int>(a0 + g),
                                 static_cast<int>(b0 + (g ^ tp.color)));
                }
            }
        }

        auto& cls_of = class_of_pair_[static_cast<std::size_t>(d)];
        auto& reps = class_rep_[static_cast<std::size_t>(d)];
        auto& sizes = class_size_[static_cast<std::size_t>(d)];
        cls_of.assign(pairs, -1);
        std::vector<int> root_to_class(pairs, -1);
        for (std::uint64_t pid = 0; pid < pairs; ++pid) {
            const int root = uf.find(static_cast<int>(pid));
            int cls = root_to_class[static_cast<std::size_t>(root)];
            if (cls < 0) {
                cls = static_cast<int>(reps.size());
                root_to_class[static_cast<std::size_t>(root)] = cls;
                reps.push_back(pid);
                sizes.push_back(0);
            }
            cls_of[static_cast<std::size_t>(pid)] = cls;
            ++sizes[static_cast<std::size_t>(cls)];
        }
    }
}

bool GluedComplex::check_simplicial() {
    const int n = dim();
    const std::uint64_t G = group_size();
    cell_vertices_.assign(static_cast<std::size_t>(n) + 1, {});
    cells_by_vertices_.assign(static_cast<std::size_t>(n) + 1, {});

    for (int cls = 0; cls < cell_count(0); ++cls) {
        cell_vertices_[0].push_back({cls});
        cells_by_vertices_[0][{cls}] = cls;
    }
    for (int d = 1; d <= n; ++d) {
        const auto& dcells = base_->cells(d);
        for (int cls = 0; cls < cell_count(d); ++cls) {
            const std::uint64_t pid =
                class_rep_[static_cast<std::size_t>(d)][static_cast<std::size_t>(cls)];
            const Simplex& s = dcells[static_cast<std::size_t>(pid / G)];
            const std::uint64_t g = pid % G;
            std::vector<int> verts;
            verts.reserve(s.size());
            for (Vertex v : s) {
                const std::uint64_t vpid =
                    static_cast<std::uint64_t>(
                        base_->cell_index(Simplex{v})) * G + g;
                verts.push_back(class_of_pair_[0][static_cast<std::size_t>(vpid)]);
            }
            std::sort(verts.begin(), verts.end());
            if (std::adjacent_find(verts.begin(), verts.end()) != verts.end())
                return false; // a cell with two identified vertices
            if (!cells_by_vertices_[static_cast<std::size_t>(d)].emplace(verts, cls).second)
                return false; // two distinct cells spanning the same vertices
            cell_vertices_[static_cast<std::size_t>(d)].push_back(std::move(verts));
        }
    }
    return true;
}

void GluedComplex::build_components() {
    const int n = dim();
    const std::uint64_t G = group_size();

    UnionFind uf(static_cast<std::size_t>(cell_count(n)));
    std::vector<int> seen; // per (n-1)-class: one top class seen at it
    if (n >= 1) {
        seen.assign(static_cast<std::size_t>(cell_count(n - 1)), -1);
        const auto& tops = base_->cells(n);
        // Precompute facet indices of base top cells.
        std::vector<std::vector<int>> facet_idx(tops.size());
        for (std::size_t ci = 0; ci < tops.size(); ++ci)
            for (const auto& f : simplex_facets(tops[ci]))
                facet_idx[ci].push_back(base_->cell_index(f));
        const std::uint64_t pairs = static_cast<std::uint64_t>(tops.size()) * G;
        for (std::uint64_t pid = 0; pid < pairs; ++pid) {
            const int tcls = class_of_pair_[static_cast<std::size_t>(n)]
                                           [static_cast<std::size_t>(pid)];
            const std::uint64_t ci = pid / G, g = pid % G;
            for (int fi : facet_idx[static_cast<std::size_t>(ci)]) {
                const int fcls =
                    class_of_pair_[static_cast<std::size_t>(n) - 1]
                                  [static_cast<std::size_t>(fi) * G + g];
                if (seen[static_cast<std::size_t>(fcls)] < 0)
                    seen[static_cast<std::size_t>(fcls)] = tcls;
                else
                    uf.unite(seen[static_cast<std::size_t>(fcls)], tcls);
            }
        }
    }

    // Canonical component ids in order of least top class.
    component_of_.assign(static_cast<std::size_t>(n) + 1, {});
    auto& top_comp = component_of_[static_cast<std::size_t>(n)];
    top_comp.assign(static_cast<std::size_t>(cell_count(n)), -1);
    std::vector<int> root_to_comp(static_cast<std::size_t>(cell_count(n)), -1);
    int next = 0;
    for (int cls = 0; cls < cell_count(n); ++cls) {
        const int root = uf.find(cls);
        if (root_to_comp[static_cast<std::size_t>(root)] < 0)
            root_to_comp[static_cast<std::size_t>(root)] = next++;
        top_comp[static_cast<std::size_t>(cls)] = root_to_comp[static_cast<std::size_t>(root)];
    }

    // Lower cells inherit the component of any coface.
    for (int d = n - 1; d >= 0; --d) {
        auto& comp = component_of_[static_cast<std::size_t>(d)];
        comp.assign(static_cast<std::size_t>(cell_count(d)), -1);
        const auto& upcells = base_->cells(d + 1);
        const std::uint64_t pairs = static_cast<std::uint64_t>(upcells.size()) * G;
        std::vector<std::vector<int>> facet_idx(upcells.size());
        for (std::size_t ci = 0; ci < upcells.size(); ++ci)
            for (const auto& f : simplex_facets(upcells[ci]))
                facet_idx[ci].push_back(base_->cell_index(f));
        for (std::uint64_t pid = 0; pid < pairs; ++pid) {
            const int ucomp = component_of_[static_cast<std::size_t>(d) + 1]
                                           [static_cast<std::size_t>(
                                               class_of_pair_[static_cast<std::size_t>(d) + 1]
                                                             [static_cast<std::size_t>(pid)])];
            const std::uint64_t ci = pid / G, g = pid % G;
            for (int fi : facet_idx[static_cast<std::size_t>(ci)]) {
                const int fcls = class_of_pair_[static_cast<std::size_t>(d)]
                                               [static_cast<std::size_t>(fi) * G + g];
                auto& slot = comp[static_cast<std::size_t>(fcls)];
                if (slot < 0)
                    slot = ucomp;
                else if (slot != ucomp)
                    pinch_warning_ = true;
            }
        }
        for (auto& c : comp)
            if (c < 0) pinch_warning_ = true; // cell not under any top cell
    }

    components_.assign(static_cast<std::size_t>(next), {});
    for (auto& c : components_) c.cells_per_dim.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int d = 0; d <= n; ++d)
        for (int cls = 0; cls < cell_count(d); ++cls) {
            const int comp = component_of_[static_cast<std::size_t>(d)]
                                          [static_cast<std::size_t>(cls)];
            if (comp >= 0)
                ++components_[static_cast<std::size_t>(comp)]
                      .cells_per_dim[static_cast<std::size_t>(d)];
        }
    for (auto& c : components_) {
        c.euler = 0;
        for (int d = 0; d <= n; ++d)
            c.euler += (d % 2 == 0 ? 1 : -1) * c.cells_per_dim[static_cast<std::size_t>(d)];
    }
}

std::pair<bool, std::string> GluedComplex::components_pairwise_isomorphic() const {
    if (components_.size() <= 1) return {true, "single component"};
    if (total_cells() > 100000) {
        for (std::size_t i = 1; i < components_.size(); ++i)
            if (components_[i].cells_per_dim != components_[0].cells_per_dim)
                return {false, "cell counts per dimension differ (size-only check)"};
        return {true, "cell counts per dimension agree (size-only check above threshold)"};
    }

    // Stable color refinement on the face poset; isomorphic components end
    // with identical color multisets.
    const int n = dim();
    std::vector<std::vector<int>> color(static_cast<std::size_t>(n) + 1);
    for (int d = 0; d <= n; ++d)
        color[static_cast<std::size_t>(d)].assign(static_cast<std::size_t>(cell_count(d)), d);

    // Coface lists.
    std::vector<std::vector<std::vector<int>>> cofaces(static_cast<std::size_t>(n) + 1);
    for (int d = 0; d <= n; ++d)
        cofaces[static_cast<std::size_t>(d)].assign(static_cast<std::size_t>(cell_count(d)),
                                                    {});
    for (int d = 1; d <= n; ++d)
        for (int cls = 0; cls < cell_count(d); ++cls)
            for (int f : cell_facets(d, cls))
                cofaces[static_cast<std::size_t>(d) - 1][static_cast<std::size_t>(f)]
                    .push_back(cls);

    long long distinct = 0;
    for (int round = 0; round < 32; ++round) {
        std::map<std::tuple<int, std::vector<int>, std::vector<int>>, int> sig_to_color;
        std::vector<std::vector<int>> next(static_cast<std::size_t>(n) + 1);
        for (int d = 0; d <= n; ++d) {
            next[static_cast<std::size_t>(d)].assign(static_cast<std::size_t>(cell_count(d)),
                                                     0);
            for (int cls = 0; cls < cell_count(d); ++cls) {
                std::vector<int> fc, cc;
                if (d >= 1)
                    for (int f : cell_facets(d, cls))
                        fc.push_back(color[static_cast<std::size_t>(d) - 1]
                                          [static_cast<std::size_t>(f)]);
                for (int c : cofaces[static_cast<std::size_t>(d)][static_cast<std::size_t>(cls)])
                    cc.push_back(
                        color[static_cast<std::size_t>(d) + 1][static_cast<std::size_t>(c)]);
                std::sort(fc.begin(), fc.end());
                std::sort(cc.begin(), cc.end());
                auto key = std::make_tuple(
                    color[static_cast<std::size_t>(d)][static_cast<std::size_t>(cls)],
                    std::move(fc), std::move(cc));
                auto [it, inserted] =
                    sig_to_color.emplace(std::move(key), static_cast<int>(sig_to_color.size()));
                next[static_cast<std::size_t>(d)][static_cast<std::size_t>(cls)] = it->second;
            }
        }
        const long long now = static_cast<long long>(sig_to_color.size());
        color = std::move(next);
        if (now == distinct) break;
        distinct = now;
    }

    std::vector<std::vector<int>> certificates(components_.size());
    for (int d = 0; d <= n; ++d)
        for (int cls = 0; cls < cell_count(d); ++cls)
            certificates[static_cast<std::size_t>(component_of(d, cls))].push_back(
                color[static_cast<std::size_t>(d)][static_cast<std::size_t>(cls)]);
    for (auto& c : certificates) std::sort(c.begin(), c.end());
    for (std::size_t i = 1; i < certificates.size(); ++i)
        if (certificates[i] != certificates[0])
            return {false, "face-poset refinement certificates differ"};
    return {true, "face-poset refinement certificates agree"};
}

std::vector<GroupElement> GluedComplex::isotropy_basis(int d, int cls) const {
    auto [cell, h] = class_representative(d, cls);
    std::vector<GroupElement> fixing;
    for (std::uint64_t g = 1; g < group_size(); ++g) {
        GroupElement ge(g, m_);
        if (cell_class(d, cell, h + ge) == cls) fixing.push_back(ge);
    }
    return span_basis(fixing);
}

FreenessReport GluedComplex::freeness() const {
    FreenessReport rep;
    for (int d = 0; d <= dim(); ++d)
        for (int cls = 0; cls < cell_count(d); ++cls) {
            auto basis = isotropy_basis(d, cls);
            if (!basis.empty()) {
                rep.free = false;
                rep.fixed_cells.push_back({d, cls, class_label(d, cls), std::move(basis)});
            }
        }
    return rep;
}

LocalStandardReport GluedComplex::locally_standard_isotropy() const {
    if (!reflexive_glued_)
        throw ValidationError(
            "locally-standard isotropy check requires a composite coloring");
    LocalStandardReport rep;
    const std::uint64_t G = group_size();
    for (int d = 0; d <= dim(); ++d) {
        for (int cls = 0; cls < cell_count(d); ++cls) {
            auto [cell, h] = class_representative(d, cls);
            std::vector<GroupElement> expected_gens;
            for (int pi : base_->panels_containing(d, cell))
                if (base_->panels()[static_cast<std::size_t>(pi)].kind ==
                    PanelKind::Reflexive)
                    expected_gens.push_back(*panel_colors_[static_cast<std::size_t>(pi)]);
            // Isotropy subgroup as a bit set.
            std::set<std::uint64_t> iso;
            for (std::uint64_t g = 0; g < G; ++g)
                if (cell_class(d, cell, h + GroupElement(g, m_)) == cls) iso.insert(g);
            std::set<std::uint64_t> expected{0};
            for (const auto& gen : expected_gens) {
                std::set<std::uint64_t> nxt = expected;
                for (auto b : expected) nxt.insert(b ^ gen.bits());
                expected = std::move(nxt);
            }
            if (iso != expected ||
                expected.size() != (std::uint64_t(1) << expected_gens.size())) {
                rep.locally_standard = false;
                rep.failures.push_back(
                    "cell " + class_label(d, cls) + ": isotropy has " +
                    std::to_string(iso.size()) + " elements, expected subgroup of size " +
                    std::to_string(std::uint64_t(1) << expected_gens.size()));
            }
        }
    }
    return rep;
}

bool GluedComplex::closed() const {
    const int n = dim();
    if (n == 0) return true;
    std::vector<int> count(static_cast<std::size_t>(cell_count(n - 1)), 0);
    for (int cls = 0; cls < cell_count(n); ++cls)
        for (int f : cell_facets(n, cls)) ++count[static_cast<std::size_t>(f)];
    for (int c : count)
        if (c != 2) return false;
    return true;
}

CornerComplex GluedComplex::to_corner_complex(const std::string& name) const {
    const std::size_t width = std::to_string(std::max(1, cell_count(0) - 1)).size();
    auto vlabel = [&](int cls) {
        std::string num = std::to_string(cls);
        return "v" + std::string(width - num.size(), '0') + num;
    };
    std::vector<std::string> labels;
    for (int cls = 0; cls < cell_count(0); ++cls) labels.push_back(vlabel(cls));
    std::vector<std::vector<std::string>> tops;
    for (int cls = 0; cls < cell_count(dim()); ++cls) {
        std::vector<std::string> cell;
        for (int v : cell_vertices(dim(), cls)) cell.push_back(vlabel(v));
        tops.push_back(std::move(cell));
    }
    return CornerComplex(name, dim(), labels, tops, {});
}

GluedComplex glue_impl(const CornerComplex& input, int m,
                       const std::map<std::string, GroupElement>& colors_by_id,
                       bool glue_reflexive, const GlueOptions& opts) {
    input.require_valid();
    if (m < 0 || m > kMaxGroupRank)
        throw GuardError("group rank must be between 0 and " +
                         std::to_string(kMaxGroupRank));

    auto colors_for = [&](const CornerComplex& c) {
        std::vector<std::optional<GroupElement>> out;
        for (const auto& p : c.panels()) {
            if (p.kind == PanelKind::Reflexive && !glue_reflexive)
                out.push_back(std::nullopt);
            else
                out.push_back(colors_by_id.at(p.id));
        }
        return out;
    };

    // Connectivity of the orbit space: the m = 0 quotient of the original
    // complex, glued along the same panel set, must be connected.
    if (opts.require_connected_base) {
        GluedComplex q0;
        q0.base_ = std::make_shared<CornerComplex>(input);
        q0.m_ = 0;
        q0.reflexive_glued_ = glue_reflexive;
        for (const auto& p : input.panels()) {
            if (p.kind == PanelKind::Reflexive && !glue_reflexive)
                q0.panel_colors_.push_back(std::nullopt);
            else
                q0.panel_colors_.push_back(GroupElement::zero(0));
        }
        q0.build_classes();
        q0.build_components();
        if (q0.component_count() != 1)
            throw ValidationError("the m=0 quotient (orbit space) of '" + input.name() +
                                  "' has " + std::to_string(q0.component_count()) +
                                  " components; the base must be connected");
    }

    const long long pair_budget = input.total_cells() << m;
    if (pair_budget > kMaxGluePairs)
        throw GuardError("glue would create " + std::to_string(pair_budget) +
                         " (cell, group) pairs; limit is " + std::to_string(kMaxGluePairs));

    std::shared_ptr<const CornerComplex> base = std::make_shared<CornerComplex>(input);
    int level = 0;
    for (; level < opts.min_subdivision_level; ++level)
        base = std::make_shared<CornerComplex>(base->barycentric_subdivide());

    while (true) {
        if ((base->total_cells() << m) > kMaxGluePairs)
            throw GuardError("subdivided glue exceeds the pair budget");
        GluedComplex g;
        g.base_ = base;
        g.level_ = level;
        g.m_ = m;
        g.jobs_ = std::max(1, opts.jobs);
        g.reflexive_glued_ = glue_reflexive;
        g.panel_colors_ = colors_for(*base);
        g.build_classes();
        if (g.check_simplicial()) {
            g.build_components();
            return g;
        }
        if (level >= 2)
            throw InternalError("quotient is not simplicial after two subdivisions");
        base = std::make_shared<CornerComplex>(base->barycentric_subdivide());
        ++level;
    }
}

GluedComplex glue(const CornerComplex& c, const Coloring& col, const GlueOptions& opts) {
    col.check_complete(c);
    if (col.group_rank < 0) throw DimensionMismatchError("negative group rank");
    return glue_impl(c, col.group_rank, col.assignment, /*glue_reflexive=*/false, opts);
}

GluedComplex glue(const CornerComplex& c, const CompositeColoring& col,
                  const GlueOptions& opts) {
    col.check_complete(c);
    col.check_linear_independence(c);
    std::map<std::string, GroupElement> all = col.lambda;
    for (const auto& [id, v] : col.mu) all.emplace(id, v);
    return glue_impl(c, col.group_rank, all, /*glue_reflexive=*/true, opts);
}

GluedComplex glue_trivial(const CornerComplex& c, const GlueOptions& opts) {
    CompositeColoring col;
    col.group_rank = 0;
    for (const auto& id : c.panel_ids(PanelKind::Principal))
        col.lambda.emplace(id, GroupElement::zero(0));
    for (const auto& id : c.panel_ids(PanelKind::Reflexive))
        col.mu.emplace(id, GroupElement::zero(0));
    return glue(c, col, opts);
}

namespace {

void require_core_style(const CornerComplex& c, const char* what) {
    for (const auto& p : c.panels())
        if (p.kind != PanelKind::Principal)
            throw ValidationError(std::string(what) +
                                  " requires an all-principal panel structure; panel '" +
                                  p.id + "' is reflexive");
    auto [perfect, witness] = c.is_perfect();
    if (!perfect)
        throw ValidationError(std::string(what) + " requires a perfect structure; simplex " +
                              c.simplex_label(*witness) + " has the wrong orbit size");
}

} // namespace

std::uint64_t component_count_formula(const CornerComplex& c, const Coloring& col) {
    require_core_style(c, "the component-count formula");
    col.check_complete(c);
    return std::uint64_t(1) << (col.group_rank - coloring_rank(col));
}

std::uint64_t component_count_formula(const CornerComplex& c,
                                      const CompositeColoring& col) {
    auto [perfect, witness] = c.is_perfect();
    if (!perfect)
        throw ValidationError("the component-count formula requires a perfect structure");
    col.check_complete(c);
    col.check_linear_independence(c);
    return std::uint64_t(1) << (col.group_rank - coloring_rank(col));
}

namespace {

GroupElement monodromy_impl(const CornerComplex& c,
                            const std::map<std::string, GroupElement>& lambda, int m,
                            const EdgePath& path) {
    GroupElement out = GroupElement::zero(m);
    for (const auto& id : path) {
        if (!c.has_panel(id))
            throw ValidationError("monodromy path crosses unknown panel '" + id + "'");
        if (c.panel(id).kind != PanelKind::Principal)
            throw ValidationError("monodromy path crosses reflexive panel '" + id + "'");
        auto it = lambda.find(id);
        if (it == lambda.end())
            throw ValidationError("no color for crossed panel '" + id + "'");
        out = out + it->second;
    }
    return out;
}

} // namespace

GroupElement monodromy(const CornerComplex& c, const Coloring& col, const EdgePath& path) {
    return monodromy_impl(c, col.assignment, col.group_rank, path);
}

GroupElement monodromy(const CornerComplex& c, const CompositeColoring& col,
                       const EdgePath& path) {
    return monodromy_impl(c, col.lambda, col.group_rank, path);
}

std::uint64_t component_count_general(int m, const Gf2Matrix& intersection_numbers,
                                      const std::vector<GroupElement>& lambda_values) {
    if (intersection_numbers.cols() != static_cast<int>(lambda_values.size()))
        throw DimensionMismatchError(
            "intersection matrix has " + std::to_string(intersection_numbers.cols()) +
            " columns but " + std::to_string(lambda_values.size()) + " colors were given");
    for (const auto& v : lambda_values)
        if (v.length() != m)
            throw DimensionMismatchError("color of wrong rank in component count");
    std::vector<GroupElement> monodromies;
    for (int i = 0; i < intersection_numbers.rows(); ++i) {
        GroupElement h = GroupElement::zero(m);
        for (int j = 0; j < intersection_numbers.cols(); ++j)
            if (intersection_numbers.get(i, j)) h = h + lambda_values[static_cast<std::size_t>(j)];
        monodromies.push_back(h);
    }
    return std::uint64_t(1) << (m - rank(monodromies));
}

Coloring induced_coloring(const CornerComplex& subpanel, const Coloring& col) {
    Coloring out;
    out.group_rank = col.group_rank;
    for (const auto& id : subpanel.panel_ids(PanelKind::Principal))
        out.assignment.emplace(id, col.color(id));
    return out;
}

SubpanelPreimage preimage_of_subpanel(const GluedComplex& g,
                                      const std::set<std::string>& panel_ids) {
    const CornerComplex& base = g.base();
    for (const auto& p : base.panels())
        if (p.kind != PanelKind::Principal)
            throw ValidationError("subpanel preimages require an all-principal structure");

    SubpanelPreimage out;
    const int n = base.dim();
    const int s = static_cast<int>(panel_ids.size());
    out.dim = n - s;

    // Reconstruct the coloring from the glued complex.
    Coloring col;
    col.group_rank = g.group_rank();
    for (std::size_t pi = 0; pi < base.panels().size(); ++pi)
        col.assignment.emplace(base.panels()[pi].id, *g.panel_colors()[pi]);

    std::vector<int> sel;
    for (const auto& id : panel_ids) sel.push_back(base.panel_index(id));
    auto in_all = [&](int d, int ci) {
        for (int pi : sel)
            if (!base.panel_contains(pi, d, ci)) return false;
        return true;
    };

    if (panel_ids.empty()) {
        out.component_count = g.component_count();
    } else {
        if (out.dim < 0) throw ValidationError("empty subpanel intersection");
        // Components of the preimage: adjacency of member (n-s)-classes
        // across member (n-s-1)-classes, at the pair level.
        const std::uint64_t G = g.group_size();
        std::vector<char> is_member_top(
            static_cast<std::size_t>(g.cell_count(out.dim)), 0);
        std::map<int, int> top_to_local;
        std::vector<int> local_to_top;
        const auto& topcells = base.cells(out.dim);
        bool any = false;
        for (std::size_t ci = 0; ci < topcells.size(); ++ci) {
            if (!in_all(out.dim, static_cast<int>(ci))) continue;
            any = true;
            for (std::uint64_t gg = 0; gg < G; ++gg) {
                const int cls = g.cell_class(out.dim, static_cast<int>(ci),
                                             GroupElement(gg, g.group_rank()));
                if (!is_member_top[static_cast<std::size_t>(cls)]) {
                    is_member_top[static_cast<std::size_t>(cls)] = 1;
                    top_to_local[cls] = static_cast<int>(local_to_top.size());
                    local_to_top.push_back(cls);
                }
            }
        }
        if (!any) throw ValidationError("empty subpanel intersection");

        UnionFind uf(local_to_top.size());
        if (out.dim >= 1) {
            std::vector<int> seen(static_cast<std::size_t>(g.cell_count(out.dim - 1)), -1);
            for (std::size_t ci = 0; ci < topcells.size(); ++ci) {
                if (!in_all(out.dim, static_cast<int>(ci))) continue;
                std::vector<int> facet_idx;
                for (const auto& f : simplex_facets(topcells[ci]))
                    facet_idx.push_back(base.cell_index(f));
                for (std::uint64_t gg = 0; gg < G; ++gg) {
                    const int tcls = top_to_local.at(g.cell_class(
                        out.dim, static_cast<int>(ci), GroupElement(gg, g.group_rank())));
                    for (int fi : facet_idx) {
                        const int fcls = g.cell_class(out.dim - 1, fi,
                                                      GroupElement(gg, g.group_rank()));
                        if (seen[static_cast<std::size_t>(fcls)] < 0)
                            seen[static_cast<std::size_t>(fcls)] = tcls;
                        else
                            uf.unite(seen[static_cast<std::size_t>(fcls)], tcls);
                    }
                }
            }
        }
        std::set<int> roots;
        for (std::size_t i = 0; i < local_to_top.size(); ++i)
            roots.insert(uf.find(static_cast<int>(i)));
        out.component_count = static_cast<int>(roots.size());
    }

    // Independent witness: M(P_I, lambda^in) built from the subpanel complex.
    CornerComplex sub = base.subpanel_complex(panel_ids);
    Coloring col_in = induced_coloring(sub, col);
    GlueOptions opts;
    opts.require_connected_base = false;
    GluedComplex glued_sub = glue(sub, col_in, opts);
    out.glued_subpanel_components = glued_sub.component_count();
    out.relation_holds =
        out.glued_subpanel_components == (1 << s) * out.component_count;
    return out;
}

} // namespace glueback
