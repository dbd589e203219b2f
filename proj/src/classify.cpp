#include "glueback/classify.hpp"

#include <algorithm>
#include <numeric>

namespace glueback {

namespace {

struct OrbitUnionFind {
    std::vector<long long> parent;
    explicit OrbitUnionFind(long long n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    long long find(long long x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(long long a, long long b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent[static_cast<std::size_t>(b)] = a;
    }
};

// Constraint sets: for each cell, the reflexive panels containing it; the
// assigned colors must be linearly independent on each set.
std::vector<std::vector<int>> reflexive_constraints(const CornerComplex& c,
                                                    const std::vector<std::string>& ids) {
    std::map<std::string, int> pos;
    for (std::size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = static_cast<int>(i);
    std::set<std::vector<int>> sets;
    for (int d = 0; d < c.dim(); ++d)
        for (std::size_t ci = 0; ci < c.cells(d).size(); ++ci) {
            std::vector<int> members;
            for (int pi : c.panels_containing(d, static_cast<int>(ci))) {
                const Panel& p = c.panels()[static_cast<std::size_t>(pi)];
                if (p.kind == PanelKind::Reflexive) members.push_back(pos.at(p.id));
            }
            if (members.empty()) continue;
            std::sort(members.begin(), members.end());
            sets.insert(std::move(members));
        }
    return {sets.begin(), sets.end()};
}

} // namespace

namespace {

// Backtracking enumeration of valid mu over the reflexive panels of c;
// usable on mixed complexes. Fills `valid` (lex order) or `diagnostic`.
void enumerate_valid_mu(const CornerComplex& c, int m, CharacteristicEnumeration& out) {
    out.panel_ids = c.panel_ids(PanelKind::Reflexive);
    const int l = static_cast<int>(out.panel_ids.size());
    if (l > kMaxCharacteristicPanels)
        throw GuardError("characteristic enumeration is limited to " +
                         std::to_string(kMaxCharacteristicPanels) + " panels, got " +
                         std::to_string(l));
    if (l == 0) {
        out.valid.push_back({});
        return;
    }

    auto constraints = reflexive_constraints(c, out.panel_ids);
    for (const auto& set : constraints)
        if (static_cast<int>(set.size()) > m) {
            std::vector<std::string> names;
            for (int i : set) names.push_back(out.panel_ids[static_cast<std::size_t>(i)]);
            out.diagnostic =
                "infeasible: a face meets " + std::to_string(set.size()) + " panels (";
            for (std::size_t i = 0; i < names.size(); ++i)
                out.diagnostic += (i ? "," : "") + names[i];
            out.diagnostic += ") but m = " + std::to_string(m);
            return;
        }

    // Check each constraint once its last panel is assigned.
    std::vector<std::vector<std::vector<int>>> by_last(static_cast<std::size_t>(l));
    for (const auto& set : constraints)
        by_last[static_cast<std::size_t>(set.back())].push_back(set);

    const std::uint64_t total = m >= 1 ? (std::uint64_t(1) << m) : 1;
    std::vector<GroupElement> current;
    auto assign = [&](auto&& self, int i) -> void {
        if (i == l) {
            out.valid.push_back(current);
            return;
        }
        for (std::uint64_t bits = 1; bits < total; ++bits) {
            current.push_back(GroupElement(bits, m));
            bool ok = true;
            for (const auto& set : by_last[static_cast<std::size_t>(i)]) {
                std::vector<GroupElement> vals;
                for (int j : set) vals.push_back(current[static_cast<std::size_t>(j)]);
                if (rank(vals) != static_cast<int>(vals.size())) {
                    ok = false;
                    break;
                }
            }
            if (ok) self(self, i + 1);
            current.pop_back();
        }
    };
    assign(assign, 0);
    if (out.valid.empty() && out.diagnostic.empty())
        out.diagnostic = "no valid assignment exists for m = " + std::to_string(m);
}

} // namespace

CharacteristicEnumeration enumerate_characteristic(const CornerComplex& x, int m) {
    x.require_valid();
    for (const auto& p : x.panels())
        if (p.kind == PanelKind::Principal)
            throw ValidationError(
                "characteristic functions live on all-reflexive complexes; panel '" + p.id +
                "' is principal");
    if (m < 1 || m > kMaxCharacteristicRank)
        throw GuardError("characteristic enumeration is limited to 1 <= m <= " +
                         std::to_string(kMaxCharacteristicRank));
    CharacteristicEnumeration out;
    enumerate_valid_mu(x, m, out);
    return out;
}

ColoringSpace ColoringSpace::build(const CornerComplex& c, int m) {
    c.require_valid();
    ColoringSpace space;
    space.complex_ = std::make_shared<CornerComplex>(c);
    space.m_ = m;
    const auto principal = c.panel_ids(PanelKind::Principal);
    const auto reflexive = c.panel_ids(PanelKind::Reflexive);
    space.principal_count_ = static_cast<int>(principal.size());
    space.panel_ids_ = principal;
    space.panel_ids_.insert(space.panel_ids_.end(), reflexive.begin(), reflexive.end());

    if (m < 0 || m > kMaxCharacteristicRank)
        throw GuardError("coloring spaces are limited to m <= " +
                         std::to_string(kMaxCharacteristicRank));

    // The mu part first (it may be empty or infeasible).
    CharacteristicEnumeration chars;
    enumerate_valid_mu(c, m, chars);
    std::vector<std::vector<GroupElement>> mu_part = std::move(chars.valid);
    space.diagnostic_ = chars.diagnostic;

    if (m * space.principal_count_ > 40)
        throw GuardError("coloring space is far beyond the enumeration limit");
    const long long lambda_count = 1LL << (m * space.principal_count_);
    const long long total = lambda_count * static_cast<long long>(mu_part.size());
    if (total > kMaxColoringSpace)
        throw GuardError("coloring space has " + std::to_string(total) +
                         " elements; limit is " + std::to_string(kMaxColoringSpace));

    const std::uint64_t per = std::uint64_t(1) << m;
    std::vector<GroupElement> lambda(static_cast<std::size_t>(space.principal_count_),
                                     GroupElement::zero(m));
    auto emit_lambda = [&](auto&& self, int i) -> void {
        if (i == space.principal_count_) {
            for (const auto& mu : mu_part) {
                std::vector<GroupElement> values = lambda;
                values.insert(values.end(), mu.begin(), mu.end());
                space.colorings_.push_back(std::move(values));
            }
            return;
        }
        for (std::uint64_t bits = 0; bits < per; ++bits) {
            lambda[static_cast<std::size_t>(i)] = GroupElement(bits, m);
            self(self, i + 1);
        }
    };
    emit_lambda(emit_lambda, 0);
    return space;
}

CompositeColoring ColoringSpace::composite(long long index) const {
    const auto& values = colorings_.at(static_cast<std::size_t>(index));
    CompositeColoring col;
    col.group_rank = m_;
    for (std::size_t i = 0; i < panel_ids_.size(); ++i) {
        if (static_cast<int>(i) < principal_count_)
            col.lambda.emplace(panel_ids_[i], values[i]);
        else
            col.mu.emplace(panel_ids_[i], values[i]);
    }
    return col;
}

long long ColoringSpace::index_of(const std::vector<GroupElement>& values) const {
    auto it = std::lower_bound(colorings_.begin(), colorings_.end(), values);
    if (it == colorings_.end() || *it != values)
        throw InternalError("coloring is not in the enumerated space");
    return static_cast<long long>(it - colorings_.begin());
}

namespace {

std::vector<GroupElement> apply_gl(const Gf2Matrix& sigma,
                                   const std::vector<GroupElement>& values) {
    std::vector<GroupElement> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(sigma.apply(v));
    return out;
}

std::vector<GroupElement> apply_perm(const std::vector<int>& perm,
                                     const std::vector<GroupElement>& values) {
    // (c . Phi)(p_i) = c(Phi(p_i)) = values[perm[i]].
    std::vector<GroupElement> out;
    out.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        out.push_back(values[static_cast<std::size_t>(perm[i])]);
    return out;
}

OrbitCount orbit_count_impl(const ColoringSpace& space,
                            const std::vector<Gf2Matrix>& gl_elements,
                            const std::vector<std::vector<int>>& perm_group) {
    const long long n = space.size();
    const long long group = static_cast<long long>(
                                std::max<std::size_t>(gl_elements.size(), 1)) *
                            static_cast<long long>(std::max<std::size_t>(perm_group.size(), 1));
    if (n * group > kMaxOrbitWork)
        throw GuardError("orbit counting would need " + std::to_string(n * group) +
                         " group applications; limit is " + std::to_string(kMaxOrbitWork));

    OrbitUnionFind uf(n);
    long long fixed_total = 0;
    auto act = [&](const Gf2Matrix* sigma, const std::vector<int>* perm,
                   const std::vector<GroupElement>& values) {
        std::vector<GroupElement> out = perm ? apply_perm(*perm, values) : values;
        if (sigma) out = apply_gl(*sigma, out);
        return out;
    };

    const bool use_gl = !gl_elements.empty();
    for (long long i = 0; i < n; ++i) {
        const auto& values = space.colorings()[static_cast<std::size_t>(i)];
        if (use_gl && perm_group.empty()) {
            for (const auto& sigma : gl_elements) {
                const long long j = space.index_of(act(&sigma, nullptr, values));
                uf.unite(i, j);
                if (i == j) ++fixed_total;
            }
        } else if (!use_gl) {
            for (const auto& perm : perm_group) {
                const long long j = space.index_of(act(nullptr, &perm, values));
                uf.unite(i, j);
                if (i == j) ++fixed_total;
            }
        } else {
            for (const auto& sigma : gl_elements)
                for (const auto& perm : perm_group) {
                    const long long j = space.index_of(act(&sigma, &perm, values));
                    uf.unite(i, j);
                    if (i == j) ++fixed_total;
                }
        }
    }

    OrbitCount out;
    for (long long i = 0; i < n; ++i)
        if (uf.find(i) == i) out.representatives.push_back(i);
    out.direct_count = static_cast<long long>(out.representatives.size());
    if (fixed_total % group != 0)
        throw InternalError("Burnside sum is not divisible by the group order");
    out.burnside_count = fixed_total / group;
    if (out.burnside_count != out.direct_count)
        throw InternalError("Burnside count " + std::to_string(out.burnside_count) +
                            " disagrees with direct orbit count " +
                            std::to_string(out.direct_count));
    return out;
}

} // namespace

OrbitCount orbits_under_gl(const ColoringSpace& space) {
    return orbit_count_impl(space, enumerate_gl(space.group_rank()), {});
}

OrbitCount double_cosets(const ColoringSpace& space,
                         const std::vector<PanelPermutation>& aut_generators, bool use_gl) {
    const auto& ids = space.panel_ids();
    std::map<std::string, int> pos;
    for (std::size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = static_cast<int>(i);

    // Validate generators and translate to index permutations.
    std::vector<std::vector<int>> gens;
    for (const auto& g : aut_generators) {
        check_panel_permutation(space.complex(), g);
        std::vector<int> perm(ids.size());
        for (std::size_t i = 0; i < ids.size(); ++i)
            perm[i] = pos.at(g.panel_map.at(ids[i]));
        gens.push_back(std::move(perm));
    }

    // Close into a permutation group.
    std::vector<int> identity(ids.size());
    std::iota(identity.begin(), identity.end(), 0);
    std::set<std::vector<int>> closure{identity};
    std::vector<std::vector<int>> frontier{identity};
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& p : frontier)
            for (const auto& g : gens) {
                std::vector<int> q(ids.size());
                for (std::size_t i = 0; i < ids.size(); ++i)
                    q[i] = p[static_cast<std::size_t>(g[i])];
                if (closure.insert(q).second) {
                    if (static_cast<int>(closure.size()) > kMaxAutClosure)
                        throw GuardError("automorphism closure exceeds " +
                                         std::to_string(kMaxAutClosure) + " elements");
                    next.push_back(std::move(q));
                }
            }
        frontier = std::move(next);
    }
    std::vector<std::vector<int>> perm_group(closure.begin(), closure.end());

    std::vector<Gf2Matrix> gl;
    if (use_gl) gl = enumerate_gl(space.group_rank());
    return orbit_count_impl(space, gl, perm_group);
}

} // namespace glueback
