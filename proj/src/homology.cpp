#include "glueback/homology.hpp"

#include <algorithm>
#include <deque>

namespace glueback {

bool ChainComplexZ2::boundary_squares_to_zero() const {
    // dd(col) accumulates each (d-2)-cell an even number of times.
    for (int d = 2; d <= dim(); ++d) {
        for (const auto& col : boundary[static_cast<std::size_t>(d)]) {
            std::map<int, int> count;
            for (int mid : col)
                for (int low : boundary[static_cast<std::size_t>(d) - 1]
                                        [static_cast<std::size_t>(mid)])
                    ++count[low];
            for (const auto& [cell, c] : count)
                if (c % 2 != 0) return false;
        }
    }
    return true;
}

int ChainComplexZ2::boundary_rank(int d) const {
    if (d < 1 || d > dim()) return 0;
    const auto& cols = boundary[static_cast<std::size_t>(d)];
    const int nrows = cell_counts[static_cast<std::size_t>(d) - 1];
    const int ncols = static_cast<int>(cols.size());
    if (nrows == 0 || ncols == 0) return 0;
    if (ncols > kSparseRankThreshold) {
        // rank(A) = rank(A^T): feed the columns as rows.
        return rank_sparse(nrows, cols);
    }
    Gf2Matrix mat(nrows, ncols);
    for (int c = 0; c < ncols; ++c)
        for (int r : cols[static_cast<std::size_t>(c)]) mat.set(r, c, true);
    return mat.rank_dense();
}

std::vector<int> ChainComplexZ2::betti() const {
    std::vector<int> out;
    for (int d = 0; d <= dim(); ++d) {
        const int rd = boundary_rank(d);
        const int rd1 = boundary_rank(d + 1);
        out.push_back(cell_counts[static_cast<std::size_t>(d)] - rd - rd1);
    }
    return out;
}

int ChainComplexZ2::euler() const {
    int chi = 0;
    for (int d = 0; d <= dim(); ++d)
        chi += (d % 2 == 0 ? 1 : -1) * cell_counts[static_cast<std::size_t>(d)];
    return chi;
}

ChainComplexZ2 chain_complex(const CornerComplex& c) {
    c.require_valid();
    ChainComplexZ2 out;
    out.cell_counts.resize(static_cast<std::size_t>(c.dim()) + 1);
    out.boundary.resize(static_cast<std::size_t>(c.dim()) + 1);
    for (int d = 0; d <= c.dim(); ++d)
        out.cell_counts[static_cast<std::size_t>(d)] = c.cell_count(d);
    for (int d = 1; d <= c.dim(); ++d) {
        auto& cols = out.boundary[static_cast<std::size_t>(d)];
        cols.resize(c.cells(d).size());
        for (std::size_t ci = 0; ci < c.cells(d).size(); ++ci) {
            for (const auto& f : simplex_facets(c.cells(d)[ci]))
                cols[ci].push_back(c.cell_index(f));
            std::sort(cols[ci].begin(), cols[ci].end());
        }
    }
    return out;
}

ChainComplexZ2 chain_complex(const GluedComplex& g, int component) {
    ChainComplexZ2 out;
    const int n = g.dim();
    out.cell_counts.resize(static_cast<std::size_t>(n) + 1);
    out.boundary.resize(static_cast<std::size_t>(n) + 1);

    // Renumber cells of the chosen component.
    std::vector<std::vector<int>> renumber(static_cast<std::size_t>(n) + 1);
    for (int d = 0; d <= n; ++d) {
        renumber[static_cast<std::size_t>(d)].assign(
            static_cast<std::size_t>(g.cell_count(d)), -1);
        int next = 0;
        for (int cls = 0; cls < g.cell_count(d); ++cls)
            if (component < 0 || g.component_of(d, cls) == component)
                renumber[static_cast<std::size_t>(d)][static_cast<std::size_t>(cls)] = next++;
        out.cell_counts[static_cast<std::size_t>(d)] = next;
    }
    for (int d = 1; d <= n; ++d) {
        auto& cols = out.boundary[static_cast<std::size_t>(d)];
        cols.resize(static_cast<std::size_t>(out.cell_counts[static_cast<std::size_t>(d)]));
        for (int cls = 0; cls < g.cell_count(d); ++cls) {
            const int col = renumber[static_cast<std::size_t>(d)][static_cast<std::size_t>(cls)];
            if (col < 0) continue;
            for (int f : g.cell_facets(d, cls)) {
                const int row =
                    renumber[static_cast<std::size_t>(d) - 1][static_cast<std::size_t>(f)];
                if (row < 0)
                    throw InternalError("component boundary leaves the component");
                cols[static_cast<std::size_t>(col)].push_back(row);
            }
            std::sort(cols[static_cast<std::size_t>(col)].begin(),
                      cols[static_cast<std::size_t>(col)].end());
        }
    }
    return out;
}

std::vector<int> z2_betti(const CornerComplex& c) { return chain_complex(c).betti(); }

std::vector<int> z2_betti(const GluedComplex& g, int component) {
    return chain_complex(g, component).betti();
}

int euler(const CornerComplex& c) { return c.euler(); }

int euler(const GluedComplex& g) { return g.euler(); }

namespace {

// Sign propagation over the dual adjacency graph. Cells are given by their
// sorted vertex lists; two top cells sharing a facet must induce opposite
// orientations on it.
bool propagate_signs(int top_count,
                     const std::vector<std::vector<std::pair<int, int>>>& incidences) {
    // incidences[f] = list of (top cell, parity of omitted position).
    const int n_top = top_count;
    std::vector<int> sign(static_cast<std::size_t>(n_top), 0);
    // adjacency: for each facet with two cofaces (t1,p1),(t2,p2):
    // sign(t1)*(-1)^p1 = -sign(t2)*(-1)^p2.
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n_top));
    for (const auto& inc : incidences) {
        if (inc.size() != 2) throw ValidationError("not a closed pseudomanifold");
        const auto [t1, p1] = inc[0];
        const auto [t2, p2] = inc[1];
        // relative = +1 if signs must be equal, -1 if opposite
        const int rel = ((p1 + p2) % 2 == 0) ? -1 : +1;
        adj[static_cast<std::size_t>(t1)].push_back({t2, rel});
        adj[static_cast<std::size_t>(t2)].push_back({t1, rel});
    }
    for (int start = 0; start < n_top; ++start) {
        if (sign[static_cast<std::size_t>(start)] != 0) continue;
        sign[static_cast<std::size_t>(start)] = 1;
        std::deque<int> queue{start};
        while (!queue.empty()) {
            const int t = queue.front();
            queue.pop_front();
            for (const auto& [u, rel] : adj[static_cast<std::size_t>(t)]) {
                const int want = sign[static_cast<std::size_t>(t)] * rel;
                if (sign[static_cast<std::size_t>(u)] == 0) {
                    sign[static_cast<std::size_t>(u)] = want;
                    queue.push_back(u);
                } else if (sign[static_cast<std::size_t>(u)] != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

} // namespace

bool orientable_combinatorial(const CornerComplex& c) {
    c.require_valid();
    const int n = c.dim();
    if (n == 0) return true;
    const auto& tops = c.cells(n);
    std::vector<std::vector<std::pair<int, int>>> incidences(c.cells(n - 1).size());
    for (std::size_t t = 0; t < tops.size(); ++t) {
        const auto facets = simplex_facets(tops[t]);
        for (std::size_t omit = 0; omit < facets.size(); ++omit)
            incidences[static_cast<std::size_t>(c.cell_index(facets[omit]))].push_back(
                {static_cast<int>(t), static_cast<int>(omit)});
    }
    return propagate_signs(static_cast<int>(tops.size()), incidences);
}

bool orientable_combinatorial(const GluedComplex& g) {
    const int n = g.dim();
    if (n == 0) return true;
    std::vector<std::vector<std::pair<int, int>>> incidences(
        static_cast<std::size_t>(g.cell_count(n - 1)));
    for (int cls = 0; cls < g.cell_count(n); ++cls) {
        const auto facets = g.cell_facets(n, cls);
        for (std::size_t omit = 0; omit < facets.size(); ++omit)
            incidences[static_cast<std::size_t>(facets[omit])].push_back(
                {cls, static_cast<int>(omit)});
    }
    return propagate_signs(g.cell_count(n), incidences);
}

std::optional<bool> orientable_by_coloring(int m, const std::vector<GroupElement>& mu_values,
                                           bool base_orientable) {
    if (!base_orientable) return std::nullopt;
    if (mu_values.empty()) return true;
    return solve_affine_all_ones(m, mu_values).has_value();
}

} // namespace glueback
