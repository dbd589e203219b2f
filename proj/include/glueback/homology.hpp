#pragma once

#include <optional>
#include <vector>

#include "glueback/corner_complex.hpp"
#include "glueback/gf2.hpp"
#include "glueback/glue.hpp"

namespace glueback {

/// Chain complex over GF(2): boundary operators stored as column lists
/// (boundary[d][col] = sorted row indices of the (d-1)-cells of cell col).
struct ChainComplexZ2 {
    std::vector<int> cell_counts;                         // per dim 0..n
    std::vector<std::vector<std::vector<int>>> boundary;  // index d = 1..n (entry 0 unused)

    int dim() const { return static_cast<int>(cell_counts.size()) - 1; }
    bool boundary_squares_to_zero() const;
    int boundary_rank(int d) const; // rank of the d-th boundary operator
    std::vector<int> betti() const;
    int euler() const;
};

ChainComplexZ2 chain_complex(const CornerComplex& c);
/// component < 0 builds the whole complex, otherwise one component.
ChainComplexZ2 chain_complex(const GluedComplex& g, int component = -1);

std::vector<int> z2_betti(const CornerComplex& c);
std::vector<int> z2_betti(const GluedComplex& g, int component = -1);

int euler(const CornerComplex& c);
int euler(const GluedComplex& g);

/// Orientability of a closed pseudomanifold by sign propagation across
/// shared (n-1)-cells; every component must orient consistently. Throws
/// ValidationError if some (n-1)-cell is not in exactly two top cells.
bool orientable_combinatorial(const CornerComplex& c);
bool orientable_combinatorial(const GluedComplex& g);

/// The coloring criterion for orientability over an orientable base: true
/// iff a functional c with c . mu = 1 for every reflexive color exists
/// (vacuously true with no reflexive panels). nullopt when the base is not
/// orientable (the criterion does not apply).
std::optional<bool> orientable_by_coloring(int m, const std::vector<GroupElement>& mu_values,
                                           bool base_orientable);

} // namespace glueback
