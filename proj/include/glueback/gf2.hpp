#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "glueback/errors.hpp"

namespace glueback {

/// An element of (Z2)^m, stored as a bit vector of fixed length m <= 64.
/// Addition is bitwise XOR; coordinate 1 is the leftmost character of the
/// string form, e.g. "10" is e1 in (Z2)^2.
class GroupElement {
  public:
    GroupElement() = default;
    GroupElement(std::uint64_t bits, int length);

    static GroupElement zero(int length) { return GroupElement(0, length); }
    static GroupElement basis(int i, int length); // e_i, 1-based
    static GroupElement from_string(const std::string& s);

    int length() const { return length_; }
    std::uint64_t bits() const { return bits_; }
    bool is_zero() const { return bits_ == 0; }
    bool get(int i) const; // coordinate i, 1-based

    GroupElement operator+(const GroupElement& o) const;
    bool dot(const GroupElement& o) const; // mod-2 inner product

    bool operator==(const GroupElement& o) const {
        return bits_ == o.bits_ && length_ == o.length_;
    }
    bool operator!=(const GroupElement& o) const { return !(*this == o); }
    bool operator<(const GroupElement& o) const {
        return length_ != o.length_ ? length_ < o.length_ : bits_ < o.bits_;
    }

    std::string to_string() const;

  private:
    std::uint64_t bits_ = 0;
    int length_ = 0;
};

// Maximum supported group rank.
inline constexpr int kMaxGroupRank = 24;

// Guard for GL(m,2) enumeration; the group order grows as ~2^(m^2).
inline constexpr int kMaxGlRank = 5;

/// Dense matrix over GF(2), bit-packed by rows.
/// Elimination uses deterministic pivoting (lowest row / column index), so
/// identical inputs give identical reduced forms across runs.
class Gf2Matrix {
  public:
    Gf2Matrix() = default;
    Gf2Matrix(int rows, int cols);

    static Gf2Matrix identity(int n);
    static Gf2Matrix from_rows(const std::vector<GroupElement>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool get(int r, int c) const;
    void set(int r, int c, bool v);
    void xor_row_into(int src, int dst); // row[dst] ^= row[src]
    GroupElement row(int r) const;

    /// A * v, with v an element of (Z2)^cols; the result lives in (Z2)^rows.
    GroupElement apply(const GroupElement& v) const;

    Gf2Matrix multiplied(const Gf2Matrix& o) const;

    int rank() const;
    bool invertible() const { return rows_ == cols_ && rank() == rows_; }

    bool operator==(const Gf2Matrix& o) const;
    bool operator<(const Gf2Matrix& o) const;
    std::string to_string() const;

    /// Rank by dense bit-packed Gaussian elimination.
    int rank_dense() const;

  private:
    int rows_ = 0, cols_ = 0;
    int words_per_row_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Sparse rank computation over GF(2); rows given as sorted column-index
/// lists. Result matches rank_dense on the same matrix.
int rank_sparse(int cols, std::vector<std::vector<int>> rows);

// Column count above which boundary-matrix ranks switch to the sparse path.
inline constexpr int kSparseRankThreshold = 20000;

/// Dimension over GF(2) of the span of the given vectors; 0 for the empty
/// list. All vectors must have equal length.
int rank(const std::vector<GroupElement>& vectors);

/// True iff v lies in the GF(2) span of basis.
bool in_span(const GroupElement& v, const std::vector<GroupElement>& basis);

/// Extract a basis (greedy, in input order) of the span of the given vectors.
std::vector<GroupElement> span_basis(const std::vector<GroupElement>& vectors);

/// Find c in (Z2)^m with c . v = 1 for every v in vectors, or nullopt if no
/// such c exists. For an empty list returns e1 by convention (m >= 1).
std::optional<GroupElement> solve_affine_all_ones(
    int m, const std::vector<GroupElement>& vectors);

/// All invertible m x m matrices over GF(2), each exactly once, in a fixed
/// deterministic order. Guarded by kMaxGlRank.
std::vector<Gf2Matrix> enumerate_gl(int m);

/// |GL(m,2)| = prod_{i=0}^{m-1} (2^m - 2^i).
std::uint64_t gl_order(int m);

} // namespace glueback
