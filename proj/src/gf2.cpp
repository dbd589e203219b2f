#include "glueback/gf2.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace glueback {

GroupElement::GroupElement(std::uint64_t bits, int length) : bits_(bits), length_(length) {
    if (length < 0 || length > 64)
        throw DimensionMismatchError("group rank must be between 0 and 64, got " +
                                     std::to_string(length));
    if (length < 64 && (bits >> length) != 0)
        throw DimensionMismatchError("bit pattern does not fit in rank " +
                                     std::to_string(length));
}

GroupElement GroupElement::basis(int i, int length) {
    if (i < 1 || i > length)
        throw DimensionMismatchError("basis index " + std::to_string(i) +
                                     " out of range for rank " + std::to_string(length));
    return GroupElement(std::uint64_t(1) << (i - 1), length);
}

GroupElement GroupElement::from_string(const std::string& s) {
    if (s.size() > 64)
        throw ParseError("bit string longer than 64: '" + s + "'");
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            bits |= std::uint64_t(1) << i;
        else if (s[i] != '0')
            throw ParseError("bit string must contain only 0/1, got '" + s + "'");
    }
    return GroupElement(bits, static_cast<int>(s.size()));
}

bool GroupElement::get(int i) const {
    if (i < 1 || i > length_)
        throw DimensionMismatchError("coordinate index out of range");
    return (bits_ >> (i - 1)) & 1u;
}

GroupElement GroupElement::operator+(const GroupElement& o) const {
    if (length_ != o.length_)
        throw DimensionMismatchError("cannot add elements of rank " +
                                     std::to_string(length_) + " and " +
                                     std::to_string(o.length_));
    return GroupElement(bits_ ^ o.bits_, length_);
}

bool GroupElement::dot(const GroupElement& o) const {
    if (length_ != o.length_)
        throw DimensionMismatchError("cannot pair elements of rank " +
                                     std::to_string(length_) + " and " +
                                     std::to_string(o.length_));
    return std::popcount(bits_ & o.bits_) & 1;
}

std::string GroupElement::to_string() const {
    std::string s(static_cast<std::size_t>(length_), '0');
    for (int i = 0; i < length_; ++i)
        if ((bits_ >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

Gf2Matrix::Gf2Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0)
        throw DimensionMismatchError("matrix dimensions must be nonnegative");
    words_per_row_ = (cols + 63) / 64;
    bits_.assign(static_cast<std::size_t>(rows) * words_per_row_, 0);
}

Gf2Matrix Gf2Matrix::identity(int n) {
    Gf2Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

Gf2Matrix Gf2Matrix::from_rows(const std::vector<GroupElement>& rows) {
    if (rows.empty()) return Gf2Matrix(0, 0);
    const int cols = rows.front().length();
    Gf2Matrix m(static_cast<int>(rows.size()), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].length() != cols)
            throw DimensionMismatchError("mixed vector lengths: " + std::to_string(cols) +
                                         " vs " + std::to_string(rows[r].length()));
        for (int c = 0; c < cols; ++c)
            if ((rows[r].bits() >> c) & 1u) m.set(static_cast<int>(r), c, true);
    }
    return m;
}

bool Gf2Matrix::get(int r, int c) const {
    return (bits_[static_cast<std::size_t>(r) * words_per_row_ + c / 64] >> (c % 64)) & 1u;
}

void Gf2Matrix::set(int r, int c, bool v) {
    auto& w = bits_[static_cast<std::size_t>(r) * words_per_row_ + c / 64];
    const std::uint64_t mask = std::uint64_t(1) << (c % 64);
    if (v)
        w |= mask;
    else
        w &= ~mask;
}

void Gf2Matrix::xor_row_into(int src, int dst) {
    const std::size_t a = static_cast<std::size_t>(src) * words_per_row_;
    const std::size_t b = static_cast<std::size_t>(dst) * words_per_row_;
    for (int w = 0; w < words_per_row_; ++w) bits_[b + w] ^= bits_[a + w];
}

GroupElement Gf2Matrix::row(int r) const {
    if (cols_ > 64) throw DimensionMismatchError("row wider than 64 bits");
    std::uint64_t v = words_per_row_ > 0 ? bits_[static_cast<std::size_t>(r) * words_per_row_] : 0;
    return GroupElement(v, cols_);
}

GroupElement Gf2Matrix::apply(const GroupElement& v) const {
    if (v.length() != cols_)
        throw DimensionMismatchError("matrix has " + std::to_string(cols_) +
                                     " columns but vector has rank " +
                                     std::to_string(v.length()));
    std::uint64_t out = 0;
    for (int r = 0; r < rows_; ++r) {
        std::uint64_t rowbits = words_per_row_ > 0
                                    ? bits_[static_cast<std::size_t>(r) * words_per_row_]
                                    : 0;
        if (std::popcount(rowbits & v.bits()) & 1) out |= std::uint64_t(1) << r;
    }
    return GroupElement(out, rows_);
}

Gf2Matrix Gf2Matrix::multiplied(const Gf2Matrix& o) const {
    if (cols_ != o.rows_)
        throw DimensionMismatchError("matrix product shape mismatch");
    Gf2Matrix out(rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k)
            if (get(r, k))
                for (int w = 0; w < out.words_per_row_; ++w)
                    out.bits_[static_cast<std::size_t>(r) * out.words_per_row_ + w] ^=
                        o.bits_[static_cast<std::size_t>(k) * o.words_per_row_ + w];
    return out;
}

int Gf2Matrix::rank() const { return rank_dense(); }

int Gf2Matrix::rank_dense() const {
    Gf2Matrix work = *this;
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
        int pivot = -1;
        for (int i = r; i < rows_; ++i) {
            if (work.get(i, c)) { pivot = i; break; }
        }
        if (pivot < 0) continue;
        if (pivot != r) {
            for (int w = 0; w < words_per_row_; ++w)
                std::swap(work.bits_[static_cast<std::size_t>(pivot) * words_per_row_ + w],
                          work.bits_[static_cast<std::size_t>(r) * words_per_row_ + w]);
        }
        for (int i = r + 1; i < rows_; ++i)
            if (work.get(i, c)) work.xor_row_into(r, i);
        ++r;
    }
    return r;
}

bool Gf2Matrix::operator==(const Gf2Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_;
}

bool Gf2Matrix::operator<(const Gf2Matrix& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    return bits_ < o.bits_;
}

std::string Gf2Matrix::to_string() const {
    std::ostringstream out;
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) out << (get(r, c) ? '1' : '0');
        if (r + 1 < rows_) out << '/';
    }
    return out.str();
}

int rank_sparse(int cols, std::vector<std::vector<int>> rows) {
    // Row-list elimination with lowest-index pivoting; pivot_owner[c] is the
    // row currently owning column c as its leading entry.
    std::vector<int> pivot_owner(static_cast<std::size_t>(cols), -1);
    int r = 0;
    auto xor_rows = [](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> out;
        out.reserve(a.size() + b.size());
        std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                      std::back_inserter(out));
        return out;
    };
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<int> cur = std::move(rows[i]);
        while (!cur.empty()) {
            const int lead = cur.front();
            const int owner = pivot_owner[static_cast<std::size_t>(lead)];
            if (owner < 0) {
                pivot_owner[static_cast<std::size_t>(lead)] = static_cast<int>(i);
                rows[i] = std::move(cur);
                ++r;
                break;
            }
            cur = xor_rows(cur, rows[static_cast<std::size_t>(owner)]);
        }
    }
    return r;
}

int rank(const std::vector<GroupElement>& vectors) {
    if (vectors.empty()) return 0;
    return Gf2Matrix::from_rows(vectors).rank();
}

bool in_span(const GroupElement& v, const std::vector<GroupElement>& basis) {
    for (const auto& b : basis) {
        if (b.length() != v.length())
            throw DimensionMismatchError("mixed vector lengths in span test");
    }
    std::vector<GroupElement> with = basis;
    with.push_back(v);
    return rank(with) == rank(basis);
}

std::vector<GroupElement> span_basis(const std::vector<GroupElement>& vectors) {
    std::vector<GroupElement> basis;
    for (const auto& v : vectors) {
        if (v.is_zero()) continue;
        if (!in_span(v, basis)) basis.push_back(v);
    }
    return basis;
}

std::optional<GroupElement> solve_affine_all_ones(int m,
                                                  const std::vector<GroupElement>& vectors) {
    if (m < 0 || m > 64) throw DimensionMismatchError("invalid group rank");
    if (vectors.empty()) {
        if (m >= 1) return GroupElement::basis(1, m);
        return std::nullopt; // no nonzero functional exists in rank 0
    }
    for (const auto& v : vectors)
        if (v.length() != m)
            throw DimensionMismatchError("vector rank differs from ambient rank");
    if (m == 0) return std::nullopt;

    // Augmented system [A | 1]: rows are the constraint vectors.
    const int n = static_cast<int>(vectors.size());
    Gf2Matrix aug(n, m + 1);
    for (int i = 0; i < n; ++i) {
        for (int c = 0; c < m; ++c)
            if ((vectors[static_cast<std::size_t>(i)].bits() >> c) & 1u) aug.set(i, c, true);
        aug.set(i, m, true);
    }
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < m && r < n; ++c) {
        int pivot = -1;
        for (int i = r; i < n; ++i)
            if (aug.get(i, c)) { pivot = i; break; }
        if (pivot < 0) continue;
        if (pivot != r)
            for (int cc = 0; cc <= m; ++cc) {
                const bool a = aug.get(r, cc), b = aug.get(pivot, cc);
                aug.set(r, cc, b);
                aug.set(pivot, cc, a);
            }
        for (int i = 0; i < n; ++i)
            if (i != r && aug.get(i, c)) aug.xor_row_into(r, i);
        pivot_col.push_back(c);
        ++r;
    }
    for (int i = r; i < n; ++i)
        if (aug.get(i, m)) return std::nullopt; // 0 = 1 row: inconsistent
    std::uint64_t sol = 0;
    for (int i = 0; i < r; ++i)
        if (aug.get(i, m)) sol |= std::uint64_t(1) << pivot_col[static_cast<std::size_t>(i)];
    return GroupElement(sol, m);
}

std::uint64_t gl_order(int m) {
    std::uint64_t n = 1;
    for (int i = 0; i < m; ++i) n *= (std::uint64_t(1) << m) - (std::uint64_t(1) << i);
    return n;
}

namespace {

void build_gl(int m, int row, std::vector<GroupElement>& rows,
              std::vector<Gf2Matrix>& out) {
    if (row == m) {
        out.push_back(Gf2Matrix::from_rows(rows));
        return;
    }
    const std::uint64_t total = std::uint64_t(1) << m;
    for (std::uint64_t bits = 1; bits < total; ++bits) {
        GroupElement cand(bits, m);
        if (in_span(cand, rows)) continue;
        rows.push_back(cand);
        build_gl(m, row + 1, rows, out);
        rows.pop_back();
    }
}

} // namespace

std::vector<Gf2Matrix> enumerate_gl(int m) {
    if (m < 1)
        throw DimensionMismatchError("GL enumeration needs rank >= 1");
    if (m > kMaxGlRank)
        throw GuardError("GL(m,2) enumeration is limited to m <= " +
                         std::to_string(kMaxGlRank) + ", got m = " + std::to_string(m));
    std::vector<Gf2Matrix> out;
    out.reserve(static_cast<std::size_t>(gl_order(m)));
    std::vector<GroupElement> rows;
    build_gl(m, 0, rows, out);
    return out;
}

} // namespace glueback
