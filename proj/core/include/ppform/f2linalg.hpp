#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

// Dense linear algebra over F_2 for maps on bitvectors of width <= 32.
// A Matrix stores one 32-bit row mask per output bit; apply() computes
// y_r = parity(row[r] & x).

namespace ppform::f2 {

inline int parity(std::uint32_t x) { return std::popcount(x) & 1; }

struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint32_t> row;

    static Matrix zero(int r, int c) { return Matrix{r, c, std::vector<std::uint32_t>(static_cast<size_t>(r), 0u)}; }

    static Matrix identity(int n) {
        Matrix m = zero(n, n);
        for (int i = 0; i < n; ++i) m.row[static_cast<size_t>(i)] = 1u << i;
        return m;
    }

    std::uint32_t apply(std::uint32_t x) const {
        std::uint32_t y = 0;
        for (int r = 0; r < rows; ++r)
            y |= static_cast<std::uint32_t>(parity(row[static_cast<size_t>(r)] & x)) << r;
        return y;
    }

    std::uint32_t column(int c) const {
        std::uint32_t v = 0;
        for (int r = 0; r < rows; ++r)
            v |= ((row[static_cast<size_t>(r)] >> c) & 1u) << r;
        return v;
    }

    static Matrix from_columns(int rows, const std::vector<std::uint32_t>& cols) {
        Matrix m = zero(rows, static_cast<int>(cols.size()));
        for (int c = 0; c < m.cols; ++c)
            for (int r = 0; r < rows; ++r)
                m.row[static_cast<size_t>(r)] |= ((cols[static_cast<size_t>(c)] >> r) & 1u) << c;
        return m;
    }

    // this * other (apply other first)
    Matrix compose(const Matrix& other) const {
        std::vector<std::uint32_t> cols(static_cast<size_t>(other.cols));
        for (int c = 0; c < other.cols; ++c) cols[static_cast<size_t>(c)] = apply(other.column(c));
        return from_columns(rows, cols);
    }

    Matrix operator+(const Matrix& other) const {
        Matrix m = *this;
        for (int r = 0; r < rows; ++r) m.row[static_cast<size_t>(r)] ^= other.row[static_cast<size_t>(r)];
        return m;
    }
};

// Reduce a list of vectors to a reduced (leading bits unique, back-substituted)
// basis, highest leading bit first.
std::vector<std::uint32_t> reduce_basis(std::vector<std::uint32_t> vecs);

int rank(const Matrix& m);

// Basis of {x : Mx = 0}.
std::vector<std::uint32_t> nullspace(const Matrix& m);

// Some x with Mx = y, if any.
std::optional<std::uint32_t> solve(const Matrix& m, std::uint32_t y);

std::optional<Matrix> inverse(const Matrix& m);

}  // namespace ppform::f2
