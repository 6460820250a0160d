#include "ppform/f2linalg.hpp"

#include <algorithm>

namespace ppform::f2 {

std::vector<std::uint32_t> reduce_basis(std::vector<std::uint32_t> vecs) {
    std::vector<std::uint32_t> basis;
    for (std::uint32_t v : vecs) {
        for (std::uint32_t b : basis)
            if (std::uint32_t lead = 1u << (31 - std::countl_zero(b)); v & lead) v ^= b;
        if (v) basis.push_back(v);
    }
    // back-substitute so each leading bit occurs in exactly one vector
    std::sort(basis.begin(), basis.end(), std::greater<>());
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < i; ++j) {
            std::uint32_t lead = 1u << (31 - std::countl_zero(basis[i]));
            if (basis[j] & lead) basis[j] ^= basis[i];
        }
    return basis;
}

namespace {

// Row echelon on augmented rows (value, tag); returns pivot column per row.
struct Echelon {
    std::vector<std::uint32_t> rows;  // matrix rows
    std::vector<std::uint32_t> aug;   // parallel augmented data
    std::vector<int> pivot_col;
};

Echelon echelon(const Matrix& m, const std::vector<std::uint32_t>& aug_in) {
    Echelon e;
    e.rows = m.row;
    e.aug = aug_in;
    e.pivot_col.assign(e.rows.size(), -1);
    size_t r = 0;
    for (int c = 0; c < m.cols && r < e.rows.size(); ++c) {
        size_t p = r;
        while (p < e.rows.size() && !((e.rows[p] >> c) & 1u)) ++p;
        if (p == e.rows.size()) continue;
        std::swap(e.rows[r], e.rows[p]);
        std::swap(e.aug[r], e.aug[p]);
        for (size_t i = 0; i < e.rows.size(); ++i)
            if (i != r && ((e.rows[i] >> c) & 1u)) {
                e.rows[i] ^= e.rows[r];
                e.aug[i] ^= e.aug[r];
            }
        e.pivot_col[r] = c;
        ++r;
    }
    e.rows.resize(r);
    e.aug.resize(r);
    e.pivot_col.resize(r);
    return e;
}

}  // namespace

int rank(const Matrix& m) {
    Echelon e = echelon(m, std::vector<std::uint32_t>(m.row.size(), 0u));
    return static_cast<int>(e.rows.size());
}

std::vector<std::uint32_t> nullspace(const Matrix& m) {
    Echelon e = echelon(m, std::vector<std::uint32_t>(m.row.size(), 0u));
    std::vector<int> pivot_of_col(static_cast<size_t>(m.cols), -1);
    for (size_t r = 0; r < e.pivot_col.size(); ++r) pivot_of_col[static_cast<size_t>(e.pivot_col[r])] = static_cast<int>(r);
    std::vector<std::uint32_t> basis;
    for (int c = 0; c < m.cols; ++c) {
        if (pivot_of_col[static_cast<size_t>(c)] >= 0) continue;  // pivot column
        std::uint32_t v = 1u << c;
        for (size_t r = 0; r < e.rows.size(); ++r)
            if ((e.rows[r] >> c) & 1u) v |= 1u << e.pivot_col[r];
        basis.push_back(v);
    }
    return reduce_basis(std::move(basis));
}

std::optional<std::uint32_t> solve(const Matrix& m, std::uint32_t y) {
    std::vector<std::uint32_t> aug(m.row.size());
    for (size_t r = 0; r < m.row.size(); ++r) aug[r] = (y >> r) & 1u;
    Echelon e = echelon(m, aug);
    std::uint32_t x = 0;
    for (size_t r = 0; r < e.rows.size(); ++r)
        if (e.aug[r]) x |= 1u << e.pivot_col[r];
    // rows eliminated to zero must have zero rhs
    if (m.apply(x) != y) return std::nullopt;
    return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows != m.cols) return std::nullopt;
    std::vector<std::uint32_t> aug(static_cast<size_t>(m.rows));
    for (int r = 0; r < m.rows; ++r) aug[static_cast<size_t>(r)] = 1u << r;
    Echelon e = echelon(m, aug);
    if (static_cast<int>(e.rows.size()) != m.rows) return std::nullopt;
    Matrix inv = Matrix::zero(m.rows, m.cols);
    for (size_t r = 0; r < e.rows.size(); ++r) inv.row[static_cast<size_t>(e.pivot_col[r])] = e.aug[r];
    return inv;
}

}  // namespace ppform::f2
