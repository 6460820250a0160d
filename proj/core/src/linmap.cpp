#include "ppform/linmap.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ppform {

LinPoly::LinPoly(std::vector<std::pair<int, Elt>> terms, int mn) {
    std::map<int, Elt> acc;
    for (auto [j, c] : terms) {
        int jj = j % mn;
        if (jj < 0) jj += mn;
        acc[jj] ^= c;
    }
    for (auto [j, c] : acc)
        if (c) terms_.emplace_back(j, c);
}

std::optional<Elt> LinPoly::coeff(int j) const {
    for (auto [e, c] : terms_)
        if (e == j) return c;
    return std::nullopt;
}

bool LinPoly::is_qk_linear(int m, int k) const {
    for (auto [j, c] : terms_)
        if (j % (m * k) != 0) return false;
    return true;
}

Elt eval(const FieldCtx& ctx, const LinPoly& L, Elt x) {
    Elt acc = 0;
    int prev = 0;
    Elt y = x;
    for (auto [j, c] : L.terms()) {
        y = ctx.frobenius(y, j - prev);
        prev = j;
        acc ^= ctx.mul(c, y);
    }
    return acc;
}

LinPoly add(const FieldCtx& ctx, const LinPoly& L, const LinPoly& M) {
    std::vector<std::pair<int, Elt>> terms(L.terms());
    terms.insert(terms.end(), M.terms().begin(), M.terms().end());
    return LinPoly(std::move(terms), ctx.mn());
}

LinPoly compose(const FieldCtx& ctx, const LinPoly& M, const LinPoly& L) {
    // M(L(x)): term cM x^{2^jM} applied to cL x^{2^jL} gives cM cL^{2^jM} x^{2^{jM+jL}}
    std::vector<std::pair<int, Elt>> terms;
    for (auto [jm, cm] : M.terms())
        for (auto [jl, cl] : L.terms())
            terms.emplace_back(jm + jl, ctx.mul(cm, ctx.frobenius(cl, jm)));
    return LinPoly(std::move(terms), ctx.mn());
}

LinPoly adjoint(const FieldCtx& ctx, const LinPoly& L) {
    std::vector<std::pair<int, Elt>> terms;
    for (auto [j, c] : L.terms()) terms.emplace_back(ctx.mn() - j, ctx.frobenius(c, ctx.mn() - j));
    return LinPoly(std::move(terms), ctx.mn());
}

f2::Matrix to_matrix(const FieldCtx& ctx, const LinPoly& L) {
    std::vector<std::uint32_t> cols(static_cast<size_t>(ctx.mn()));
    for (int j = 0; j < ctx.mn(); ++j) cols[static_cast<size_t>(j)] = eval(ctx, L, 1u << j);
    return f2::Matrix::from_columns(ctx.mn(), cols);
}

Subspace kernel(const FieldCtx& ctx, const LinPoly& L) { return Subspace{f2::nullspace(to_matrix(ctx, L))}; }

Subspace image(const FieldCtx& ctx, const LinPoly& L) {
    std::vector<std::uint32_t> cols(static_cast<size_t>(ctx.mn()));
    for (int j = 0; j < ctx.mn(); ++j) cols[static_cast<size_t>(j)] = eval(ctx, L, 1u << j);
    return Subspace::from_vectors(std::move(cols));
}

LinPoly linpoly_from_matrix(const FieldCtx& ctx, const f2::Matrix& m) {
    // Moore interpolation: solve sum_j c_j b_i^{2^j} = m(b_i) over the basis
    // b_i = e_i, a linear system over F_{q^n}
    int k = ctx.mn();
    std::vector<std::vector<Elt>> a(static_cast<size_t>(k), std::vector<Elt>(static_cast<size_t>(k + 1)));
    for (int i = 0; i < k; ++i) {
        Elt b = 1u << i;
        for (int j = 0; j < k; ++j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = ctx.frobenius(b, j);
        a[static_cast<size_t>(i)][static_cast<size_t>(k)] = m.apply(b);
    }
    // Gaussian elimination over the field
    for (int col = 0, row = 0; col < k && row < k; ++col, ++row) {
        int p = row;
        while (p < k && a[static_cast<size_t>(p)][static_cast<size_t>(col)] == 0) ++p;
        if (p == k) throw std::logic_error("Moore matrix of a basis must be invertible");
        std::swap(a[static_cast<size_t>(row)], a[static_cast<size_t>(p)]);
        Elt pivinv = ctx.inv(a[static_cast<size_t>(row)][static_cast<size_t>(col)]);
        for (int c = col; c <= k; ++c)
            a[static_cast<size_t>(row)][static_cast<size_t>(c)] = ctx.mul(a[static_cast<size_t>(row)][static_cast<size_t>(c)], pivinv);
        for (int r = 0; r < k; ++r) {
            if (r == row) continue;
            Elt f = a[static_cast<size_t>(r)][static_cast<size_t>(col)];
            if (!f) continue;
            for (int c = col; c <= k; ++c)
                a[static_cast<size_t>(r)][static_cast<size_t>(c)] ^= ctx.mul(f, a[static_cast<size_t>(row)][static_cast<size_t>(c)]);
        }
    }
    std::vector<std::pair<int, Elt>> terms;
    for (int j = 0; j < k; ++j)
        if (Elt c = a[static_cast<size_t>(j)][static_cast<size_t>(k)]) terms.emplace_back(j, c);
    return LinPoly(std::move(terms), k);
}

std::optional<LinPoly> inverse(const FieldCtx& ctx, const LinPoly& L) {
    auto minv = f2::inverse(to_matrix(ctx, L));
    if (!minv) return std::nullopt;
    return linpoly_from_matrix(ctx, *minv);
}

QDecomposition q_decompose(const FieldCtx& ctx, const LinPoly& L) {
    QDecomposition dec;
    dec.values.assign(static_cast<size_t>(ctx.m()), 0);
    for (auto [j, c] : L.terms()) dec.values[static_cast<size_t>(j % ctx.m())] ^= c;
    return dec;
}

SubfieldMap build_ell(const FieldCtx& ctx, const QDecomposition& dec, bool with_sqrt_term) {
    int m = ctx.m();
    for (Elt v : dec.values)
        if (!ctx.in_subfield(v, 1)) throw std::domain_error("build_ell: some L_i(1) not in F_q");
    SubfieldMap out;
    std::vector<Elt> fq = ctx.subfield_elements(1);
    std::vector<Elt> seen;
    for (Elt x : fq) {
        Elt y = 0;
        for (int i = 0; i < m; ++i) {
            // exponent 2^{m-i} acting within F_q
            y ^= ctx.frobenius(ctx.mul(dec.values[static_cast<size_t>(i)], x), (m - i) % m);
        }
        if (with_sqrt_term) y ^= ctx.frobenius(x, m - 1 == 0 ? 0 : m - 1);
        out.graph.emplace_back(x, y);
        seen.push_back(y);
    }
    std::sort(seen.begin(), seen.end());
    out.is_permutation = std::adjacent_find(seen.begin(), seen.end()) == seen.end();
    return out;
}

QuotientAction quotient_action(const FieldCtx& ctx, const LinPoly& L) {
    QuotientAction qa;
    Subspace kt = ker_trace(ctx);
    Subspace img = map_subspace(ctx, L, kt);
    qa.stable = kt.contains(img);
    if (!qa.stable) return qa;
    std::vector<Elt> seen;
    for (auto [v, rep] : trace_sections(ctx)) {
        Elt w = ctx.trace(eval(ctx, L, rep));
        qa.induced.emplace_back(v, w);
        seen.push_back(w);
    }
    std::sort(seen.begin(), seen.end());
    qa.automorphism = std::adjacent_find(seen.begin(), seen.end()) == seen.end();
    return qa;
}

LinPoly trace_poly(const FieldCtx& ctx, int k) {
    if (k < 1 || ctx.n() % k != 0) throw std::invalid_argument("trace_poly: k must divide n");
    std::vector<std::pair<int, Elt>> terms;
    for (int i = 0; i < ctx.n() / k; ++i) terms.emplace_back(ctx.m() * k * i, 1);
    return LinPoly(std::move(terms), ctx.mn());
}

Subspace ker_trace(const FieldCtx& ctx, int k) { return kernel(ctx, trace_poly(ctx, k)); }

LinPoly precompose_scale(const FieldCtx& ctx, const LinPoly& L, Elt c_inv) {
    std::vector<std::pair<int, Elt>> terms;
    for (auto [j, c] : L.terms()) terms.emplace_back(j, ctx.mul(c, ctx.frobenius(c_inv, j)));
    return LinPoly(std::move(terms), ctx.mn());
}

Subspace map_subspace(const FieldCtx& ctx, const LinPoly& L, const Subspace& w) {
    std::vector<std::uint32_t> vecs;
    for (std::uint32_t b : w.basis) vecs.push_back(eval(ctx, L, b));
    return Subspace::from_vectors(std::move(vecs));
}

std::vector<std::pair<Elt, Elt>> trace_sections(const FieldCtx& ctx) {
    std::vector<Elt> fq = ctx.subfield_elements(1);
    std::map<Elt, Elt> reps;
    for (std::uint64_t x = 0; x < ctx.order() && reps.size() < fq.size(); ++x) {
        Elt v = ctx.trace(static_cast<Elt>(x));
        reps.emplace(v, static_cast<Elt>(x));
    }
    std::vector<std::pair<Elt, Elt>> out(reps.begin(), reps.end());
    return out;
}

}  // namespace ppform
