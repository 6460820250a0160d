#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ppform/field.hpp"

// Algebra of 2-linear polynomials sum_j c_j x^{2^j} over F_{q^n}: evaluation,
// composition, adjoints, F_2-matrix realization, kernels/images/inverses, and
// the decomposition into q-linear layers L = sum_i L_i(x^{2^i}).

namespace ppform {

class LinPoly {
public:
    LinPoly() = default;
    // terms (j, c_j); exponents are reduced mod mn, equal exponents combine,
    // zero coefficients drop
    LinPoly(std::vector<std::pair<int, Elt>> terms, int mn);

    static LinPoly zero() { return LinPoly{}; }
    static LinPoly identity(int mn) { return LinPoly({{0, 1}}, mn); }
    static LinPoly monomial(Elt c, int j, int mn) { return LinPoly({{j, c}}, mn); }

    const std::vector<std::pair<int, Elt>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::optional<Elt> coeff(int j) const;
    int term_count() const { return static_cast<int>(terms_.size()); }

    // c_j != 0 only when (m*k) | j, i.e. the map is q^k-linear
    bool is_qk_linear(int m, int k = 1) const;

    bool operator==(const LinPoly& other) const { return terms_ == other.terms_; }

private:
    std::vector<std::pair<int, Elt>> terms_;  // sorted by exponent, c != 0
};

// values[i] = L_i(1) = sum of c_j over j = i (mod m)
struct QDecomposition {
    std::vector<Elt> values;
};

// map on F_q given by its value table over the subfield elements
struct SubfieldMap {
    std::vector<std::pair<Elt, Elt>> graph;  // (x, f(x)) for x in F_q, x ascending
    bool is_permutation = false;
};

struct QuotientAction {
    bool stable = false;       // L(ker Tr) inside ker Tr
    bool automorphism = false;  // induced map on F_{q^n}/ker Tr bijective
    std::vector<std::pair<Elt, Elt>> induced;  // (v, g(v)) over v in F_q, via Tr
};

Elt eval(const FieldCtx& ctx, const LinPoly& L, Elt x);
LinPoly add(const FieldCtx& ctx, const LinPoly& L, const LinPoly& M);
// M(L(x))
LinPoly compose(const FieldCtx& ctx, const LinPoly& M, const LinPoly& L);
LinPoly adjoint(const FieldCtx& ctx, const LinPoly& L);

f2::Matrix to_matrix(const FieldCtx& ctx, const LinPoly& L);
Subspace kernel(const FieldCtx& ctx, const LinPoly& L);
Subspace image(const FieldCtx& ctx, const LinPoly& L);
std::optional<LinPoly> inverse(const FieldCtx& ctx, const LinPoly& L);

// recover polynomial coefficients of an F_2-linear map given by its matrix
LinPoly linpoly_from_matrix(const FieldCtx& ctx, const f2::Matrix& m);

QDecomposition q_decompose(const FieldCtx& ctx, const LinPoly& L);

// ell(x) = sum_i (values[i] x)^{2^{m-i}} (+ x^{2^{m-1}} when with_sqrt_term);
// requires every values[i] in F_q
SubfieldMap build_ell(const FieldCtx& ctx, const QDecomposition& dec, bool with_sqrt_term);

QuotientAction quotient_action(const FieldCtx& ctx, const LinPoly& L);

// Tr_k as a 2-linear polynomial: sum_i x^{q^{ki}}
LinPoly trace_poly(const FieldCtx& ctx, int k);

Subspace ker_trace(const FieldCtx& ctx, int k = 1);

// L(c^{-1} x) for the substitution x -> c^{-1} x (c nonzero)
LinPoly precompose_scale(const FieldCtx& ctx, const LinPoly& L, Elt c_inv);

Subspace map_subspace(const FieldCtx& ctx, const LinPoly& L, const Subspace& w);

// minimal (integer order) coset representative with Tr = v, for each v in F_q
std::vector<std::pair<Elt, Elt>> trace_sections(const FieldCtx& ctx);

}  // namespace ppform
