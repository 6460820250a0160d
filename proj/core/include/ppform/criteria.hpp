#pragma once

#include <map>
#include <optional>
#include <string>

#include "ppform/charsum.hpp"
#include "ppform/field.hpp"
#include "ppform/linmap.hpp"

// Permutation criteria for Tr(A x^{q+1}) + L(x), kernel-cardinality formulas,
// N-to-1 classification, and construction generators. Every closed form is
// cross-checked against a direct subspace/matrix computation; a mismatch
// raises ConsistencyError instead of preferring either side.

namespace ppform {

struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

enum class VerdictKind { permutation, n_to_1, not_injective, hypotheses_not_met };

struct Verdict {
    VerdictKind kind = VerdictKind::hypotheses_not_met;
    int N = 0;  // populated for n_to_1
    std::string rule;
    std::vector<std::pair<std::string, bool>> trace;

    bool is_permutation() const { return kind == VerdictKind::permutation; }
};

struct MapProfile {
    std::map<long long, long long> fibers;  // fiber size -> multiplicity (nonempty fibers)
    std::optional<long long> is_N_to_1;

    bool is_permutation() const { return is_N_to_1 && *is_N_to_1 == 1; }
};

// ground-truth fiber census of x -> Tr(A x^{q+1}) + L(x)
MapProfile oracle_profile(const FieldCtx& ctx, Elt A, const LinPoly& L);

// ---- odd n ----

Verdict pp_odd(const FieldCtx& ctx, const LinPoly& L);
Verdict pp_odd(const FieldCtx& ctx, Elt A, const LinPoly& L);  // reduces to A = 1

Verdict pp_odd_quotient(const FieldCtx& ctx, const LinPoly& L);
Verdict pp_odd_quotient(const FieldCtx& ctx, Elt A, const LinPoly& L);

// N = |ker Tr n ker L'| when ell permutes F_q, else nullopt
std::optional<long long> n_to_1_odd(const FieldCtx& ctx, const LinPoly& L);

// |ker Tr n ker L'| for L = a x^{2^k} + b x^{2^l} by the closed-form case
// table; nullopt when the hypotheses do not cover (a,k,b,l)
std::optional<long long> binomial_kernel_card(const FieldCtx& ctx, Elt a, int k, Elt b, int l);

Verdict binomial_pp_odd(const FieldCtx& ctx, Elt a, int k, Elt b, int l);

struct TrinomialResult {
    Verdict verdict;
    long long ker_card = 0;            // |ker L| = q^{3-r}
    long long trace_kernel_card = 0;   // |ker Tr n ker L'|
    int rank = 0;
};

// n = 3, L(x) = (a x + b x^q + c x^{q^2})^{2^k}
TrinomialResult trinomial_n3(const FieldCtx& ctx, Elt a, Elt b, Elt c, int k);

struct Construction {
    Verdict verdict;
    std::vector<LinPoly> emitted;  // PP witnesses L with Tr(x^{q+1}) + L(x) a permutation
};

// Tr(x^{q+1} + ell(x)) + lambda(x); ell given by coefficients over F_q
Construction construct_ell_lambda(const FieldCtx& ctx, const LinPoly& lambda, const LinPoly& ell);

enum class ComposeMode { prop_zero_trace, thm_fixed_trace };

// emits L(lambda(x)) and lambda(L(x)) variants
Construction construct_compose(const FieldCtx& ctx, const LinPoly& L, const LinPoly& lambda, ComposeMode mode);

// emits the two affine-shift variants derived from a PP witness L
Construction construct_affine_variants(const FieldCtx& ctx, const LinPoly& L, const LinPoly& lambda);

// ---- even n ----

Verdict pp_even(const FieldCtx& ctx, Elt A, const LinPoly& L);

// N = |ker L'| when ker(Tr_2 o L') is inside ker Tr, else nullopt
std::optional<long long> n_to_1_even(const FieldCtx& ctx, const LinPoly& L);

enum class BinomialEvenMode { proposition, corollary };

// proposition: the kernel-inclusion condition ker(Tr_2 o L') in ker Tr;
// corollary: full PP verdict
Verdict binomial_even(const FieldCtx& ctx, Elt a, int k, Elt b, int l, BinomialEvenMode mode);

// n even: criterion through the coefficients of L^{-1} and through F_q in L(F_{q^2})
Verdict inverse_criterion(const FieldCtx& ctx, const LinPoly& L);

// derived permutations from a PP witness and a bijective lambda
Construction lambda_even_derived(const FieldCtx& ctx, const LinPoly& L, const LinPoly& lambda);

// ---- helpers shared by rules, CLI and tests ----

// normalize Tr(A x^{q+1}) + L(x) to A = 1 via x -> alpha^{-1} x (odd n, or
// even n when A has a (q+1)-th root)
LinPoly normalize_to_unit_A(const FieldCtx& ctx, Elt A, const LinPoly& L);

Verdict verdict_from_profile(const MapProfile& p);

}  // namespace ppform
