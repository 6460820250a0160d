#pragma once

#include "ppform/field.hpp"
#include "ppform/linmap.hpp"

// Weil sums S(a,b) = sum_w chi(a w^{q+1} + b w), evaluated both by direct
// summation and by the Coulter closed forms, plus the character-sum identity
// counting roots of Tr(A x^{q+1}) + L(x).

namespace ppform {

enum class WeilBranch {
    direct,           // plain summation
    odd_solvable,     // odd n, Artin-Schreier equation solvable
    odd_zero,         // odd n, unsolvable => 0
    even_subfield,    // even n, a in F_q^*
    even_nonresidue,  // even n, a^{(q^n-1)/(q+1)} != 1
    even_fallback,    // even n, neither branch covered; computed directly
};

struct WeilSum {
    long long value = 0;
    WeilBranch branch = WeilBranch::direct;
};

WeilSum weil_direct(const FieldCtx& ctx, Elt a, Elt b);

// odd n, a != 0
WeilSum weil_odd(const FieldCtx& ctx, Elt a, Elt b);

// even n, a != 0
WeilSum weil_even(const FieldCtx& ctx, Elt a, Elt b);

// closed form with parity dispatch; a = 0 handled by orthogonality
WeilSum weil_closed(const FieldCtx& ctx, Elt a, Elt b);

enum class RootCountMethod { direct, charsum };

// number of roots of Tr(A x^{q+1}) + L(x) in F_{q^n}
long long root_count(const FieldCtx& ctx, Elt A, const LinPoly& L, RootCountMethod method);

}  // namespace ppform
