#include "ppform/charsum.hpp"

#include <stdexcept>

namespace ppform {

WeilSum weil_direct(const FieldCtx& ctx, Elt a, Elt b) {
    long long s = 0;
    for (std::uint64_t w = 0; w < ctx.order(); ++w) {
        Elt we = static_cast<Elt>(w);
        s += ctx.chi(ctx.add(ctx.mul(a, ctx.x_pow_q_plus_1(we)), ctx.mul(b, we)));
    }
    return {s, WeilBranch::direct};
}

WeilSum weil_odd(const FieldCtx& ctx, Elt a, Elt b) {
    if (ctx.n() % 2 == 0) throw std::domain_error("weil_odd: n must be odd");
    if (a == 0) throw std::domain_error("weil_odd: a must be nonzero");
    // S(a,b) = S(1, b c^{-1}) with c the unique (q+1)-th root of a
    Elt c = *ctx.root_q_plus_1(a);
    Elt bt = ctx.mul(b, ctx.inv(c));
    auto beta = ctx.artin_schreier_solve(ctx.add(bt, 1), 2);
    if (!beta) return {0, WeilBranch::odd_zero};
    long long v = ctx.chi(ctx.add(ctx.x_pow_q_plus_1(*beta), *beta)) * ctx.s11();
    return {v, WeilBranch::odd_solvable};
}

WeilSum weil_even(const FieldCtx& ctx, Elt a, Elt b) {
    if (ctx.n() % 2 == 1) throw std::domain_error("weil_even: n must be even");
    if (a == 0) throw std::domain_error("weil_even: a must be nonzero");
    int half = ctx.n() / 2;
    auto neg_q_pow = [&](int e) {
        long long v = 1;
        for (int i = 0; i < e; ++i) v *= -static_cast<long long>(ctx.q());
        return v;
    };
    if (ctx.in_subfield(a, 1)) {
        auto beta = ctx.artin_schreier_solve(b, 2);
        if (!beta) return {0, WeilBranch::even_subfield};
        long long v = ctx.chi(ctx.mul(ctx.inv(a), ctx.x_pow_q_plus_1(*beta))) * neg_q_pow(half + 1);
        return {v, WeilBranch::even_subfield};
    }
    std::uint64_t N = ctx.order() - 1;
    std::uint64_t qp1 = ctx.q() + 1;
    if (ctx.pow(a, N / qp1) != 1) {
        // unique beta with a^{q^{n-1}} beta^{q^{n-1}} + a beta^q = b
        Elt aq = ctx.frobenius(a, ctx.m() * (ctx.n() - 1));
        std::vector<std::uint32_t> cols(static_cast<size_t>(ctx.mn()));
        for (int j = 0; j < ctx.mn(); ++j) {
            Elt e = 1u << j;
            cols[static_cast<size_t>(j)] =
                ctx.add(ctx.mul(aq, ctx.frobenius(e, ctx.m() * (ctx.n() - 1))), ctx.mul(a, ctx.frobenius(e, ctx.m())));
        }
        auto beta = f2::solve(f2::Matrix::from_columns(ctx.mn(), cols), b);
        if (!beta) throw std::logic_error("weil_even: expected unique beta");
        long long v = ctx.chi(ctx.mul(a, ctx.x_pow_q_plus_1(static_cast<Elt>(*beta)))) * neg_q_pow(half);
        return {v, WeilBranch::even_nonresidue};
    }
    WeilSum s = weil_direct(ctx, a, b);
    s.branch = WeilBranch::even_fallback;
    return s;
}

WeilSum weil_closed(const FieldCtx& ctx, Elt a, Elt b) {
    if (a == 0) {
        long long v = (b == 0) ? static_cast<long long>(ctx.order()) : 0;
        return {v, WeilBranch::direct};
    }
    return ctx.n() % 2 == 1 ? weil_odd(ctx, a, b) : weil_even(ctx, a, b);
}

long long root_count(const FieldCtx& ctx, Elt A, const LinPoly& L, RootCountMethod method) {
    if (method == RootCountMethod::direct) {
        long long count = 0;
        for (std::uint64_t x = 0; x < ctx.order(); ++x) {
            Elt xe = static_cast<Elt>(x);
            Elt v = ctx.add(ctx.trace(ctx.mul(A, ctx.x_pow_q_plus_1(xe))), eval(ctx, L, xe));
            if (v == 0) ++count;
        }
        return count;
    }
    // q^{-n} sum_u S(A Tr(u), L'(u))
    LinPoly Lp = adjoint(ctx, L);
    long long acc = 0;
    for (std::uint64_t u = 0; u < ctx.order(); ++u) {
        Elt ue = static_cast<Elt>(u);
        Elt a = ctx.mul(A, ctx.trace(ue));
        acc += weil_closed(ctx, a, eval(ctx, Lp, ue)).value;
    }
    long long qn = static_cast<long long>(ctx.order());
    if (acc % qn != 0) throw std::logic_error("root_count: character-sum identity not divisible by q^n");
    return acc / qn;
}

}  // namespace ppform
