#pragma once

#include <cstdint>

#include "ppform/field.hpp"
#include "ppform/linmap.hpp"

// Counter-based deterministic sampling: every candidate index maps to the
// same values regardless of evaluation order, so sweeps are reproducible.

namespace ppform {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// stream of values keyed by (seed, index)
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t index) : state_(splitmix64(seed ^ splitmix64(index))) {}

    std::uint64_t next() { return state_ = splitmix64(state_); }

    Elt next_elt(const FieldCtx& ctx) { return static_cast<Elt>(next() & (ctx.order() - 1)); }

    Elt next_nonzero(const FieldCtx& ctx) {
        Elt x;
        do {
            x = next_elt(ctx);
        } while (x == 0);
        return x;
    }

    int next_exponent(const FieldCtx& ctx) { return static_cast<int>(next() % static_cast<std::uint64_t>(ctx.mn())); }

    // random 2-linear polynomial with up to max_terms monomials (possibly fewer
    // after exponent collisions or zero coefficients)
    LinPoly next_linpoly(const FieldCtx& ctx, int max_terms) {
        std::vector<std::pair<int, Elt>> terms;
        int t = 1 + static_cast<int>(next() % static_cast<std::uint64_t>(max_terms));
        for (int i = 0; i < t; ++i) terms.emplace_back(next_exponent(ctx), next_elt(ctx));
        return LinPoly(std::move(terms), ctx.mn());
    }

    LinPoly next_bijective_linpoly(const FieldCtx& ctx, int max_terms) {
        for (;;) {
            LinPoly L = next_linpoly(ctx, max_terms);
            if (kernel(ctx, L).dim() == 0) return L;
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace ppform
