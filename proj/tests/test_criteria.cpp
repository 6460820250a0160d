#include <doctest.h>

#include "ppform/criteria.hpp"
#include "ppform/json_io.hpp"
#include "ppform/rng.hpp"

using namespace ppform;

namespace {
const FieldCtx& f4() { static FieldCtx c(FieldSpec{1, 2, {}}); return c; }
const FieldCtx& f8() { static FieldCtx c(FieldSpec{1, 3, {}}); return c; }
const FieldCtx& f16() { static FieldCtx c(FieldSpec{1, 4, {}}); return c; }
const FieldCtx& f64() { static FieldCtx c(FieldSpec{2, 3, {}}); return c; }
}  // namespace

TEST_CASE("oracle profile") {
    MapProfile p = oracle_profile(f4(), 1, LinPoly::identity(2));
    CHECK(p.is_permutation());  // Tr(x^3) vanishes on F_4
    CHECK(!oracle_profile(f8(), 1, LinPoly::zero()).is_permutation());
    CHECK(oracle_profile(f64(), 1, LinPoly::monomial(0x3a, 1, 6)).is_permutation());
}

TEST_CASE("odd theorem criterion") {
    // F_8, L = a x: never a permutation for any a
    for (Elt a = 0; a < 8; ++a) {
        LinPoly L = LinPoly::monomial(a, 0, 3);
        CHECK(!pp_odd(f8(), L).is_permutation());
        CHECK(!oracle_profile(f8(), 1, L).is_permutation());
    }
    CHECK(!pp_odd(f8(), LinPoly::zero()).is_permutation());
    CHECK(pp_odd(f64(), LinPoly::monomial(0x3a, 1, 6)).is_permutation());
    CHECK_THROWS(pp_odd(f4(), LinPoly::identity(2)));
}

TEST_CASE("quotient restatement agrees with the theorem") {
    for (Elt a = 0; a < 8; ++a)
        for (int k = 0; k < 3; ++k)
            for (Elt b = 0; b < 8; ++b)
                for (int l = 0; l < 3; ++l) {
                    LinPoly L({{k, a}, {l, b}}, 3);
                    if (L.is_zero()) continue;
                    CHECK(pp_odd(f8(), L).is_permutation() == pp_odd_quotient(f8(), L).is_permutation());
                }
    CHECK(!pp_odd_quotient(f8(), LinPoly::zero()).is_permutation());
}

TEST_CASE("general A reduces to A = 1") {
    for (Elt A = 1; A < 8; ++A)
        for (Elt a = 0; a < 8; ++a)
            for (int k = 0; k < 3; ++k) {
                LinPoly L = LinPoly::monomial(a, k, 3);
                if (L.is_zero()) continue;
                CHECK(pp_odd(f8(), A, L).is_permutation() == oracle_profile(f8(), A, L).is_permutation());
            }
}

TEST_CASE("odd N-to-1 remark") {
    CHECK(n_to_1_odd(f64(), LinPoly::monomial(0x3a, 1, 6)) == 1);
    int nontrivial = 0;
    for (Elt a = 0; a < 8; ++a)
        for (int k = 0; k < 3; ++k)
            for (Elt b = 0; b < 8; ++b)
                for (int l = 0; l < 3; ++l) {
                    LinPoly L({{k, a}, {l, b}}, 3);
                    if (L.is_zero()) continue;
                    auto N = n_to_1_odd(f8(), L);
                    if (!N) continue;
                    MapProfile p = oracle_profile(f8(), 1, L);
                    REQUIRE(p.is_N_to_1.has_value());
                    CHECK(*p.is_N_to_1 == *N);
                    if (*N > 1) ++nontrivial;
                }
    CHECK(nontrivial > 0);
}

TEST_CASE("binomial kernel cardinalities") {
    CHECK(binomial_kernel_card(f8(), 1, 0, 0, 1) == 1);  // L = x
    // L = x + x^2 over F_8: a+b = 0, d = 1 = m, Tr(a^{-1}) = 1 -> q^{r-1} = 1
    CHECK(binomial_kernel_card(f8(), 1, 0, 1, 1) == 1);
    CHECK_THROWS_AS(binomial_kernel_card(f8(), 0, 0, 0, 1), std::invalid_argument);
    // every in-hypothesis binomial over F_8 and F_64: formula consistent with direct
    // computation (a mismatch would raise ConsistencyError inside the call)
    for (Elt a = 0; a < 8; ++a)
        for (int k = 0; k < 3; ++k)
            for (Elt b = 0; b < 8; ++b)
                for (int l = 0; l < 3; ++l) {
                    if (LinPoly({{k, a}, {l, b}}, 3).is_zero()) continue;
                    CHECK_NOTHROW((void)binomial_kernel_card(f8(), a, k, b, l));
                }
    for (int t = 0; t < 2000; ++t) {
        CounterRng rng(6, static_cast<std::uint64_t>(t));
        Elt a = rng.next_elt(f64()), b = rng.next_elt(f64());
        int k = rng.next_exponent(f64()), l = rng.next_exponent(f64());
        if (LinPoly({{k, a}, {l, b}}, 6).is_zero()) continue;
        CHECK_NOTHROW((void)binomial_kernel_card(f64(), a, k, b, l));
    }
}

TEST_CASE("odd binomial corollary") {
    // b = 0, k = 1 over F_64: permutation iff a in F_4 \ F_2
    for (Elt a : f64().subfield_elements(1)) {
        if (a == 0) continue;
        Verdict v = binomial_pp_odd(f64(), a, 1, 0, 0);
        CHECK(v.is_permutation() == (a != 1));
        Verdict w = binomial_pp_odd(f64(), a, 0, 0, 0);
        CHECK(!w.is_permutation());  // s = gcd(-1,2) = 1, a^3 = 1 always
    }
    // q = 2: monomials never permute
    for (Elt a = 1; a < 8; ++a)
        for (int k = 0; k < 3; ++k) CHECK(!binomial_pp_odd(f8(), a, k, 0, 0).is_permutation());
    // verdict equals oracle on all in-scope F_8 binomials (cross-check against
    // pp_odd is built in; a clause misreading would raise ConsistencyError)
    for (Elt a = 0; a < 8; ++a)
        for (int k = 0; k < 3; ++k)
            for (Elt b = 0; b < 8; ++b)
                for (int l = 0; l < 3; ++l) {
                    if (LinPoly({{k, a}, {l, b}}, 3).is_zero()) continue;
                    CHECK_NOTHROW((void)binomial_pp_odd(f8(), a, k, b, l));
                }
}

TEST_CASE("monomial clause exponent reading") {
    // the clause reads (q-1)/(2^s-1); the variant (q-1)/2^{s-1} is not even an
    // integer once s > 1 because q-1 is odd
    for (int m : {2, 3}) {
        std::uint64_t q = 1ull << m;
        for (int s = 2; s <= m; ++s)
            if (m % s == 0) CHECK((q - 1) % (1ull << (s - 1)) != 0);
        CHECK((q - 1) % ((1ull << 1) - 1) == 0);
    }
    // resolved reading validated against the oracle across all F_4-coefficient
    // monomials over F_64 (twists k = 0..5)
    for (Elt a : f64().subfield_elements(1))
        for (int k = 0; k < 6 && a != 0; ++k) {
            Verdict v = binomial_pp_odd(f64(), a, k, 0, 0);
            CHECK(v.is_permutation() == oracle_profile(f64(), 1, LinPoly::monomial(a, k, 6)).is_permutation());
        }
}

TEST_CASE("trinomial criterion for n = 3") {
    TrinomialResult id = trinomial_n3(f8(), 1, 0, 0, 0);
    CHECK(id.rank == 3);
    CHECK(id.ker_card == 1);
    CHECK(id.verdict.is_permutation() == oracle_profile(f8(), 1, LinPoly::identity(3)).is_permutation());

    TrinomialResult r = trinomial_n3(f8(), 1, 1, 0, 0);  // L = x + x^2, L(1) = 0
    CHECK(r.trace_kernel_card == 1);                     // Tr(1+1+1) = 1 != 0

    for (Elt a = 0; a < 8; ++a)
        for (Elt b = 0; b < 8; ++b)
            for (Elt c = 0; c < 8; ++c) {
                if (!(a | b | c)) continue;
                TrinomialResult t = trinomial_n3(f8(), a, b, c, 0);
                LinPoly L({{0, a}, {1, b}, {2, c}}, 3);
                CHECK(t.verdict.is_permutation() == oracle_profile(f8(), 1, L).is_permutation());
            }
    for (int t = 0; t < 1000; ++t) {
        CounterRng rng(8, static_cast<std::uint64_t>(t));
        Elt a = rng.next_elt(f64()), b = rng.next_elt(f64()), c = rng.next_elt(f64());
        int k = static_cast<int>(rng.next() % 2);
        if (!(a | b | c)) continue;
        CHECK_NOTHROW((void)trinomial_n3(f64(), a, b, c, k));  // internal cross-checks
    }
    CHECK_THROWS(trinomial_n3(f4(), 1, 0, 0, 0));
}

TEST_CASE("ell-lambda construction") {
    // anchor: lambda = x^2, ell = x over F_8 emits Tr(x^3+x)+x^2, i.e. L = x + x^4
    Construction c = construct_ell_lambda(f8(), LinPoly::monomial(1, 1, 3), LinPoly::identity(3));
    REQUIRE(c.verdict.is_permutation());
    REQUIRE(c.emitted.size() == 1);
    CHECK(c.emitted[0] == LinPoly({{0, 1}, {2, 1}}, 3));
    CHECK(oracle_profile(f8(), 1, c.emitted[0]).is_permutation());
    // lambda = x fails the half-trace hypothesis once Tr(x)^{1/2} != Tr(x) (m >= 2)
    Construction bad = construct_ell_lambda(f64(), LinPoly::identity(6), LinPoly::identity(6));
    CHECK(bad.verdict.kind == VerdictKind::hypotheses_not_met);
    CHECK(bad.emitted.empty());
    // non-permutation ell gate
    Construction bad2 = construct_ell_lambda(f8(), LinPoly::monomial(1, 1, 3), LinPoly::zero());
    CHECK(bad2.verdict.kind == VerdictKind::hypotheses_not_met);
}

TEST_CASE("compose constructions") {
    LinPoly wit({{0, 1}, {2, 1}}, 3);  // PP witness over F_8 from the anchor
    REQUIRE(pp_odd(f8(), wit).is_permutation());
    Construction idc = construct_compose(f8(), wit, LinPoly::identity(3), ComposeMode::thm_fixed_trace);
    REQUIRE(idc.emitted.size() == 2);
    CHECK(idc.emitted[0] == wit);
    CHECK(idc.emitted[1] == wit);
    // sweep lambdas, verify every emission against the oracle
    int emitted = 0;
    for (Elt a = 0; a < 8; ++a)
        for (int k = 0; k < 3; ++k)
            for (Elt b = 0; b < 8; ++b) {
                LinPoly lam({{k, a}, {1, b}}, 3);
                for (ComposeMode mode : {ComposeMode::prop_zero_trace, ComposeMode::thm_fixed_trace}) {
                    Construction c = construct_compose(f8(), wit, lam, mode);
                    for (const LinPoly& P : c.emitted) {
                        ++emitted;
                        CHECK(oracle_profile(f8(), 1, P).is_permutation());
                    }
                }
            }
    CHECK(emitted > 0);
}

TEST_CASE("affine variant construction") {
    LinPoly wit({{0, 1}, {2, 1}}, 3);
    Construction z = construct_affine_variants(f8(), wit, LinPoly::zero());
    REQUIRE(z.emitted.size() == 2);
    CHECK(z.emitted[0] == wit);
    CHECK(z.emitted[1] == wit);
    int emitted = 0, gated = 0;
    for (Elt a = 0; a < 8; ++a)
        for (int k = 0; k < 3; ++k) {
            Construction c = construct_affine_variants(f8(), wit, LinPoly::monomial(a, k, 3));
            if (c.verdict.kind == VerdictKind::hypotheses_not_met) ++gated;
            for (const LinPoly& P : c.emitted) {
                ++emitted;
                CHECK(oracle_profile(f8(), 1, P).is_permutation());
            }
        }
    CHECK(emitted > 0);
    CHECK(gated > 0);  // some lambda makes x + Tr(lambda'(x)) non-bijective
}

TEST_CASE("even theorem criterion") {
    CHECK(pp_even(f4(), 1, LinPoly::identity(2)).is_permutation());
    // A = t: A^{(q^n-1)/(q+1)} = t != 1, never a permutation
    for (Elt a = 1; a < 4; ++a) {
        CHECK(!pp_even(f4(), 0x2, LinPoly::monomial(a, 0, 2)).is_permutation());
        CHECK(!oracle_profile(f4(), 0x2, LinPoly::monomial(a, 0, 2)).is_permutation());
    }
    for (Elt a = 0; a < 16; ++a)
        for (int k = 0; k < 4; ++k) {
            LinPoly L = LinPoly::monomial(a, k, 4);
            if (L.is_zero()) continue;
            CHECK(pp_even(f16(), 1, L).is_permutation() == oracle_profile(f16(), 1, L).is_permutation());
        }
    CHECK_THROWS(pp_even(f8(), 1, LinPoly::identity(3)));
    CHECK_THROWS(pp_even(f4(), 0, LinPoly::identity(2)));
}

TEST_CASE("even N-to-1 remark") {
    CHECK(n_to_1_even(f16(), LinPoly::identity(4)) == 1);
    LinPoly L({{0, 1}, {2, 1}}, 4);  // x + x^4 over F_16
    auto N = n_to_1_even(f16(), L);
    if (N) {
        MapProfile p = oracle_profile(f16(), 1, L);
        REQUIRE(p.is_N_to_1.has_value());
        CHECK(*p.is_N_to_1 == *N);
    }
    int confirmed = 0;
    for (Elt a = 0; a < 16; ++a)
        for (int k = 0; k < 4; ++k)
            for (Elt b = 0; b < 16; ++b) {
                LinPoly B({{k, a}, {1, b}}, 4);
                if (B.is_zero()) continue;
                auto n = n_to_1_even(f16(), B);
                if (!n) continue;
                MapProfile p = oracle_profile(f16(), 1, B);
                REQUIRE(p.is_N_to_1.has_value());
                CHECK(*p.is_N_to_1 == *n);
                if (*n > 1) ++confirmed;
            }
    CHECK(confirmed > 0);
}

TEST_CASE("even binomial proposition and corollary") {
    Verdict idp = binomial_even(f4(), 1, 0, 0, 1, BinomialEvenMode::proposition);
    CHECK(idp.is_permutation());  // identity L, inclusion holds with N = 1
    // clause truth must equal the direct inclusion test on every F_16 pair
    // (a mismatch raises ConsistencyError inside the call)
    for (Elt a = 0; a < 16; ++a)
        for (int k = 0; k < 4; ++k)
            for (Elt b = 0; b < 16; ++b)
                for (int l = 0; l < 4; ++l) {
                    if (LinPoly({{k, a}, {l, b}}, 4).is_zero()) continue;
                    CHECK_NOTHROW((void)binomial_even(f16(), a, k, b, l, BinomialEvenMode::proposition));
                    Verdict v = binomial_even(f16(), a, k, b, l, BinomialEvenMode::corollary);
                    CHECK(v.is_permutation() ==
                          oracle_profile(f16(), 1, LinPoly({{k, a}, {l, b}}, 4)).is_permutation());
                }
    CHECK_THROWS_AS(binomial_even(f16(), 0, 0, 0, 1, BinomialEvenMode::corollary), std::invalid_argument);
}

TEST_CASE("inverse-coefficient criterion") {
    CHECK(inverse_criterion(f16(), LinPoly::identity(4)).is_permutation());
    Verdict sing = inverse_criterion(f16(), LinPoly({{0, 1}, {2, 1}}, 4));  // singular L
    CHECK(sing.kind == VerdictKind::not_injective);
    CHECK(!sing.trace.empty());
    CHECK(sing.trace[0].second == false);  // bijectivity gate
    for (int t = 0; t < 300; ++t) {
        CounterRng rng(77, static_cast<std::uint64_t>(t));
        LinPoly L = rng.next_bijective_linpoly(f16(), 3);
        // coefficient test, image test and the even theorem must agree (enforced
        // internally); verdict must match the oracle
        Verdict v = inverse_criterion(f16(), L);
        CHECK(v.is_permutation() == oracle_profile(f16(), 1, L).is_permutation());
    }
}

TEST_CASE("even lambda-derived permutations") {
    Construction c = lambda_even_derived(f16(), LinPoly::identity(4), LinPoly::monomial(1, 1, 4));
    REQUIRE(c.emitted.size() == 3);  // lambda, L(lambda), lambda(L)
    for (const LinPoly& P : c.emitted) CHECK(oracle_profile(f16(), 1, P).is_permutation());
    // identity lambda: derived polynomials collapse to the originals
    Construction idc = lambda_even_derived(f16(), LinPoly::identity(4), LinPoly::identity(4));
    REQUIRE(idc.emitted.size() == 3);
    CHECK(idc.emitted[1] == LinPoly::identity(4));
    // find a bijective lambda with lambda(F_4) != F_4: first family must be skipped
    bool found = false;
    for (int t = 0; t < 500 && !found; ++t) {
        CounterRng rng(13, static_cast<std::uint64_t>(t));
        LinPoly lam = rng.next_bijective_linpoly(f16(), 3);
        if (map_subspace(f16(), lam, f16().subfield(2)) == f16().subfield(2)) continue;
        found = true;
        Construction d = lambda_even_derived(f16(), LinPoly::identity(4), lam);
        for (const LinPoly& P : d.emitted) CHECK(P != lam);
    }
    CHECK(found);
}

TEST_CASE("verdicts are invariant under modulus change") {
    FieldCtx alt(FieldSpec{1, 3, 0xD});
    for (Elt a = 0; a < 8; ++a)
        for (int k = 0; k < 3; ++k)
            for (Elt b = 0; b < 8; ++b)
                for (int l = 0; l < 3; ++l) {
                    LinPoly L({{k, a}, {l, b}}, 3);
                    if (L.is_zero()) continue;
                    // counts must agree map-by-map only up to relabeling; compare verdict
                    // against each context's own oracle instead
                    CHECK(pp_odd(f8(), L).is_permutation() == oracle_profile(f8(), 1, L).is_permutation());
                    CHECK(pp_odd(alt, L).is_permutation() == oracle_profile(alt, 1, L).is_permutation());
                }
}

TEST_CASE("verdict json round trip") {
    Verdict v = pp_even(f4(), 1, LinPoly::identity(2));
    auto j = verdict_to_json(v, true);
    CHECK(j["kind"] == "permutation");
    CHECK(j["rule"] == "even-theorem");
    CHECK(j["oracle"]["agrees"] == true);
    LinPoly L({{0, 0x3}, {2, 1}}, 4);
    CHECK(linpoly_from_json(linpoly_to_json(L), 4) == L);
    CHECK(elt_from_hex(elt_to_hex(0x1f)) == 0x1f);
}
