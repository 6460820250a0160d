#include <doctest.h>

#include "ppform/charsum.hpp"
#include "ppform/rng.hpp"

using namespace ppform;

namespace {
const FieldCtx& f4() { static FieldCtx c(FieldSpec{1, 2, {}}); return c; }
const FieldCtx& f8() { static FieldCtx c(FieldSpec{1, 3, {}}); return c; }
const FieldCtx& f16() { static FieldCtx c(FieldSpec{1, 4, {}}); return c; }
}  // namespace

TEST_CASE("direct sums") {
    CHECK(weil_direct(f8(), 0, 0).value == 8);
    for (Elt b = 1; b < 8; ++b) CHECK(weil_direct(f8(), 0, b).value == 0);  // orthogonality
    CHECK(weil_direct(f4(), 1, 0).value == 4);  // w^3 = 1 for w != 0, chi(1) = +1
}

TEST_CASE("odd closed form equals direct") {
    CHECK((f8().s11() == 4 || f8().s11() == -4));
    CHECK(weil_odd(f8(), 1, 1).value == f8().s11());
    int zeros = 0;
    for (Elt a = 1; a < 8; ++a)
        for (Elt b = 0; b < 8; ++b) {
            WeilSum w = weil_odd(f8(), a, b);
            CHECK(w.value == weil_direct(f8(), a, b).value);
            CHECK((w.value == 0 || w.value == 4 || w.value == -4));  // |S| = q^{(n+1)/2}
            if (w.value == 0) ++zeros;
        }
    CHECK(zeros > 0);  // the unsolvable branch occurs
    CHECK_THROWS(weil_odd(f8(), 0, 1));
    CHECK_THROWS(weil_odd(f4(), 1, 1));
}

TEST_CASE("odd closed form is independent of the Artin-Schreier solution") {
    // replacing beta by beta + kappa for kappa in ker(x^{q^2}+x) must not change the value
    for (Elt a = 1; a < 8; ++a)
        for (Elt b = 0; b < 8; ++b) {
            Elt c = *f8().root_q_plus_1(a);
            Elt bt = f8().mul(b, f8().inv(c));
            auto beta = f8().artin_schreier_solve(f8().add(bt, 1), 2);
            if (!beta) continue;
            long long ref = f8().chi(f8().add(f8().x_pow_q_plus_1(*beta), *beta)) * f8().s11();
            for (Elt kappa = 0; kappa < 8; ++kappa) {
                if (f8().add(f8().frobenius(kappa, 2), kappa) != 0) continue;
                Elt b2 = f8().add(*beta, kappa);
                CHECK(f8().chi(f8().add(f8().x_pow_q_plus_1(b2), b2)) * f8().s11() == ref);
            }
        }
}

TEST_CASE("even closed form equals direct") {
    CHECK(weil_even(f4(), 1, 0).value == 4);  // chi(0) * (-2)^2
    WeilSum w = weil_even(f4(), 0x2, 0);
    CHECK(w.value == -2);  // branch 2, beta = 0, (-q)^{n/2}
    CHECK(w.branch == WeilBranch::even_nonresidue);
    for (Elt a = 1; a < 4; ++a)
        for (Elt b = 0; b < 4; ++b) CHECK(weil_even(f4(), a, b).value == weil_direct(f4(), a, b).value);
    bool saw_subfield = false, saw_nonresidue = false, saw_fallback = false;
    for (Elt a = 1; a < 16; ++a)
        for (Elt b = 0; b < 16; ++b) {
            WeilSum s = weil_even(f16(), a, b);
            CHECK(s.value == weil_direct(f16(), a, b).value);
            if (s.branch == WeilBranch::even_subfield) saw_subfield = true;
            if (s.branch == WeilBranch::even_nonresidue) saw_nonresidue = true;
            if (s.branch == WeilBranch::even_fallback) saw_fallback = true;
        }
    CHECK(saw_subfield);
    CHECK(saw_nonresidue);
    CHECK(saw_fallback);  // a outside both covered branches exists over F_16
    CHECK_THROWS(weil_even(f8(), 1, 0));
    CHECK_THROWS(weil_even(f4(), 0, 0));
}

TEST_CASE("closed dispatch handles a = 0") {
    CHECK(weil_closed(f8(), 0, 0).value == 8);
    CHECK(weil_closed(f8(), 0, 3).value == 0);
}

TEST_CASE("root-count identity") {
    // Tr(x^3) vanishes identically on F_4, so A=1, L=x is the identity map
    CHECK(root_count(f4(), 1, LinPoly::identity(2), RootCountMethod::direct) == 1);
    CHECK(root_count(f4(), 1, LinPoly::identity(2), RootCountMethod::charsum) == 1);
    CHECK(root_count(f8(), 1, LinPoly::zero(), RootCountMethod::direct) ==
          root_count(f8(), 1, LinPoly::zero(), RootCountMethod::charsum));
    for (int t = 0; t < 100; ++t) {
        CounterRng rng(41, static_cast<std::uint64_t>(t));
        LinPoly L8 = rng.next_linpoly(f8(), 3), L16 = rng.next_linpoly(f16(), 3);
        Elt A8 = rng.next_nonzero(f8()), A16 = rng.next_nonzero(f16());
        CHECK(root_count(f8(), A8, L8, RootCountMethod::direct) == root_count(f8(), A8, L8, RootCountMethod::charsum));
        CHECK(root_count(f16(), A16, L16, RootCountMethod::direct) ==
              root_count(f16(), A16, L16, RootCountMethod::charsum));
    }
}
