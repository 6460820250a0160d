#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppform/f2linalg.hpp"

// Arithmetic in the binary tower F_{2^{mn}} >= F_{q^n} >= F_q with q = 2^m.
// Elements are mn-bit coefficient vectors in the polynomial basis
// (bit i = coefficient of X^i), reduced mod a fixed irreducible modulus.

namespace ppform {

using Elt = std::uint32_t;

inline constexpr int kDefaultCap = 24;  // desk-scale limit on mn
inline constexpr int kTableCap = 20;    // log/antilog tables built up to here

struct FieldSpec {
    int m = 1;
    int n = 1;
    std::optional<std::uint32_t> modulus;

    // "m=<int>,n=<int>[,mod=0x<hex>]"
    static FieldSpec parse(const std::string& s);
    std::string to_string() const;
};

// F_2-subspace of F_{q^n}, kept as a reduced basis.
struct Subspace {
    std::vector<std::uint32_t> basis;  // reduced, descending leading bits

    static Subspace from_vectors(std::vector<std::uint32_t> vecs) { return Subspace{f2::reduce_basis(std::move(vecs))}; }
    static Subspace zero() { return Subspace{}; }
    static Subspace full(int mn);

    int dim() const { return static_cast<int>(basis.size()); }
    bool contains(std::uint32_t x) const;
    bool contains(const Subspace& other) const;
    bool operator==(const Subspace& other) const { return basis == other.basis; }
    std::size_t size() const { return std::size_t{1} << dim(); }
    std::vector<std::uint32_t> elements() const;  // all 2^dim elements
};

Subspace intersect(const Subspace& a, const Subspace& b);

enum class Pairing { absolute, q_level };

class FieldCtx {
public:
    explicit FieldCtx(FieldSpec spec, int cap = kDefaultCap);

    const FieldSpec& spec() const { return spec_; }
    int m() const { return spec_.m; }
    int n() const { return spec_.n; }
    int mn() const { return mn_; }
    std::uint64_t q() const { return std::uint64_t{1} << spec_.m; }
    std::uint64_t order() const { return std::uint64_t{1} << mn_; }  // |F_{q^n}|
    std::uint32_t modulus() const { return modulus_; }
    Elt generator() const { return generator_; }
    bool has_tables() const { return !log_.empty(); }
    long long s11() const;  // S(1,1), cached at construction (odd n only)

    Elt add(Elt a, Elt b) const { return a ^ b; }
    Elt mul(Elt a, Elt b) const;
    Elt sqr(Elt a) const;
    Elt pow(Elt a, std::uint64_t e) const;
    Elt inv(Elt a) const;

    // x^{2^k}, k reduced mod mn (k may be negative); k = mn-1 is x^{1/2}
    Elt frobenius(Elt x, long long k) const;
    // Tr_k: F_{q^n} -> F_{q^k}, requires k | n
    Elt trace_to(Elt x, int k) const;
    Elt trace(Elt x) const { return trace_to(x, 1); }
    // absolute trace to F_2, as a bit
    int abs_trace(Elt x) const { return f2::parity(x & abs_trace_mask_); }
    // canonical additive character, (-1)^{abs_trace(x)}
    int chi(Elt x) const { return abs_trace(x) ? -1 : 1; }

    bool in_subfield(Elt x, int k) const { return frobenius(x, static_cast<long long>(spec_.m) * k) == x; }
    std::vector<Elt> subfield_elements(int k) const;  // all of F_{q^k}
    Subspace subfield(int k) const;

    // a^{num/den} == b^{num/den}, with 0^e = 0 for e > 0
    bool power_residue_equal(Elt a, Elt b, std::uint64_t num, std::uint64_t den) const;

    // annihilator of w under the trace form <beta, alpha> = Tr(beta*alpha)
    Subspace perp(const Subspace& w, Pairing pairing = Pairing::absolute) const;

    // some beta with beta^{q^j} + beta = b, or nullopt
    std::optional<Elt> artin_schreier_solve(Elt b, int j) const;

    // c with c^{q+1} = A; unique for odd n, table-based for even n
    std::optional<Elt> root_q_plus_1(Elt A) const;

    Elt x_pow_q_plus_1(Elt x) const { return mul(frobenius(x, spec_.m), x); }

private:
    FieldSpec spec_;
    int mn_;
    int cap_;
    std::uint32_t modulus_;
    Elt generator_ = 0;
    std::vector<Elt> sqr_basis_;        // e_j^2 for each basis bit
    std::uint32_t abs_trace_mask_ = 0;  // bit j = abs_trace(e_j)
    std::vector<std::uint32_t> log_;    // element -> exponent (nonzero elts)
    std::vector<Elt> antilog_;          // exponent -> element
    std::uint64_t q_plus_1_inv_ = 0;    // (q+1)^{-1} mod (q^n - 1), odd n
    long long s11_ = 0;
    bool s11_valid_ = false;

    void require_tables(const char* what) const;
};

// Irreducibility of a degree-deg polynomial over F_2 (bit i = coeff of X^i).
bool is_irreducible(std::uint64_t poly, int deg);
std::uint32_t smallest_irreducible(int deg);

}  // namespace ppform
