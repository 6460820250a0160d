#include "ppform/field.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ppform {

namespace {

int poly_deg(std::uint64_t p) { return p ? 63 - std::countl_zero(p) : -1; }

std::uint64_t poly_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t f) {
    std::uint64_t acc = 0;
    int df = poly_deg(f);
    while (b) {
        if (b & 1) acc ^= a;
        b >>= 1;
        a <<= 1;
        if (poly_deg(a) == df) a ^= f;
    }
    return acc;
}

std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
    while (b) {
        while (a && poly_deg(a) >= poly_deg(b)) a ^= b << (poly_deg(a) - poly_deg(b));
        std::swap(a, b);
    }
    return a;
}

// x^{2^k} mod f by repeated squaring
std::uint64_t poly_frob(std::uint64_t x, int k, std::uint64_t f) {
    for (int i = 0; i < k; ++i) x = poly_mulmod(x, x, f);
    return x;
}

std::vector<int> prime_factors(std::uint64_t v) {
    std::vector<int> ps;
    for (std::uint64_t p = 2; p * p <= v; ++p)
        if (v % p == 0) {
            ps.push_back(static_cast<int>(p));
            while (v % p == 0) v /= p;
        }
    if (v > 1) ps.push_back(static_cast<int>(v));
    return ps;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t mod) {
    long long t = 0, nt = 1, r = static_cast<long long>(mod), nr = static_cast<long long>(a % mod);
    while (nr) {
        long long qq = r / nr;
        long long tmp = t - qq * nt;
        t = nt;
        nt = tmp;
        tmp = r - qq * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw std::domain_error("not invertible");
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<long long>(mod) : t);
}

}  // namespace

bool is_irreducible(std::uint64_t poly, int deg) {
    if (deg < 1 || poly_deg(poly) != deg) return false;
    if (deg == 1) return true;
    if (!(poly & 1)) return false;  // root at 0
    if (poly_frob(2, deg, poly) != 2) return false;  // x^{2^deg} != x
    for (int p : prime_factors(static_cast<std::uint64_t>(deg))) {
        std::uint64_t xp = poly_frob(2, deg / p, poly);
        if (poly_gcd(xp ^ 2u, poly) != 1) return false;
    }
    return true;
}

std::uint32_t smallest_irreducible(int deg) {
    for (std::uint64_t f = std::uint64_t{1} << deg; f < std::uint64_t{1} << (deg + 1); ++f)
        if (is_irreducible(f, deg)) return static_cast<std::uint32_t>(f);
    throw std::logic_error("no irreducible polynomial found");
}

FieldSpec FieldSpec::parse(const std::string& s) {
    FieldSpec spec;
    bool have_m = false, have_n = false;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto eq = part.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad field spec: " + s);
        std::string key = part.substr(0, eq), val = part.substr(eq + 1);
        if (key == "m") {
            spec.m = std::stoi(val);
            have_m = true;
        } else if (key == "n") {
            spec.n = std::stoi(val);
            have_n = true;
        } else if (key == "mod") {
            spec.modulus = static_cast<std::uint32_t>(std::stoul(val, nullptr, 16));
        } else {
            throw std::invalid_argument("bad field spec key: " + key);
        }
    }
    if (!have_m || !have_n) throw std::invalid_argument("field spec needs m and n: " + s);
    return spec;
}

std::string FieldSpec::to_string() const {
    std::ostringstream os;
    os << "m=" << m << ",n=" << n;
    if (modulus) os << ",mod=0x" << std::hex << *modulus;
    return os.str();
}

Subspace Subspace::full(int mn) {
    std::vector<std::uint32_t> b;
    for (int i = mn - 1; i >= 0; --i) b.push_back(1u << i);
    return Subspace{std::move(b)};
}

bool Subspace::contains(std::uint32_t x) const {
    for (std::uint32_t b : basis)
        if (std::uint32_t lead = 1u << (31 - std::countl_zero(b)); x & lead) x ^= b;
    return x == 0;
}

bool Subspace::contains(const Subspace& other) const {
    return std::all_of(other.basis.begin(), other.basis.end(), [&](std::uint32_t v) { return contains(v); });
}

std::vector<std::uint32_t> Subspace::elements() const {
    std::vector<std::uint32_t> out{0};
    for (std::uint32_t b : basis) {
        size_t sz = out.size();
        for (size_t i = 0; i < sz; ++i) out.push_back(out[i] ^ b);
    }
    return out;
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    // x in span(S) iff f.x = 0 for every f in the dot-product annihilator of S
    auto annihilator = [](const Subspace& s) {
        f2::Matrix m = f2::Matrix::zero(s.dim(), 32);
        for (int r = 0; r < s.dim(); ++r) m.row[static_cast<size_t>(r)] = s.basis[static_cast<size_t>(r)];
        return f2::nullspace(m);
    };
    std::vector<std::uint32_t> rows = annihilator(a);
    std::vector<std::uint32_t> rows_b = annihilator(b);
    rows.insert(rows.end(), rows_b.begin(), rows_b.end());
    f2::Matrix m = f2::Matrix::zero(static_cast<int>(rows.size()), 32);
    m.row = std::move(rows);
    return Subspace{f2::nullspace(m)};
}

FieldCtx::FieldCtx(FieldSpec spec, int cap) : spec_(spec), mn_(spec.m * spec.n), cap_(cap) {
    if (spec.m < 1 || spec.n < 1) throw std::invalid_argument("m and n must be positive");
    if (mn_ > cap_) throw std::invalid_argument("mn exceeds desk-scale cap");
    if (spec_.modulus) {
        modulus_ = *spec_.modulus;
        if (!is_irreducible(modulus_, mn_)) throw std::invalid_argument("modulus is reducible or has wrong degree");
    } else {
        modulus_ = smallest_irreducible(mn_);
        spec_.modulus = modulus_;
    }

    sqr_basis_.resize(static_cast<size_t>(mn_));
    for (int j = 0; j < mn_; ++j)
        sqr_basis_[static_cast<size_t>(j)] =
            static_cast<Elt>(poly_mulmod(std::uint64_t{1} << j, std::uint64_t{1} << j, modulus_));

    for (int j = 0; j < mn_; ++j) {
        Elt acc = 0, y = 1u << j;
        for (int i = 0; i < mn_; ++i) {
            acc ^= y;
            y = sqr(y);
        }
        if (acc > 1) throw std::logic_error("absolute trace not in F_2");
        abs_trace_mask_ |= acc << j;
    }

    std::uint64_t N = order() - 1;
    std::vector<int> ps = prime_factors(N);
    for (Elt g = 1;; ++g) {
        bool primitive = true;
        for (int p : ps)
            if (pow(g, N / static_cast<std::uint64_t>(p)) == 1) {
                primitive = false;
                break;
            }
        if (primitive) {
            generator_ = g;
            break;
        }
    }

    if (mn_ <= kTableCap) {
        log_.assign(order(), 0);
        antilog_.assign(N, 0);
        Elt x = 1;
        for (std::uint64_t e = 0; e < N; ++e) {
            antilog_[e] = x;
            log_[x] = static_cast<std::uint32_t>(e);
            x = static_cast<Elt>(poly_mulmod(x, generator_, modulus_));
        }
        if (x != 1) throw std::logic_error("generator has wrong order");
    }

    if (spec_.n % 2 == 1) {
        std::uint64_t qp1 = q() + 1;
        if (std::gcd(qp1, N) != 1) throw std::logic_error("gcd(q+1, q^n-1) != 1 failed for odd n");
        q_plus_1_inv_ = mod_inverse(qp1, N);
        long long s = 0;
        for (std::uint64_t w = 0; w < order(); ++w) {
            Elt we = static_cast<Elt>(w);
            s += chi(add(x_pow_q_plus_1(we), we));
        }
        s11_ = s;
        s11_valid_ = true;
    }
}

long long FieldCtx::s11() const {
    if (!s11_valid_) throw std::domain_error("S(1,1) is cached for odd n only");
    return s11_;
}

Elt FieldCtx::mul(Elt a, Elt b) const {
    if (a == 0 || b == 0) return 0;
    if (has_tables()) {
        std::uint64_t N = order() - 1;
        std::uint64_t e = log_[a] + log_[b];
        if (e >= N) e -= N;
        return antilog_[e];
    }
    return static_cast<Elt>(poly_mulmod(a, b, modulus_));
}

Elt FieldCtx::sqr(Elt a) const {
    Elt r = 0;
    while (a) {
        int j = std::countr_zero(a);
        a &= a - 1;
        r ^= sqr_basis_[static_cast<size_t>(j)];
    }
    return r;
}

Elt FieldCtx::pow(Elt a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    if (has_tables()) {
        std::uint64_t N = order() - 1;
        return antilog_[(static_cast<std::uint64_t>(log_[a]) * (e % N)) % N];
    }
    Elt r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Elt FieldCtx::inv(Elt a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    if (has_tables()) {
        std::uint64_t N = order() - 1;
        return antilog_[(N - log_[a]) % N];
    }
    return pow(a, order() - 2);
}

Elt FieldCtx::frobenius(Elt x, long long k) const {
    k %= mn_;
    if (k < 0) k += mn_;
    for (long long i = 0; i < k; ++i) x = sqr(x);
    return x;
}

Elt FieldCtx::trace_to(Elt x, int k) const {
    if (k < 1 || spec_.n % k != 0) throw std::invalid_argument("trace_to: k must divide n");
    Elt acc = 0, y = x;
    int step = spec_.m * k;
    for (int i = 0; i < spec_.n / k; ++i) {
        acc ^= y;
        y = frobenius(y, step);
    }
    return acc;
}

std::vector<Elt> FieldCtx::subfield_elements(int k) const {
    std::vector<Elt> out = subfield(k).elements();
    std::sort(out.begin(), out.end());
    return out;
}

Subspace FieldCtx::subfield(int k) const {
    if (k < 1 || spec_.n % k != 0) throw std::invalid_argument("subfield: k must divide n");
    // fixed points of Frobenius^{mk}: kernel of x^{q^k} + x
    f2::Matrix m = f2::Matrix::zero(mn_, mn_);
    std::vector<std::uint32_t> cols(static_cast<size_t>(mn_));
    for (int j = 0; j < mn_; ++j) cols[static_cast<size_t>(j)] = frobenius(1u << j, spec_.m * k) ^ (1u << j);
    return Subspace{f2::nullspace(f2::Matrix::from_columns(mn_, cols))};
}

bool FieldCtx::power_residue_equal(Elt a, Elt b, std::uint64_t num, std::uint64_t den) const {
    if (den == 0 || num % den != 0) throw std::invalid_argument("power_residue_equal: den must divide num");
    std::uint64_t e = num / den;
    if (e == 0) throw std::invalid_argument("power_residue_equal: zero exponent");
    auto pe = [&](Elt x) { return x == 0 ? Elt{0} : pow(x, e); };
    return pe(a) == pe(b);
}

Subspace FieldCtx::perp(const Subspace& w, Pairing pairing) const {
    std::vector<std::uint32_t> rows;
    for (std::uint32_t beta : w.basis) {
        if (pairing == Pairing::absolute) {
            std::uint32_t row = 0;
            for (int j = 0; j < mn_; ++j) row |= static_cast<std::uint32_t>(abs_trace(mul(beta, 1u << j))) << j;
            rows.push_back(row);
        } else {
            // Tr_q(beta*alpha) = 0: one F_2 constraint per result bit
            std::vector<std::uint32_t> bit_rows(static_cast<size_t>(mn_), 0);
            for (int j = 0; j < mn_; ++j) {
                Elt v = trace_to(mul(beta, 1u << j), 1);
                for (int r = 0; r < mn_; ++r) bit_rows[static_cast<size_t>(r)] |= ((v >> r) & 1u) << j;
            }
            rows.insert(rows.end(), bit_rows.begin(), bit_rows.end());
        }
    }
    if (rows.empty()) return Subspace::full(mn_);
    f2::Matrix m = f2::Matrix::zero(static_cast<int>(rows.size()), mn_);
    m.row = std::move(rows);
    return Subspace{f2::nullspace(m)};
}

std::optional<Elt> FieldCtx::artin_schreier_solve(Elt b, int j) const {
    std::vector<std::uint32_t> cols(static_cast<size_t>(mn_));
    for (int c = 0; c < mn_; ++c) cols[static_cast<size_t>(c)] = frobenius(1u << c, static_cast<long long>(spec_.m) * j) ^ (1u << c);
    auto sol = f2::solve(f2::Matrix::from_columns(mn_, cols), b);
    if (!sol) return std::nullopt;
    return static_cast<Elt>(*sol);
}

std::optional<Elt> FieldCtx::root_q_plus_1(Elt A) const {
    if (A == 0) throw std::domain_error("root_q_plus_1: A must be nonzero");
    std::uint64_t N = order() - 1;
    if (spec_.n % 2 == 1) return pow(A, q_plus_1_inv_);
    require_tables("root_q_plus_1 for even n");
    std::uint64_t qp1 = q() + 1;
    std::uint64_t la = log_[A];
    if (la % qp1 != 0) return std::nullopt;  // A^{(q^n-1)/(q+1)} != 1
    return antilog_[(la / qp1) % N];
}

void FieldCtx::require_tables(const char* what) const {
    if (!has_tables()) throw std::domain_error(std::string(what) + " requires log tables (mn <= 20)");
}

}  // namespace ppform
