// ppform: criteria, searches and cross-validation for Tr(Ax^{q+1}) + L(x)
// over F_{q^n}, q = 2^m. Subcommands: field-info, check, search, xval,
// construct. Output is JSONL (one record per line) or a CSV projection.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ppform/charsum.hpp"
#include "ppform/criteria.hpp"
#include "ppform/field.hpp"
#include "ppform/json_io.hpp"
#include "ppform/linmap.hpp"
#include "ppform/rng.hpp"

using nlohmann::json;
using namespace ppform;

namespace {

struct Sink {
    std::ostream* os = &std::cout;
    std::ofstream file;
    bool csv = false;
    std::vector<std::string> header;

    void open(const std::string& path, const std::string& format) {
        csv = format == "csv";
        if (!path.empty()) {
            file.open(path);
            if (!file) throw CLI::ValidationError("--out", "cannot open " + path);
            os = &file;
        }
    }

    static std::string csv_cell(const json& v) {
        std::string s = v.is_string() ? v.get<std::string>() : v.dump();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += '"';
            out += c;
        }
        return out + "\"";
    }

    void write(const json& rec) {
        if (!csv) {
            *os << rec.dump() << "\n";
            return;
        }
        if (header.empty()) {
            for (auto it = rec.begin(); it != rec.end(); ++it) header.push_back(it.key());
            for (size_t i = 0; i < header.size(); ++i) *os << (i ? "," : "") << header[i];
            *os << "\n";
        }
        for (size_t i = 0; i < header.size(); ++i)
            *os << (i ? "," : "") << (rec.contains(header[i]) ? csv_cell(rec.at(header[i])) : "");
        *os << "\n";
    }
};

bool verdict_agrees_oracle(const Verdict& v, const MapProfile& p) {
    switch (v.kind) {
        case VerdictKind::permutation: return p.is_permutation();
        case VerdictKind::n_to_1: return p.is_N_to_1 && *p.is_N_to_1 == v.N;
        case VerdictKind::not_injective: return !p.is_permutation();
        case VerdictKind::hypotheses_not_met: return true;  // no claim made
    }
    return false;
}

int cmd_field_info(const FieldSpec& spec, Sink& sink) {
    FieldCtx ctx(spec);
    json rec;
    rec["field"] = spec.to_string();
    rec["modulus"] = elt_to_hex(static_cast<Elt>(ctx.modulus()));
    rec["generator"] = elt_to_hex(ctx.generator());
    json lattice = json::array();
    for (int k = 1; k <= ctx.n(); ++k)
        if (ctx.n() % k == 0) lattice.push_back({{"k", k}, {"order", 1ull << (ctx.m() * k)}});
    rec["subfields"] = lattice;
    if (ctx.n() % 2 == 1) rec["S11"] = ctx.s11();
    sink.write(rec);
    return 0;
}

int cmd_check(const FieldCtx& ctx, Elt A, const LinPoly& L, bool oracle, bool all_rules, Sink& sink) {
    std::vector<Verdict> verdicts;
    if (ctx.n() % 2 == 1) {
        verdicts.push_back(pp_odd(ctx, A, L));
        if (all_rules) {
            verdicts.push_back(pp_odd_quotient(ctx, A, L));
            if (A == 1 && L.term_count() <= 2 && !L.is_zero()) {
                auto t = L.terms();
                Elt a = t[0].second, b = t.size() > 1 ? t[1].second : 0;
                int k = t[0].first, l = t.size() > 1 ? t[1].first : t[0].first;
                verdicts.push_back(binomial_pp_odd(ctx, a, k, b, l));
            }
        }
    } else {
        verdicts.push_back(pp_even(ctx, A, L));
        if (all_rules && A == 1) {
            verdicts.push_back(inverse_criterion(ctx, L));
            if (L.term_count() <= 2 && !L.is_zero()) {
                auto t = L.terms();
                Elt a = t[0].second, b = t.size() > 1 ? t[1].second : 0;
                int k = t[0].first, l = t.size() > 1 ? t[1].first : t[0].first;
                verdicts.push_back(binomial_even(ctx, a, k, b, l, BinomialEvenMode::corollary));
            }
        }
    }
    std::optional<MapProfile> prof;
    if (oracle) prof = oracle_profile(ctx, A, L);
    int disagreements = 0;
    for (const Verdict& v : verdicts) {
        json rec;
        rec["A"] = elt_to_hex(A);
        rec["L"] = linpoly_to_json(L);
        if (prof) {
            bool ok = verdict_agrees_oracle(v, *prof);
            if (!ok) ++disagreements;
            rec["verdict"] = verdict_to_json(v, ok);
        } else {
            rec["verdict"] = verdict_to_json(v);
        }
        sink.write(rec);
    }
    if (prof) {
        json rec;
        rec["A"] = elt_to_hex(A);
        rec["L"] = linpoly_to_json(L);
        Verdict ov = verdict_from_profile(*prof);
        rec["verdict"] = verdict_to_json(ov);
        sink.write(rec);
    }
    return disagreements ? 1 : 0;
}

struct Candidate {
    LinPoly L;
    json params;
};

int cmd_search(const FieldCtx& ctx, const std::string& shape, std::uint64_t seed, std::uint64_t trials,
               bool pp_only, Sink& sink) {
    std::uint64_t N = ctx.order();
    int mn = ctx.mn();
    std::uint64_t grid;
    if (shape == "monomial")
        grid = N * static_cast<std::uint64_t>(mn);
    else if (shape == "binomial")
        grid = N * N * static_cast<std::uint64_t>(mn) * static_cast<std::uint64_t>(mn);
    else if (shape == "trinomial-n3") {
        if (ctx.n() != 3) throw CLI::ValidationError("--shape", "trinomial-n3 requires n = 3");
        grid = N * N * N * static_cast<std::uint64_t>(ctx.m());
    } else
        throw CLI::ValidationError("--shape", "unknown shape " + shape);

    bool exhaustive = trials == 0;
    if (exhaustive && grid > 2'000'000)
        throw CLI::ValidationError("--trials", "grid of " + std::to_string(grid) + " candidates; pass --trials to sample");
    std::uint64_t count = exhaustive ? grid : trials;

    auto candidate = [&](std::uint64_t idx) -> Candidate {
        std::uint64_t key = idx;
        if (!exhaustive) {
            CounterRng rng(seed, idx);
            key = rng.next() % grid;
        }
        if (shape == "monomial") {
            Elt a = static_cast<Elt>(key % N);
            int k = static_cast<int>(key / N);
            return {LinPoly::monomial(a, k, mn), json{{"a", elt_to_hex(a)}, {"k", k}}};
        }
        if (shape == "binomial") {
            Elt a = static_cast<Elt>(key % N);
            key /= N;
            Elt b = static_cast<Elt>(key % N);
            key /= N;
            int k = static_cast<int>(key % mn);
            int l = static_cast<int>(key / mn);
            return {LinPoly({{k, a}, {l, b}}, mn), json{{"a", elt_to_hex(a)}, {"k", k}, {"b", elt_to_hex(b)}, {"l", l}}};
        }
        Elt a = static_cast<Elt>(key % N);
        key /= N;
        Elt b = static_cast<Elt>(key % N);
        key /= N;
        Elt c = static_cast<Elt>(key % N);
        int k = static_cast<int>(key / N);
        return {LinPoly({{k, a}, {k + ctx.m(), b}, {k + 2 * ctx.m(), c}}, mn),
                json{{"a", elt_to_hex(a)}, {"b", elt_to_hex(b)}, {"c", elt_to_hex(c)}, {"k", k}}};
    };

    int disagreements = 0;
    long long pp_found = 0;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        Candidate cand = candidate(idx);
        if (cand.L.is_zero()) continue;
        Verdict v = ctx.n() % 2 == 1 ? pp_odd(ctx, cand.L) : pp_even(ctx, 1, cand.L);
        bool oracle_ok = true;
        if (v.is_permutation()) {
            ++pp_found;
            oracle_ok = oracle_profile(ctx, 1, cand.L).is_permutation();
            if (!oracle_ok) ++disagreements;
        }
        if (pp_only && !v.is_permutation()) continue;
        json rec;
        rec["index"] = idx;
        rec["params"] = cand.params;
        rec["L"] = linpoly_to_json(cand.L);
        rec["verdict"] = v.is_permutation() ? verdict_to_json(v, oracle_ok) : verdict_to_json(v);
        sink.write(rec);
    }
    json summary;
    summary["summary"] = true;
    summary["candidates"] = count;
    summary["permutations"] = pp_found;
    summary["disagreements"] = disagreements;
    sink.write(summary);
    return disagreements ? 1 : 0;
}

const char* branch_name(WeilBranch b) {
    switch (b) {
        case WeilBranch::direct: return "direct";
        case WeilBranch::odd_solvable: return "odd_solvable";
        case WeilBranch::odd_zero: return "odd_zero";
        case WeilBranch::even_subfield: return "even_subfield";
        case WeilBranch::even_nonresidue: return "even_nonresidue";
        case WeilBranch::even_fallback: return "even_fallback";
    }
    return "?";
}

int cmd_xval(const FieldCtx& ctx, const std::string& target, std::uint64_t seed, std::uint64_t trials, Sink& sink) {
    long long checked = 0, failed = 0;
    if (target == "charsum") {
        auto one = [&](Elt a, Elt b) {
            long long direct = weil_direct(ctx, a, b).value;
            WeilSum closed = weil_closed(ctx, a, b);
            bool match = direct == closed.value;
            ++checked;
            if (!match) ++failed;
            json rec{{"a", elt_to_hex(a)}, {"b", elt_to_hex(b)},      {"direct", direct},
                     {"closed", closed.value}, {"branch", branch_name(closed.branch)}, {"match", match}};
            sink.write(rec);
        };
        if (trials == 0) {
            for (std::uint64_t a = 1; a < ctx.order(); ++a)
                for (std::uint64_t b = 0; b < ctx.order(); ++b) one(static_cast<Elt>(a), static_cast<Elt>(b));
        } else {
            for (std::uint64_t i = 0; i < trials; ++i) {
                CounterRng rng(seed, i);
                one(rng.next_nonzero(ctx), rng.next_elt(ctx));
            }
        }
    } else if (target == "criteria") {
        std::uint64_t n = trials == 0 ? 500 : trials;
        for (std::uint64_t i = 0; i < n; ++i) {
            CounterRng rng(seed, i);
            LinPoly L = rng.next_linpoly(ctx, 3);
            Verdict v = ctx.n() % 2 == 1 ? pp_odd(ctx, L) : pp_even(ctx, 1, L);
            MapProfile p = oracle_profile(ctx, 1, L);
            bool match = verdict_agrees_oracle(v, p);
            if (ctx.n() % 2 == 1 && match) match = pp_odd_quotient(ctx, L).is_permutation() == p.is_permutation();
            ++checked;
            if (!match) ++failed;
            json rec{{"L", linpoly_to_json(L)}, {"rule", v.rule}, {"verdict", verdict_kind_name(v.kind)}, {"match", match}};
            sink.write(rec);
        }
    } else if (target == "adjoint") {
        std::uint64_t n = trials == 0 ? 200 : trials;
        for (std::uint64_t i = 0; i < n; ++i) {
            CounterRng rng(seed, i);
            LinPoly L = rng.next_linpoly(ctx, 4), M = rng.next_linpoly(ctx, 4);
            LinPoly Lp = adjoint(ctx, L);
            bool match = adjoint(ctx, Lp) == L && adjoint(ctx, compose(ctx, M, L)) == compose(ctx, Lp, adjoint(ctx, M)) &&
                         kernel(ctx, L).dim() == kernel(ctx, Lp).dim() &&
                         kernel(ctx, Lp) == ctx.perp(image(ctx, L), Pairing::absolute);
            for (int x = 0; match && x < ctx.mn(); ++x)
                for (int y = 0; y < ctx.mn(); ++y) {
                    Elt al = 1u << x, be = 1u << y;
                    if (ctx.abs_trace(ctx.mul(al, eval(ctx, L, be))) != ctx.abs_trace(ctx.mul(eval(ctx, Lp, al), be))) {
                        match = false;
                        break;
                    }
                }
            ++checked;
            if (!match) ++failed;
            json rec{{"L", linpoly_to_json(L)}, {"match", match}};
            sink.write(rec);
        }
    } else {
        throw CLI::ValidationError("--target", "unknown target " + target);
    }
    json summary{{"summary", true}, {"target", target}, {"checked", checked}, {"failed", failed}};
    sink.write(summary);
    return failed ? 1 : 0;
}

int cmd_construct(const FieldCtx& ctx, const std::string& family, const LinPoly& lambda, const LinPoly& L,
                  const LinPoly& ell, const std::string& mode, Sink& sink) {
    Construction c;
    if (family == "ell-lambda") {
        if (ctx.n() % 2 == 0) throw CLI::ValidationError("--family", "ell-lambda requires odd n");
        c = construct_ell_lambda(ctx, lambda, ell);
    } else if (family == "compose") {
        if (ctx.n() % 2 == 0) throw CLI::ValidationError("--family", "compose requires odd n");
        c = construct_compose(ctx, L, lambda,
                              mode == "zero-trace" ? ComposeMode::prop_zero_trace : ComposeMode::thm_fixed_trace);
    } else if (family == "affine") {
        if (ctx.n() % 2 == 0) throw CLI::ValidationError("--family", "affine requires odd n");
        c = construct_affine_variants(ctx, L, lambda);
    } else if (family == "even-lambda") {
        if (ctx.n() % 2 == 1) throw CLI::ValidationError("--family", "even-lambda requires even n");
        c = lambda_even_derived(ctx, L, lambda);
    } else {
        throw CLI::ValidationError("--family", "unknown family " + family);
    }
    int disagreements = 0;
    json rec;
    rec["family"] = family;
    rec["verdict"] = verdict_to_json(c.verdict);
    json emitted = json::array();
    for (const LinPoly& P : c.emitted) {
        bool ok = oracle_profile(ctx, 1, P).is_permutation();
        if (!ok) ++disagreements;
        emitted.push_back({{"L", linpoly_to_json(P)}, {"oracle_permutation", ok}});
    }
    rec["emitted"] = emitted;
    sink.write(rec);
    return disagreements ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"criteria and searches for permutations Tr(Ax^{q+1}) + L(x) of F_{q^n}, q = 2^m"};
    app.require_subcommand(1);

    std::string field_spec, out_path, format = "jsonl";
    std::uint64_t seed = 0, trials = 0;
    auto add_common = [&](CLI::App* sub, bool need_field = true) {
        auto* f = sub->add_option("--field", field_spec, "field spec m=<int>,n=<int>[,mod=0x<hex>]");
        if (need_field) f->required();
        sub->add_option("--seed", seed, "seed for sampled sweeps");
        sub->add_option("--trials", trials, "sample count (0 = exhaustive/default)");
        sub->add_option("--format", format, "jsonl|csv")->check(CLI::IsMember({"jsonl", "csv"}));
        sub->add_option("--out", out_path, "output path (default stdout)");
    };

    auto* info = app.add_subcommand("field-info", "print modulus, generator, subfields, S(1,1)");
    add_common(info);

    std::string A_hex = "0x1", L_json, lambda_json, ell_json, shape = "binomial", target = "charsum",
                family, mode = "fixed-trace";
    bool oracle = false, all_rules = false, pp_only = false;

    auto* check = app.add_subcommand("check", "classify one Tr(Ax^{q+1}) + L(x) instance");
    add_common(check);
    check->add_option("--A", A_hex, "coefficient A as hex");
    check->add_option("--L", L_json, "L as JSON [[j,\"0x..\"],...]")->required();
    check->add_flag("--oracle", oracle, "run the exhaustive oracle and cross-check");
    check->add_flag("--all-rules", all_rules, "apply every applicable rule");

    auto* search = app.add_subcommand("search", "sweep a family of L for permutations");
    add_common(search);
    search->add_option("--shape", shape, "monomial|binomial|trinomial-n3")
        ->check(CLI::IsMember({"monomial", "binomial", "trinomial-n3"}));
    search->add_flag("--emit-pp-only", pp_only, "emit only permutation records");

    auto* xval = app.add_subcommand("xval", "cross-validate closed forms against direct computation");
    add_common(xval);
    xval->add_option("--target", target, "charsum|criteria|adjoint")
        ->check(CLI::IsMember({"charsum", "criteria", "adjoint"}));

    auto* construct = app.add_subcommand("construct", "derive permutations from hypothesis-checked inputs");
    add_common(construct);
    construct->add_option("--family", family, "ell-lambda|compose|affine|even-lambda")->required();
    construct->add_option("--lambda", lambda_json, "lambda as JSON");
    construct->add_option("--L", L_json, "L as JSON");
    construct->add_option("--ell", ell_json, "ell as JSON (F_q coefficients, exponents < m)");
    construct->add_option("--mode", mode, "compose mode: zero-trace|fixed-trace")
        ->check(CLI::IsMember({"zero-trace", "fixed-trace"}));

    CLI11_PARSE(app, argc, argv);

    try {
        FieldSpec spec = FieldSpec::parse(field_spec);
        Sink sink;
        sink.open(out_path, format);
        if (info->parsed()) return cmd_field_info(spec, sink);
        FieldCtx ctx(spec);
        auto parse_poly = [&](const std::string& s) {
            return s.empty() ? LinPoly::zero() : linpoly_from_json(json::parse(s), ctx.mn());
        };
        if (check->parsed()) return cmd_check(ctx, elt_from_hex(A_hex), parse_poly(L_json), oracle, all_rules, sink);
        if (search->parsed()) return cmd_search(ctx, shape, seed, trials, pp_only, sink);
        if (xval->parsed()) return cmd_xval(ctx, target, seed, trials, sink);
        if (construct->parsed())
            return cmd_construct(ctx, family, parse_poly(lambda_json), parse_poly(L_json), parse_poly(ell_json), mode, sink);
    } catch (const ConsistencyError& e) {
        std::cerr << "consistency error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
