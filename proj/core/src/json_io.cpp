#include "ppform/json_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace ppform {

std::string elt_to_hex(Elt x) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%x", x);
    return buf;
}

Elt elt_from_hex(const std::string& s) {
    size_t pos = 0;
    unsigned long v = std::stoul(s, &pos, 16);
    if (pos != s.size()) throw std::invalid_argument("bad element encoding: " + s);
    return static_cast<Elt>(v);
}

nlohmann::json linpoly_to_json(const LinPoly& L) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto [j, c] : L.terms()) arr.push_back({j, elt_to_hex(c)});
    return arr;
}

LinPoly linpoly_from_json(const nlohmann::json& j, int mn) {
    if (!j.is_array()) throw std::invalid_argument("polynomial must be an array of [exponent, coeff] pairs");
    std::vector<std::pair<int, Elt>> terms;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2) throw std::invalid_argument("polynomial term must be [exponent, coeff]");
        terms.emplace_back(t[0].get<int>(), elt_from_hex(t[1].get<std::string>()));
    }
    return LinPoly(std::move(terms), mn);
}

std::string verdict_kind_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::permutation: return "permutation";
        case VerdictKind::n_to_1: return "n_to_1";
        case VerdictKind::not_injective: return "not_injective";
        case VerdictKind::hypotheses_not_met: return "hypotheses_not_met";
    }
    return "?";
}

nlohmann::json verdict_to_json(const Verdict& v) {
    nlohmann::json out;
    out["kind"] = verdict_kind_name(v.kind);
    if (v.kind == VerdictKind::n_to_1 || v.kind == VerdictKind::permutation) out["N"] = v.N;
    out["rule"] = v.rule;
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& [h, ok] : v.trace) trace.push_back({{"hypothesis", h}, {"holds", ok}});
    out["trace"] = trace;
    return out;
}

nlohmann::json verdict_to_json(const Verdict& v, bool oracle_agrees) {
    nlohmann::json out = verdict_to_json(v);
    out["oracle"] = {{"checked", true}, {"agrees", oracle_agrees}};
    return out;
}

}  // namespace ppform
