#pragma once

#include <string>

#include <json.hpp>

#include "ppform/criteria.hpp"
#include "ppform/linmap.hpp"

// JSON encodings used by the CLI: elements as "0x<hex>", polynomials as
// [[j, "0x<hex>"], ...], verdicts as {kind, N?, rule, trace, oracle?}.

namespace ppform {

std::string elt_to_hex(Elt x);
Elt elt_from_hex(const std::string& s);

nlohmann::json linpoly_to_json(const LinPoly& L);
LinPoly linpoly_from_json(const nlohmann::json& j, int mn);

std::string verdict_kind_name(VerdictKind k);

// oracle_checked: append {checked, agrees} when the caller ran the oracle
nlohmann::json verdict_to_json(const Verdict& v);
nlohmann::json verdict_to_json(const Verdict& v, bool oracle_agrees);

}  // namespace ppform
