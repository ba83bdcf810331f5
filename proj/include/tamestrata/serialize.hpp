#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "tamestrata/translate.hpp"

namespace ts {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

Json document(const std::string& kind, Json payload);
// Throws BadInput unless doc is a Document of the given kind.
const Json& payload_of(const Json& doc, const std::string& kind);
Json error_document(const std::string& name, const std::string& detail);

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

// Field elements are coefficient vectors. On input an integer (prime-field
// constant) or "w", "w^k", "ω", "ω^k" are also accepted.
Json coeff_to_json(const FqField& K, std::uint32_t c);
std::uint32_t coeff_from_json(const FqField& K, const Json& j);

Json tower_to_json(const Tower& T);
TowerPtr tower_from_json(const Json& j);

// {"level", "prec": [num, den], "terms": [[[num, den], coeff], ...]}.
Json series_to_json(const TameSeries& x);
// Accepts the object above, a bare term list, or a single term. When the
// input carries no precision, prec_ord (ord units) or the default is used.
TameSeries series_from_json(const TowerPtr& T, const Json& j, int level,
                            std::optional<Rational> prec_ord = std::nullopt);

Json clist_to_json(const CList& cs);
CList clist_from_json(const TowerPtr& T, const Json& j, std::optional<Rational> prec_ord = std::nullopt);

Json bk_to_json(const BKDatumSkeleton& bk);
BKDatumSkeleton bk_from_json(const Json& payload, std::optional<Rational> prec_ord = std::nullopt);
Json yu_to_json(const YuDatumSkeleton& yu);
YuDatumSkeleton yu_from_json(const Json& payload, std::optional<Rational> prec_ord = std::nullopt);

Json table_to_json(const FiltrationTable& t);
Json ledger_to_json(const Ledger& l);
Json minimality_to_json(const MinimalityReport& r);
Json ge1_to_json(const Ge1Report& r);
Json seq_to_json(const DefiningSeq& seq);
Json seq_report_to_json(const SeqReport& r);

}  // namespace ts
