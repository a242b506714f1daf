#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "rbu3/cases.hpp"
#include "rbu3/catalog.hpp"
#include "rbu3/groebner.hpp"
#include "rbu3/rb.hpp"
#include "rbu3/transform.hpp"

namespace rbu3 {

using Json = nlohmann::json;

/// Version of every JSON document written by this library.
inline constexpr int kSchemaVersion = 1;

struct OperatorFile {
  POperator op;
  std::vector<std::string> params;
};

Json operator_to_json(const POperator& op, const std::vector<std::string>& params);
Json operator_to_json(const QOperator& op);
/// Missing images are zero. Throws ParseError or Error on malformed input.
OperatorFile operator_from_json(const Json& j);

Json order_to_json(const MonomialOrder& ord);
MonomialOrder order_from_json(const Json& j, std::size_t nvars);

Json system_to_json(const PolySystem& sys);
PolySystem system_from_json(const Json& j);
/// The system plus "basis", "reduced" and "stats".
Json gb_to_json(const GroebnerBasis& gb);

Json map_to_json(const AlgebraMap& m);
AlgebraMap map_from_json(const Json& j);
Json witness_to_json(const Witness& w);
Witness witness_from_json(const Json& j);

Json entry_to_json(const CatalogEntry& e);
CatalogEntry entry_from_json(const Json& j);
Json catalog_to_json(const std::vector<CatalogEntry>& entries);
std::vector<CatalogEntry> catalog_from_json(const Json& j);
Json verify_report_to_json(const VerifyReport& r);

Json case_spec_to_json(const CaseSpec& c);
CaseSpec case_spec_from_json(const Json& j);
Json case_report_to_json(const CaseReport& r);

Json read_json_file(const std::string& path);
/// Pretty-printed with two-space indent and a trailing newline.
void write_json_file(const std::string& path, const Json& j);
std::string dump(const Json& j);

}  // namespace rbu3
