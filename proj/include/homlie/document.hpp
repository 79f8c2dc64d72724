#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "homlie/classify.hpp"
#include "homlie/identity.hpp"

namespace homlie {

using json = nlohmann::ordered_json;

struct AlgebraDocument {
    HomAlgebra algebra;
    std::optional<FamilyAlgebra> family;  // set when the algebra has the family shape
};

json scalar_to_json(const Scalar& s, Field f);
Scalar scalar_from_json(const json& j, Field f, const std::string& where);
json vector_to_json(const Vector& v, Field f);
json matrix_to_json(const Matrix& m, Field f);
Matrix matrix_from_json(const json& j, Field f, const std::string& where);

// Accepts a document or a report wrapping one under "document".
// Field precedence: the document's "field", then fallback. Throws InputError
// with the offending JSON path or the line of a syntax error.
AlgebraDocument parse_document(const std::string& text, std::optional<Field> fallback = std::nullopt);
AlgebraDocument parse_document_json(const json& j, std::optional<Field> fallback = std::nullopt);

json document_to_json(const HomAlgebra& a);  // explicit form, brackets in increasing order
json document_to_json(const FamilyAlgebra& f);  // family shorthand

json hnf_to_json(const HnfResult& r, Field f);
json canonical_to_json(const CanonicalForm& cf, Field f);
json class_report_to_json(const ClassReport& r, Field f);
json subspace_to_json(const Subspace& s, Field f);

}  // namespace homlie
