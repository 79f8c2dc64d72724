#include "homlie/document.hpp"

#include <set>

namespace homlie {

json scalar_to_json(const Scalar& s, Field f) {
    if (f == Field::Q) return s.re().get_str();
    return json{{"re", s.re().get_str()}, {"im", s.im().get_str()}};
}

Scalar scalar_from_json(const json& j, Field f, const std::string& where) {
    Scalar s;
    try {
        if (j.is_string()) {
            s = Scalar::parse(j.get<std::string>());
        } else if (j.is_object()) {
            if (!j.contains("re") || !j.contains("im") || !j["re"].is_string() || !j["im"].is_string() ||
                j.size() != 2)
                throw InputError("expected {\"re\": \"p/q\", \"im\": \"r/s\"}");
            Scalar re = Scalar::parse(j["re"].get<std::string>());
            Scalar im = Scalar::parse(j["im"].get<std::string>());
            if (!re.is_rational() || !im.is_rational()) throw InputError("re and im must be rational");
            s = Scalar(re.re(), im.re());
        } else {
            throw InputError("expected an exact string scalar (numbers are not accepted)");
        }
    } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
    }
    if (f == Field::Q && !s.is_rational()) throw InputError(where + ": Gaussian value in a document over Q");
    return s;
}

json vector_to_json(const Vector& v, Field f) {
    json out = json::array();
    for (const auto& x : v) out.push_back(scalar_to_json(x, f));
    return out;
}

json matrix_to_json(const Matrix& m, Field f) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r), f));
    return out;
}

namespace {

Vector vector_from_json(const json& j, Field f, std::size_t len, const std::string& where) {
    if (!j.is_array()) throw InputError(where + ": expected an array");
    if (j.size() != len)
        throw InputError(where + ": expected " + std::to_string(len) + " entries, got " + std::to_string(j.size()));
    Vector v;
    for (std::size_t k = 0; k < j.size(); ++k) v.push_back(scalar_from_json(j[k], f, where + "[" + std::to_string(k) + "]"));
    return v;
}

std::size_t count_field(const json& j, const char* key, std::size_t lo, std::size_t hi) {
    if (!j[key].is_number_integer()) throw InputError(std::string(key) + ": expected an integer");
    auto v = j[key].get<long long>();
    if (v < static_cast<long long>(lo) || v > static_cast<long long>(hi))
        throw InputError(std::string(key) + ": out of range");
    return static_cast<std::size_t>(v);
}

}  // namespace

Matrix matrix_from_json(const json& j, Field f, const std::string& where) {
    if (!j.is_array() || j.empty()) throw InputError(where + ": expected a non-empty array of rows");
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    std::vector<Vector> rows;
    for (std::size_t r = 0; r < j.size(); ++r)
        rows.push_back(vector_from_json(j[r], f, cols, where + "[" + std::to_string(r) + "]"));
    return Matrix::from_rows(rows, cols);
}

AlgebraDocument parse_document(const std::string& text, std::optional<Field> fallback) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // byte offset to line number
        std::size_t line = 1;
        for (std::size_t k = 0; k < e.byte && k < text.size(); ++k)
            if (text[k] == '\n') ++line;
        throw InputError("line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
    }
    return parse_document_json(j, fallback);
}

AlgebraDocument parse_document_json(const json& input, std::optional<Field> fallback) {
    const json& j = input.is_object() && input.contains("document") ? input["document"] : input;
    if (!j.is_object()) throw InputError("document: expected a JSON object");
    static const std::set<std::string> known = {"field", "arity", "dimension", "alpha", "bracket", "family"};
    for (const auto& [key, val] : j.items())
        if (!known.count(key)) throw InputError(key + ": unknown field");

    Field field = fallback.value_or(Field::Q);
    if (j.contains("field")) {
        if (!j["field"].is_string()) throw InputError("field: expected \"Q\" or \"Qi\"");
        field = parse_field(j["field"].get<std::string>());
        if (fallback && *fallback != field)
            throw InputError("field: document says " + field_name(field) + " but --field says " +
                             field_name(*fallback));
    }

    if (j.contains("family")) {
        if (j.contains("bracket") || j.contains("alpha"))
            throw InputError("family: the shorthand excludes explicit bracket and alpha");
        if (j.contains("arity") && count_field(j, "arity", 2, 64) != 3) throw InputError("arity: family has arity 3");
        if (j.contains("dimension") && count_field(j, "dimension", 1, 64) != 4)
            throw InputError("dimension: family has dimension 4");
        const json& fam = j["family"];
        if (!fam.is_object() || !fam.contains("c124") || !fam.contains("c134") || fam.size() != 2)
            throw InputError("family: expected {\"c124\": [4 scalars], \"c134\": [4 scalars]}");
        Vector a = vector_from_json(fam["c124"], field, 4, "family.c124");
        Vector b = vector_from_json(fam["c134"], field, 4, "family.c134");
        FamilyAlgebra f(field, {a[0], a[1], a[2], a[3]}, {b[0], b[1], b[2], b[3]});
        return {f.to_hom(), f};
    }

    for (const char* key : {"arity", "dimension", "alpha", "bracket"})
        if (!j.contains(key)) throw InputError(std::string(key) + ": missing (or use the family shorthand)");
    const std::size_t dim = count_field(j, "dimension", 1, 64);
    const std::size_t arity = count_field(j, "arity", 2, dim);

    if (!j["alpha"].is_array() || j["alpha"].empty()) throw InputError("alpha: expected a list of matrices");
    std::vector<Matrix> twists;
    for (std::size_t k = 0; k < j["alpha"].size(); ++k) {
        std::string where = "alpha[" + std::to_string(k) + "]";
        Matrix m = matrix_from_json(j["alpha"][k], field, where);
        if (m.rows() != dim || m.cols() != dim) throw InputError(where + ": expected a dimension x dimension matrix");
        twists.push_back(m);
    }
    if (twists.size() == 1) twists.assign(arity - 1, twists[0]);
    if (twists.size() != arity - 1)
        throw InputError("alpha: expected 1 or " + std::to_string(arity - 1) + " matrices");

    Bracket br(static_cast<int>(dim), static_cast<int>(arity));
    if (!j["bracket"].is_array()) throw InputError("bracket: expected a list of entries");
    std::set<Tuple> seen;
    for (std::size_t k = 0; k < j["bracket"].size(); ++k) {
        const json& e = j["bracket"][k];
        std::string where = "bracket[" + std::to_string(k) + "]";
        if (!e.is_object() || !e.contains("args") || !e.contains("value") || e.size() != 2)
            throw InputError(where + ": expected {\"args\": [...], \"value\": [...]}");
        if (!e["args"].is_array() || e["args"].size() != arity)
            throw InputError(where + ".args: expected " + std::to_string(arity) + " indices");
        Tuple idx;
        for (const auto& v : e["args"]) {
            if (!v.is_number_integer()) throw InputError(where + ".args: indices must be integers");
            long long i = v.get<long long>();
            if (i < 1 || i > static_cast<long long>(dim)) throw InputError(where + ".args: index out of range 1.." + std::to_string(dim));
            idx.push_back(static_cast<int>(i));
        }
        for (std::size_t t = 1; t < idx.size(); ++t)
            if (idx[t] <= idx[t - 1]) throw InputError(where + ".args: indices must be strictly increasing");
        if (!seen.insert(idx).second) throw InputError(where + ".args: duplicate entry");
        br.set(idx, vector_from_json(e["value"], field, dim, where + ".value"));
    }
    HomAlgebra a{field, br, twists};
    a.validate();
    return {a, FamilyAlgebra::from_hom(a)};
}

json document_to_json(const HomAlgebra& a) {
    json alpha = json::array();
    if (a.single_twist())
        alpha.push_back(matrix_to_json(a.alpha(), a.field));
    else
        for (const auto& t : a.twists) alpha.push_back(matrix_to_json(t, a.field));
    json bracket = json::array();
    for (const auto& [idx, v] : a.bracket.table())
        bracket.push_back(json{{"args", idx}, {"value", vector_to_json(v, a.field)}});
    return json{{"field", field_name(a.field)},
                {"arity", a.arity()},
                {"dimension", a.dim()},
                {"alpha", alpha},
                {"bracket", bracket}};
}

json document_to_json(const FamilyAlgebra& f) {
    return json{{"field", field_name(f.field)},
                {"family",
                 {{"c124", vector_to_json(Vector(f.c124.begin(), f.c124.end()), f.field)},
                  {"c134", vector_to_json(Vector(f.c134.begin(), f.c134.end()), f.field)}}}};
}

json hnf_to_json(const HnfResult& r, Field f) {
    json out{{"hnf", r.ok}};
    if (!r.ok) out["witness"] = json{{"x", r.x}, {"y", r.y}, {"defect", vector_to_json(r.defect, f)}};
    return out;
}

json canonical_to_json(const CanonicalForm& cf, Field f) {
    json residuals = json::array();
    for (const auto& r : cf.residuals) {
        json e{{"name", r.name},
               {"value", scalar_to_json(r.value, f)},
               {"compare", r.by_square_class ? "square_class" : "equality"}};
        if (r.square_class) e["square_class"] = scalar_to_json(r.square_class->rep, f);
        residuals.push_back(e);
    }
    json flags = json::array();
    if (cf.inferred) flags.push_back("inferred");
    if (cf.case_gap) flags.push_back("case outside the standard case list");
    return json{{"case", cf.case_id},
                {"residuals", residuals},
                {"flags", flags},
                {"canonical_B", matrix_to_json(cf.canonical_B.B, f)},
                {"witness_P", matrix_to_json(cf.witness_P, f)},
                {"document", document_to_json(cf.canonical)}};
}

namespace {

json optional_count(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json class_report_to_json(const ClassReport& r, Field f) {
    json out{{"subclass", subclass_name(r.label.label)}};
    out["case"] = r.canonical ? json(r.canonical->case_id) : json(nullptr);
    out["nilpotency_class"] = optional_count(r.label.nilpotency);
    out["center_dim"] = r.label.center_dim;
    out["multiplicative"] = r.multiplicative;
    out["rank_B"] = r.label.rank_b;
    out["solvability"] = json{{"k2", optional_count(r.label.solvability2)}, {"k3", optional_count(r.label.solvability3)}};
    out["series_dims"] = json{{"derived_k2", r.derived2_dims}, {"derived_k3", r.derived3_dims}, {"central", r.central_dims}};
    if (r.canonical) out["canonical"] = canonical_to_json(*r.canonical, f);
    return out;
}

json subspace_to_json(const Subspace& s, Field f) {
    json basis = json::array();
    for (const auto& v : s.basis()) basis.push_back(vector_to_json(v, f));
    return json{{"dim", s.dim()}, {"basis", basis}};
}

}  // namespace homlie
