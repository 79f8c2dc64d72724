#include "homlie/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "homlie/document.hpp"

namespace homlie {

namespace {

struct Options {
    std::string field;
    std::string format = "json";
    bool oracle = false;
    std::string grid;
    std::string out;
    std::vector<std::string> files;
    std::vector<std::string> spans;
    std::string beta;
    std::string filter;
    unsigned threads = 0;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::optional<Field> field_flag(const Options& o) {
    if (o.field.empty()) return std::nullopt;
    return parse_field(o.field);
}

AlgebraDocument load(const Options& o, const std::string& path) {
    try {
        return parse_document(read_file(path), field_flag(o));
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

FamilyAlgebra require_family(const AlgebraDocument& d, const std::string& path) {
    if (!d.family) throw InputError(path + ": not an instance of the 4-dimensional family (dimension 4, arity 3, fixed alpha, only [e1,e2,e4] and [e1,e3,e4])");
    return *d.family;
}

void print_text(std::ostream& os, const json& j, const std::string& indent = "") {
    for (const auto& [key, val] : j.items()) {
        if (val.is_object()) {
            os << indent << key << ":\n";
            print_text(os, val, indent + "  ");
        } else if (val.is_string()) {
            os << indent << key << ": " << val.get<std::string>() << "\n";
        } else {
            os << indent << key << ": " << val.dump() << "\n";
        }
    }
}

void emit(std::ostream& os, const Options& o, const json& report) {
    if (o.format == "text")
        print_text(os, report);
    else
        os << report.dump(2) << "\n";
}

void write_out(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw InputError(path + ": cannot write");
    f << content;
}

Vector parse_vector(const std::string& text, Field f, std::size_t dim, const std::string& where) {
    Vector v;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        Scalar s = Scalar::parse(tok);
        if (f == Field::Q && !s.is_rational()) throw InputError(where + ": Gaussian entry over Q");
        v.push_back(s);
    }
    if (v.size() != dim) throw InputError(where + ": expected " + std::to_string(dim) + " entries");
    return v;
}

std::vector<Vector> parse_rows(const std::string& text, Field f, std::size_t dim, const std::string& where) {
    std::vector<Vector> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';'))
        if (!row.empty()) rows.push_back(parse_vector(row, f, dim, where));
    return rows;
}

int cmd_check(const Options& o, std::ostream& out) {
    const AlgebraDocument doc = load(o, o.files.at(0));
    const HomAlgebra& a = doc.algebra;
    const HnfResult brute = check_hnf_bruteforce(a);
    json rep = hnf_to_json(brute, a.field);
    if (o.oracle) {
        const HnfResult full = check_hnf_bruteforce(a, true);
        if (full.ok != brute.ok) throw InternalError("exhaustive and reduced brute force disagree");
        rep["exhaustive_hnf"] = full.ok;
    }
    const TwistShape shape = detect_shape(a);
    rep["shape"] = shape.name();
    if (shape.kind != TwistShape::Kind::General) {
        const PolynomialResult poly = check_hnf_polynomial(a, shape);
        if (poly.ok != brute.ok) throw InternalError("polynomial system and brute force disagree");
        rep["polynomial"] = poly.ok;
        rep["failing_equations"] = poly.failing;
    } else {
        rep["polynomial"] = nullptr;
    }
    if (a.single_twist()) {
        const MultiplicativeReport m = check_multiplicative(a);
        rep["multiplicative"] = m.multiplicative;
        if (m.image_in_kernel) rep["image_in_kernel"] = *m.image_in_kernel;
        if (m.alpha_b_zero) rep["alpha_B_zero"] = *m.alpha_b_zero;
        if (!m.multiplicative && m.direct.failing_tuple) rep["multiplicative_witness"] = *m.direct.failing_tuple;
        if (doc.family && is_multiplicative_family(*doc.family) != m.multiplicative)
            throw InternalError("family multiplicativity test disagrees");
    } else {
        rep["multiplicative"] = nullptr;
    }
    emit(out, o, rep);
    return brute.ok ? kOk : kFalseVerdict;
}

int cmd_analyze(const Options& o, std::ostream& out) {
    const AlgebraDocument doc = load(o, o.files.at(0));
    const HomAlgebra& a = doc.algebra;
    const auto d = static_cast<std::size_t>(a.dim());
    json rep{{"dimension", a.dim()}, {"arity", a.arity()}};
    json ser = json::array();
    for (SeriesKind kind : {SeriesKind::Derived, SeriesKind::Central}) {
        for (int k = 2; k <= a.arity(); ++k) {
            const SeriesReport s = series(a, k, kind);
            json terms = json::array();
            for (const auto& t : s.terms) terms.push_back(subspace_to_json(t, a.field));
            ser.push_back(json{{"kind", kind == SeriesKind::Derived ? "derived" : "central"},
                               {"k", k},
                               {"dims", s.dims()},
                               {"class", s.cls ? json(*s.cls) : json(nullptr)},
                               {"terms", terms}});
        }
    }
    rep["series"] = ser;
    rep["center"] = subspace_to_json(center(a), a.field);
    const NilpotencyProfile np = nilpotency_profile(a);
    rep["nilpotency"] = json{{"nilpotent", np.nilpotent},
                             {"class", np.cls ? json(*np.cls) : json(nullptr)},
                             {"center_dim", np.center_dim}};
    json spans = json::array();
    for (const auto& text : o.spans) {
        Subspace w = Subspace::span(d, parse_rows(text, a.field, d, "--span"));
        const SubspaceStatus st = subspace_status(a, w);
        json e = subspace_to_json(w, a.field);
        e["status"] = json{{"weak_subalgebra", st.weak_subalgebra},
                           {"hom_subalgebra", st.hom_subalgebra},
                           {"weak_ideal", st.weak_ideal},
                           {"hom_ideal", st.hom_ideal}};
        spans.push_back(e);
    }
    rep["spans"] = spans;
    if (o.oracle) {
        // series terms must be preserved by the weak-ideal chain property
        for (int k = 2; k <= a.arity(); ++k) {
            const SeriesReport s = series(a, k, SeriesKind::Derived);
            for (std::size_t p = 0; p + 1 < s.terms.size(); ++p)
                if (!subspace_status_in(a, s.terms[p], s.terms[p + 1]).weak_ideal && check_hnf_bruteforce(a).ok)
                    throw InternalError("derived term is not a weak ideal of its predecessor");
        }
    }
    emit(out, o, rep);
    return kOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
    const AlgebraDocument doc = load(o, o.files.at(0));
    const FamilyAlgebra f = require_family(doc, o.files[0]);
    const ClassReport r = classify(f);
    if (o.oracle && r.canonical) {
        const HomAlgebra moved = change_basis_multilinear(f.to_hom(), r.canonical->witness_P);
        if (!(moved == r.canonical->canonical.to_hom())) throw InternalError("multilinear transport disagrees with B congruence");
    }
    emit(out, o, class_report_to_json(r, f.field));
    return kOk;
}

int cmd_canonical(const Options& o, std::ostream& out) {
    const AlgebraDocument doc = load(o, o.files.at(0));
    const FamilyAlgebra f = require_family(doc, o.files[0]);
    const CanonicalForm cf = canonical_reduce(f);
    if (o.oracle) {
        const HomAlgebra moved = change_basis_multilinear(f.to_hom(), cf.witness_P);
        if (!(moved == cf.canonical.to_hom())) throw InternalError("multilinear transport disagrees with B congruence");
    }
    json rep = canonical_to_json(cf, f.field);
    json head{{"subclass", subclass_name(cf.subclass)}};
    head.update(rep);
    rep = head;
    if (!o.out.empty()) write_out(o.out, document_to_json(cf.canonical).dump(2) + "\n");
    emit(out, o, rep);
    return kOk;
}

int cmd_isomorphic(const Options& o, std::ostream& out) {
    if (o.files.size() != 2) throw InputError("isomorphic needs two documents");
    const FamilyAlgebra f = require_family(load(o, o.files[0]), o.files[0]);
    const FamilyAlgebra g = require_family(load(o, o.files[1]), o.files[1]);
    const IsomorphismResult res = isomorphic(f, g);
    json rep{{"isomorphic", res.isomorphic}};
    if (res.witness) {
        rep["witness_T"] = matrix_to_json(*res.witness, f.field);
        // re-load the emitted witness and check it by transporting f
        const Matrix T = matrix_from_json(json::parse(rep["witness_T"].dump()), f.field, "witness_T");
        if (!(change_basis(f.to_hom(), T) == g.to_hom()) || !(change_basis_multilinear(f.to_hom(), T) == g.to_hom()))
            throw InternalError("emitted witness does not transport the first algebra onto the second");
        rep["witness_verified"] = true;
    } else {
        rep["reason"] = res.reason;
    }
    emit(out, o, rep);
    return res.isomorphic ? kOk : kFalseVerdict;
}

int cmd_twist(const Options& o, std::ostream& out) {
    const AlgebraDocument doc = load(o, o.files.at(0));
    const HomAlgebra& a = doc.algebra;
    if (o.beta.empty()) throw InputError("twist needs --beta \"r1;r2;...\" with comma-separated row entries");
    const auto d = static_cast<std::size_t>(a.dim());
    std::vector<Vector> rows = parse_rows(o.beta, a.field, d, "--beta");
    if (rows.size() != d) throw InputError("--beta: expected " + std::to_string(d) + " rows");
    const HomAlgebra t = yau_twist(a, Matrix::from_rows(rows, d));
    const std::string text = document_to_json(t).dump(2) + "\n";
    if (!o.out.empty())
        write_out(o.out, text);
    else
        out << text;
    return kOk;
}

int cmd_batch(const Options& o, std::ostream& out) {
    if (o.grid.empty()) throw InputError("batch needs --grid \"a,b,c\"");
    EnumerateOptions eo;
    eo.field = field_flag(o).value_or(Field::Q);
    eo.threads = o.threads;
    std::vector<Scalar> grid;
    std::stringstream ss(o.grid);
    std::string tok;
    while (std::getline(ss, tok, ',')) grid.push_back(Scalar::parse(tok));
    if (grid.empty()) throw InputError("--grid: no values");
    if (!o.filter.empty()) {
        bool found = false;
        for (Subclass s : {Subclass::Abelian, Subclass::S1, Subclass::S2, Subclass::S3, Subclass::S4, Subclass::S5})
            if (subclass_name(s) == o.filter) {
                eo.filter = s;
                found = true;
            }
        if (!found) throw InputError("--filter: expected Abelian or S1..S5");
    }
    std::ofstream file;
    if (!o.out.empty()) {
        file.open(o.out);
        if (!file) throw InputError(o.out + ": cannot write");
    }
    std::ostream& sink = o.out.empty() ? out : file;
    std::size_t count = 0;
    enumerate(grid, eo, [&](const FamilyAlgebra& f, const ClassReport& r) {
        json line = document_to_json(f)["family"];
        line.update(class_report_to_json(r, f.field));
        if (line.contains("canonical")) {
            json c = line["canonical"];
            line.erase("canonical");
            line["residuals"] = c["residuals"];
            line["flags"] = c["flags"];
        }
        sink << line.dump() << "\n";
        ++count;
    });
    if (!o.out.empty()) out << json{{"instances", count}, {"out", o.out}}.dump() << "\n";
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Exact computations for n-Hom-Lie algebras and the 4-dimensional nilpotent-twist family"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--field", o.field, "Base field: Q or Qi")->check(CLI::IsMember({"Q", "Qi"}));
    app.add_option("--format", o.format, "Report format: json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_flag("--oracle", o.oracle, "Also run brute-force cross-checks");
    app.add_option("--out", o.out, "Write the produced document or JSON lines here");

    auto* check = app.add_subcommand("check", "Hom-Nambu-Filippov identity and multiplicativity");
    check->add_option("file", o.files, "Algebra document")->required()->expected(1);
    auto* analyze = app.add_subcommand("analyze", "Series, center, nilpotency, subspace status");
    analyze->add_option("file", o.files, "Algebra document")->required()->expected(1);
    analyze->add_option("--span", o.spans, "Subspace to test, vectors separated by ';', entries by ','");
    auto* classify_cmd = app.add_subcommand("classify", "Subclass, case and invariants of a family instance");
    classify_cmd->add_option("file", o.files, "Family document")->required()->expected(1);
    auto* canonical = app.add_subcommand("canonical", "Canonical form and witness matrix");
    canonical->add_option("file", o.files, "Family document")->required()->expected(1);
    auto* iso = app.add_subcommand("isomorphic", "Decide isomorphism of two family instances");
    iso->add_option("files", o.files, "Two family documents")->required()->expected(2);
    auto* twist = app.add_subcommand("twist", "Yau twist by a weak morphism");
    twist->add_option("file", o.files, "Algebra document")->required()->expected(1);
    twist->add_option("--beta", o.beta, "Twist matrix, rows separated by ';', entries by ','")->required();
    auto* batch = app.add_subcommand("batch", "Classify every family instance over a grid (JSON lines)");
    batch->add_option("--grid", o.grid, "Comma-separated parameter values")->required();
    batch->add_option("--filter", o.filter, "Keep only one subclass (Abelian, S1..S5)");
    batch->add_option("--threads", o.threads, "Worker threads (0: all cores)");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    try {
        if (*check) return cmd_check(o, out);
        if (*analyze) return cmd_analyze(o, out);
        if (*classify_cmd) return cmd_classify(o, out);
        if (*canonical) return cmd_canonical(o, out);
        if (*iso) return cmd_isomorphic(o, out);
        if (*twist) return cmd_twist(o, out);
        if (*batch) return cmd_batch(o, out);
    } catch (const InternalError& e) {
        err << "internal consistency error: " << e.what() << "\n";
        return kInternalError;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const DomainError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace homlie
