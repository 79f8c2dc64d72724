#include "homlie/identity.hpp"

#include <functional>
#include <sstream>

namespace homlie {

TwistShape TwistShape::diag(std::vector<Scalar> lambdas) {
    TwistShape s;
    s.lambdas = std::move(lambdas);
    std::size_t zeros = 0;
    for (const auto& l : s.lambdas)
        if (l.is_zero()) ++zeros;
    const bool first = !s.lambdas.empty() && s.lambdas[0].is_zero();
    const bool second = s.lambdas.size() > 1 && s.lambdas[1].is_zero();
    if (zeros == 0)
        s.kind = Kind::DiagInvertible;
    else if (zeros == 1 && first)
        s.kind = Kind::DiagKer1;
    else if (zeros == 2 && first && second)
        s.kind = Kind::DiagKer2;
    else
        throw InputError("diagonal eigenvalues do not match a supported template");
    return s;
}

Matrix TwistShape::template_matrix(int dim) const {
    const auto d = static_cast<std::size_t>(dim);
    Matrix m(d, d);
    switch (kind) {
        case Kind::DiagInvertible:
        case Kind::DiagKer1:
        case Kind::DiagKer2:
            if (lambdas.size() != d) throw InputError("eigenvalue count does not match dimension");
            for (std::size_t i = 0; i < d; ++i) m(i, i) = lambdas[i];
            break;
        case Kind::NilKer1:
            for (std::size_t i = 1; i < d; ++i) m(i - 1, i) = 1;
            break;
        case Kind::NilKer2:
            if (i0 < 2 || i0 > dim) throw InputError("i0 must lie in 2..dim");
            for (std::size_t i = 1; i < d; ++i)
                if (static_cast<int>(i + 1) != i0) m(i - 1, i) = 1;
            break;
        case Kind::General:
            throw InputError("general shape has no template");
    }
    return m;
}

std::string TwistShape::name() const {
    switch (kind) {
        case Kind::DiagInvertible: return "DiagInvertible";
        case Kind::DiagKer1: return "DiagKer1";
        case Kind::DiagKer2: return "DiagKer2";
        case Kind::NilKer1: return "NilKer1";
        case Kind::NilKer2: return "NilKer2(" + std::to_string(i0) + ")";
        case Kind::General: return "General";
    }
    return "General";
}

TwistShape detect_shape(const HomAlgebra& a) {
    if (!a.single_twist() || a.dim() != a.arity() + 1) return {};
    const Matrix& al = a.alpha();
    const int d = a.dim();
    bool diagonal = true;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i != j && !al(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).is_zero()) diagonal = false;
    if (diagonal) {
        std::vector<Scalar> l;
        for (int i = 0; i < d; ++i) l.push_back(al(static_cast<std::size_t>(i), static_cast<std::size_t>(i)));
        try {
            return TwistShape::diag(l);
        } catch (const InputError&) {
            return {};
        }
    }
    if (al == TwistShape::nil_ker1().template_matrix(d)) return TwistShape::nil_ker1();
    for (int i0 = 2; i0 <= d; ++i0)
        if (al == TwistShape::nil_ker2(i0).template_matrix(d)) return TwistShape::nil_ker2(i0);
    return {};
}

Vector hnf_defect(const HomAlgebra& a, const std::vector<Vector>& x, const std::vector<Vector>& y) {
    const auto n = static_cast<std::size_t>(a.arity());
    // [alpha_1 x_1, .., alpha_{n-1} x_{n-1}, [y_1..y_n]]
    std::vector<Vector> args;
    for (std::size_t i = 0; i + 1 < n; ++i) args.push_back(a.twists[i] * x[i]);
    args.push_back(a.bracket.eval(y));
    Vector h = a.bracket.eval(args);
    // minus sum_k [alpha_1 y_1, .., [x, y_k], .., alpha_{n-1} y_n]
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Vector> inner(x.begin(), x.end());
        inner.push_back(y[k]);
        std::vector<Vector> outer;
        std::size_t tw = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == k)
                outer.push_back(a.bracket.eval(inner));
            else
                outer.push_back(a.twists[tw++] * y[j]);
        }
        Vector term = a.bracket.eval(outer);
        for (std::size_t p = 0; p < h.size(); ++p) h[p] -= term[p];
    }
    return h;
}

namespace {

std::vector<Tuple> all_tuples(int dim, int len) {
    std::vector<Tuple> out;
    Tuple t(static_cast<std::size_t>(len), 1);
    while (true) {
        out.push_back(t);
        int k = len - 1;
        while (k >= 0 && t[static_cast<std::size_t>(k)] == dim) t[static_cast<std::size_t>(k--)] = 1;
        if (k < 0) break;
        ++t[static_cast<std::size_t>(k)];
    }
    return out;
}

}  // namespace

HnfResult check_hnf_bruteforce(const HomAlgebra& a, bool exhaustive) {
    a.validate();
    const int d = a.dim();
    const int n = a.arity();
    HnfResult res;
    if (a.bracket.is_zero()) return res;
    // With one twisting map the defect is skew in both blocks, so increasing
    // blocks cover everything; otherwise try all ordered tuples.
    const bool full = exhaustive || !a.single_twist();
    auto xs = full ? all_tuples(d, n - 1) : increasing_tuples(d, n - 1);
    auto ys = full ? all_tuples(d, n) : increasing_tuples(d, n);
    std::vector<Vector> basis;
    for (int i = 1; i <= d; ++i) basis.push_back(unit_vector(static_cast<std::size_t>(d), i));
    for (const auto& xt : xs) {
        std::vector<Vector> x;
        for (int i : xt) x.push_back(basis[static_cast<std::size_t>(i - 1)]);
        for (const auto& yt : ys) {
            std::vector<Vector> y;
            for (int i : yt) y.push_back(basis[static_cast<std::size_t>(i - 1)]);
            Vector h = hnf_defect(a, x, y);
            if (!is_zero(h)) {
                res.ok = false;
                res.x = xt;
                res.y = yt;
                res.defect = h;
                return res;
            }
        }
    }
    return res;
}

namespace {

void require_template(const HomAlgebra& a, const TwistShape& shape) {
    if (a.dim() != a.arity() + 1) throw InputError("polynomial check needs dim = arity + 1");
    if (shape.kind == TwistShape::Kind::General) throw InputError("no polynomial system for a general twist");
    if (!a.single_twist()) throw InputError("polynomial check needs a single twisting map");
    Matrix t = shape.template_matrix(a.dim());
    const Matrix& al = a.alpha();
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j)
            if (!(al(i, j) == t(i, j))) {
                std::ostringstream os;
                os << "twist entry (" << i + 1 << "," << j + 1 << ") is " << al(i, j) << " but the "
                   << shape.name() << " template needs " << t(i, j);
                throw InputError(os.str());
            }
}

std::string label(std::initializer_list<std::pair<const char*, int>> parts) {
    std::string s = "(";
    bool first = true;
    for (const auto& [k, v] : parts) {
        s += (first ? "" : ",") + std::string(k) + "=" + std::to_string(v);
        first = false;
    }
    return s + ")";
}

}  // namespace

PolynomialResult check_hnf_polynomial(const HomAlgebra& a, const TwistShape& shape) {
    require_template(a, shape);
    const BMatrix bm = to_bmatrix(a.bracket);
    const int N = a.dim();
    auto b = [&](int p, int i) -> const Scalar& { return bm.b(p, i); };
    auto lam = [&](int i) -> const Scalar& { return shape.lambdas[static_cast<std::size_t>(i - 1)]; };
    PolynomialResult res;
    auto record = [&](const Scalar& v, std::string lbl) {
        if (!v.is_zero()) {
            res.ok = false;
            res.failing.push_back(std::move(lbl));
        }
    };
    using K = TwistShape::Kind;
    switch (shape.kind) {
        case K::DiagInvertible:
            for (int i = 1; i <= N; ++i)
                for (int j = i + 1; j <= N; ++j)
                    for (int k = j + 1; k <= N; ++k)
                        for (int p = 1; p <= N; ++p)
                            record((lam(i) * b(j, i) - lam(j) * b(i, j)) * b(p, k) +
                                       (lam(k) * b(i, k) - lam(i) * b(k, i)) * b(p, j) +
                                       (lam(j) * b(k, j) - lam(k) * b(j, k)) * b(p, i),
                                   label({{"i", i}, {"j", j}, {"k", k}, {"p", p}}));
            break;
        case K::DiagKer1:
            for (int j = 2; j <= N; ++j)
                for (int k = j + 1; k <= N; ++k)
                    for (int p = 1; p <= N; ++p)
                        record(lam(k) * b(1, k) * b(p, j) - lam(k) * b(j, k) * b(p, 1) -
                                   lam(j) * b(1, j) * b(p, k) + lam(j) * b(k, j) * b(p, 1),
                               label({{"j", j}, {"k", k}, {"p", p}}));
            break;
        case K::DiagKer2:
            for (int k = 3; k <= N; ++k)
                for (int p = 1; p <= N; ++p)
                    record(b(1, k) * b(p, 2) - b(2, k) * b(p, 1), label({{"k", k}, {"p", p}}));
            break;
        case K::NilKer1:
            for (int i = 2; i <= N; ++i)
                for (int k = i + 1; k <= N; ++k)
                    for (int p = 1; p <= N; ++p)
                        record((b(k - 1, i) - b(i - 1, k)) * b(p, N) - b(N, i) * b(p, k - 1) +
                                   b(N, k) * b(p, i - 1),
                               label({{"i", i}, {"k", k}, {"p", p}}));
            break;
        case K::NilKer2: {
            const int i0 = shape.i0;
            for (int j = 1; j <= N; ++j) {
                if (j == 1 || j == i0) continue;
                for (int p = 1; p <= N; ++p)
                    record(b(i0 - 1, j) * b(p, N) - b(N, j) * b(p, i0 - 1), label({{"j", j}, {"p", p}}));
            }
            break;
        }
        case K::General:
            break;
    }
    return res;
}

MultiplicativeReport check_multiplicative(const HomAlgebra& a) {
    a.validate();
    if (!a.single_twist()) throw DomainError("multiplicativity is defined here for a single twisting map");
    const Matrix& al = a.alpha();
    MultiplicativeReport rep;
    rep.direct = is_morphism(al, a, a, true);
    rep.multiplicative = rep.direct.ok;
    if (a.dim() == a.arity() + 1 && reduce(al).kernel.size() >= 2) {
        bool inside = true;
        for (const auto& [idx, v] : a.bracket.table())
            if (!is_zero(al * v)) inside = false;
        rep.image_in_kernel = inside;
        rep.alpha_b_zero = (al * to_bmatrix(a.bracket).B).is_zero();
        if (*rep.image_in_kernel != rep.multiplicative || *rep.alpha_b_zero != rep.multiplicative)
            throw InternalError("multiplicativity criteria disagree (direct=" + std::to_string(rep.multiplicative) +
                                ", kernel=" + std::to_string(*rep.image_in_kernel) +
                                ", alphaB=" + std::to_string(*rep.alpha_b_zero) + ")");
    }
    return rep;
}

bool nilker1_multiplicative(const BMatrix& bm, const Matrix& alpha) {
    const int N = bm.n + 1;
    Vector w1 = alpha * bm.B.col(0);
    Vector target = bm.B.col(static_cast<std::size_t>(N - 1));
    if (bm.n % 2) target = Scalar(-1) * target;
    if (!(w1 == target)) return false;
    for (int i = 2; i <= N; ++i)
        if (!is_zero(alpha * bm.B.col(static_cast<std::size_t>(i - 1)))) return false;
    return true;
}

}  // namespace homlie
