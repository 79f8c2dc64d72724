#include "homlie/homalg.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace homlie {

int permutation_sign(const std::vector<int>& p) {
    int s = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j])
                s = -s;
            else if (p[i] == p[j])
                return 0;
    return s;
}

std::vector<Tuple> increasing_tuples(int dim, int len) {
    std::vector<Tuple> out;
    if (len < 0 || len > dim) return out;
    Tuple t(static_cast<std::size_t>(len));
    std::iota(t.begin(), t.end(), 1);
    while (true) {
        out.push_back(t);
        int k = len - 1;
        while (k >= 0 && t[static_cast<std::size_t>(k)] == dim - len + k + 1) --k;
        if (k < 0) break;
        ++t[static_cast<std::size_t>(k)];
        for (int j = k + 1; j < len; ++j) t[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

Bracket::Bracket(int dim, int arity) : dim_(dim), arity_(arity) {
    if (arity < 2 || arity > dim) throw InputError("arity must satisfy 2 <= n <= dim");
}

void Bracket::set(const Tuple& increasing, const Vector& value) {
    if (static_cast<int>(increasing.size()) != arity_) throw InputError("bracket tuple has wrong arity");
    if (static_cast<int>(value.size()) != dim_) throw InputError("bracket value has wrong length");
    for (std::size_t k = 0; k < increasing.size(); ++k) {
        if (increasing[k] < 1 || increasing[k] > dim_) throw InputError("bracket index out of range");
        if (k && increasing[k] <= increasing[k - 1]) throw InputError("bracket indices must be strictly increasing");
    }
    if (homlie::is_zero(value))
        table_.erase(increasing);
    else
        table_[increasing] = value;
}

Vector Bracket::get(const Tuple& indices) const {
    if (static_cast<int>(indices.size()) != arity_) throw InputError("bracket called with wrong arity");
    int s = permutation_sign(indices);
    if (s == 0) return Vector(static_cast<std::size_t>(dim_));
    Tuple sorted = indices;
    std::sort(sorted.begin(), sorted.end());
    auto it = table_.find(sorted);
    if (it == table_.end()) return Vector(static_cast<std::size_t>(dim_));
    return s > 0 ? it->second : Scalar(-1) * it->second;
}

namespace {

// Leibniz determinant of the n x n minor of args at columns I.
Scalar minor_det(const std::vector<Vector>& args, const Tuple& cols) {
    const std::size_t n = cols.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Scalar total = 0;
    do {
        Scalar term = 1;
        for (std::size_t r = 0; r < n && !term.is_zero(); ++r)
            term *= args[r][static_cast<std::size_t>(cols[static_cast<std::size_t>(perm[r])] - 1)];
        if (term.is_zero()) continue;
        if (permutation_sign(perm) > 0)
            total += term;
        else
            total -= term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

}  // namespace

Vector Bracket::eval(const std::vector<Vector>& args) const {
    if (static_cast<int>(args.size()) != arity_) throw InputError("bracket called with wrong arity");
    for (const auto& v : args)
        if (static_cast<int>(v.size()) != dim_) throw InputError("bracket argument has wrong length");
    // basis-vector arguments reduce to a table lookup
    Tuple units;
    for (const auto& v : args) {
        int hit = 0;
        for (std::size_t p = 0; p < v.size(); ++p) {
            if (v[p].is_zero()) continue;
            if (hit || !v[p].is_one()) {
                hit = -1;
                break;
            }
            hit = static_cast<int>(p + 1);
        }
        if (hit <= 0) break;
        units.push_back(hit);
    }
    if (units.size() == args.size()) return get(units);

    Vector out(static_cast<std::size_t>(dim_));
    for (const auto& [idx, val] : table_) {
        Scalar coeff = minor_det(args, idx);
        if (coeff.is_zero()) continue;
        for (std::size_t p = 0; p < out.size(); ++p) out[p] += coeff * val[p];
    }
    return out;
}

namespace {

Tuple omit(int n_plus_1, int i) {
    Tuple t;
    for (int k = 1; k <= n_plus_1; ++k)
        if (k != i) t.push_back(k);
    return t;
}

}  // namespace

BMatrix to_bmatrix(const Bracket& br) {
    const int n = br.arity();
    if (br.dim() != n + 1) throw DomainError("B-matrix view needs dim = arity + 1");
    BMatrix bm{n, Matrix(static_cast<std::size_t>(n + 1), static_cast<std::size_t>(n + 1))};
    for (int i = 1; i <= n + 1; ++i) {
        Vector c = br.get(omit(n + 1, i));
        Scalar sign = (n + 1 + i) % 2 == 0 ? 1 : -1;
        for (int p = 1; p <= n + 1; ++p) bm.b(p, i) = sign * c[static_cast<std::size_t>(p - 1)];
    }
    return bm;
}

Bracket from_bmatrix(const BMatrix& bm) {
    const int n = bm.n;
    if (bm.B.rows() != static_cast<std::size_t>(n + 1) || !bm.B.is_square())
        throw DomainError("B-matrix must be (n+1)x(n+1)");
    Bracket br(n + 1, n);
    for (int i = 1; i <= n + 1; ++i) {
        Scalar sign = (n + 1 + i) % 2 == 0 ? 1 : -1;
        Vector c(static_cast<std::size_t>(n + 1));
        for (int p = 1; p <= n + 1; ++p) c[static_cast<std::size_t>(p - 1)] = sign * bm.b(p, i);
        br.set(omit(n + 1, i), c);
    }
    return br;
}

bool HomAlgebra::single_twist() const {
    for (const auto& t : twists)
        if (!(t == twists.front())) return false;
    return !twists.empty();
}

void HomAlgebra::validate() const {
    if (static_cast<int>(twists.size()) != arity() - 1)
        throw InputError("expected " + std::to_string(arity() - 1) + " twisting maps");
    for (const auto& t : twists)
        if (t.rows() != static_cast<std::size_t>(dim()) || t.cols() != static_cast<std::size_t>(dim()))
            throw InputError("twisting map must be dim x dim");
    auto check = [&](const Scalar& s) {
        if (field == Field::Q && !s.is_rational())
            throw InputError("Gaussian entry " + s.str() + " in a document over Q");
    };
    for (const auto& [idx, v] : bracket.table())
        for (const auto& x : v) check(x);
    for (const auto& t : twists)
        for (std::size_t i = 0; i < t.rows(); ++i)
            for (std::size_t j = 0; j < t.cols(); ++j) check(t(i, j));
}

HomAlgebra make_algebra(Field f, const Bracket& br, const Matrix& alpha) {
    HomAlgebra a{f, br, std::vector<Matrix>(static_cast<std::size_t>(br.arity() - 1), alpha)};
    a.validate();
    return a;
}

FamilyAlgebra::FamilyAlgebra(Field f, std::array<Scalar, 4> a, std::array<Scalar, 4> b)
    : field(f), c124(std::move(a)), c134(std::move(b)) {
    for (int p = 0; p < 4; ++p) {
        require_in_field(c124[static_cast<std::size_t>(p)], f);
        require_in_field(c134[static_cast<std::size_t>(p)], f);
    }
}

Matrix FamilyAlgebra::alpha() {
    Matrix m(4, 4);
    m(1, 2) = 1;  // alpha(e3) = e2
    m(2, 3) = 1;  // alpha(e4) = e3
    return m;
}

HomAlgebra FamilyAlgebra::to_hom() const {
    Bracket br(4, 3);
    br.set({1, 2, 4}, Vector(c124.begin(), c124.end()));
    br.set({1, 3, 4}, Vector(c134.begin(), c134.end()));
    return make_algebra(field, br, alpha());
}

BMatrix FamilyAlgebra::bmatrix() const { return to_bmatrix(to_hom().bracket); }

bool FamilyAlgebra::is_abelian() const {
    for (int p = 0; p < 4; ++p)
        if (!c124[static_cast<std::size_t>(p)].is_zero() || !c134[static_cast<std::size_t>(p)].is_zero()) return false;
    return true;
}

std::optional<FamilyAlgebra> FamilyAlgebra::from_hom(const HomAlgebra& a) {
    if (a.dim() != 4 || a.arity() != 3) return std::nullopt;
    for (const auto& t : a.twists)
        if (!(t == alpha())) return std::nullopt;
    for (const auto& [idx, v] : a.bracket.table())
        if (idx != Tuple{1, 2, 4} && idx != Tuple{1, 3, 4}) return std::nullopt;
    Vector u = a.bracket.get({1, 2, 4});
    Vector w = a.bracket.get({1, 3, 4});
    return FamilyAlgebra(a.field, {u[0], u[1], u[2], u[3]}, {w[0], w[1], w[2], w[3]});
}

BMatrix congruence(const BMatrix& bm, const Matrix& T) {
    Scalar d = det(T);
    if (d.is_zero()) throw DomainError("basis change matrix is singular");
    return BMatrix{bm.n, d.inverse() * (T * bm.B * T.transpose())};
}

namespace {

std::vector<Matrix> conjugate_twists(const std::vector<Matrix>& twists, const Matrix& T, const Matrix& Tinv) {
    std::vector<Matrix> out;
    for (const auto& t : twists) out.push_back(T * t * Tinv);
    return out;
}

}  // namespace

HomAlgebra change_basis_multilinear(const HomAlgebra& a, const Matrix& T) {
    if (T.rows() != static_cast<std::size_t>(a.dim()) || !T.is_square())
        throw DomainError("basis change has wrong size");
    Matrix Tinv = inverse(T);
    Bracket br(a.dim(), a.arity());
    for (const auto& idx : increasing_tuples(a.dim(), a.arity())) {
        std::vector<Vector> args;
        for (int i : idx) args.push_back(Tinv.col(static_cast<std::size_t>(i - 1)));
        br.set(idx, T * a.bracket.eval(args));
    }
    return HomAlgebra{a.field, br, conjugate_twists(a.twists, T, Tinv)};
}

HomAlgebra change_basis(const HomAlgebra& a, const Matrix& T) {
    if (a.dim() != a.arity() + 1) return change_basis_multilinear(a, T);
    if (T.rows() != static_cast<std::size_t>(a.dim()) || !T.is_square())
        throw DomainError("basis change has wrong size");
    Matrix Tinv = inverse(T);
    BMatrix b2 = congruence(to_bmatrix(a.bracket), T);
    return HomAlgebra{a.field, from_bmatrix(b2), conjugate_twists(a.twists, T, Tinv)};
}

namespace {

void check_permutation(const std::vector<int>& sigma) {
    std::vector<int> s = sigma;
    std::sort(s.begin(), s.end());
    for (std::size_t k = 0; k < s.size(); ++k)
        if (s[k] != static_cast<int>(k + 1)) throw InputError("sigma is not a permutation");
}

}  // namespace

Matrix permutation_matrix(const std::vector<int>& sigma) {
    check_permutation(sigma);
    Matrix m(sigma.size(), sigma.size());
    for (std::size_t k = 0; k < sigma.size(); ++k) m(static_cast<std::size_t>(sigma[k] - 1), k) = 1;
    return m;
}

BMatrix permute_basis(const BMatrix& bm, const std::vector<int>& sigma) {
    check_permutation(sigma);
    if (sigma.size() != bm.B.rows()) throw InputError("permutation size does not match B");
    std::vector<int> inv(sigma.size());
    for (std::size_t k = 0; k < sigma.size(); ++k) inv[static_cast<std::size_t>(sigma[k] - 1)] = static_cast<int>(k + 1);
    Scalar sgn = permutation_sign(sigma);
    BMatrix out{bm.n, Matrix(bm.B.rows(), bm.B.cols())};
    const int m = static_cast<int>(sigma.size());
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j)
            out.b(i, j) = sgn * bm.b(inv[static_cast<std::size_t>(i - 1)], inv[static_cast<std::size_t>(j - 1)]);
    return out;
}

MorphismCheck is_morphism(const Matrix& f, const HomAlgebra& src, const HomAlgebra& dst, bool weak) {
    if (src.arity() != dst.arity()) throw DomainError("morphism between algebras of different arity");
    if (f.cols() != static_cast<std::size_t>(src.dim()) || f.rows() != static_cast<std::size_t>(dst.dim()))
        throw DomainError("morphism matrix has wrong shape");
    MorphismCheck res;
    for (const auto& idx : increasing_tuples(src.dim(), src.arity())) {
        Vector lhs = f * src.bracket.get(idx);
        std::vector<Vector> images;
        for (int i : idx) images.push_back(f.col(static_cast<std::size_t>(i - 1)));
        Vector rhs = dst.bracket.eval(images);
        Vector defect = lhs + Scalar(-1) * rhs;
        if (!homlie::is_zero(defect)) {
            res.ok = false;
            res.failing_tuple = idx;
            res.defect = defect;
            return res;
        }
    }
    if (weak) return res;
    if (src.twists.size() != dst.twists.size()) throw DomainError("twist lists differ in length");
    for (std::size_t k = 0; k < src.twists.size(); ++k) {
        Matrix gap = f * src.twists[k] - dst.twists[k] * f;
        if (!gap.is_zero()) {
            res.ok = false;
            res.intertwining = gap;
            res.twist_index = k + 1;
            return res;
        }
    }
    return res;
}

HomAlgebra yau_twist(const HomAlgebra& a, const Matrix& beta) {
    MorphismCheck chk = is_morphism(beta, a, a, true);
    if (!chk.ok) {
        std::string t;
        for (int i : *chk.failing_tuple) t += (t.empty() ? "" : ",") + std::to_string(i);
        throw NotWeakMorphism("twist map is not a weak morphism; fails on basis tuple (" + t + ")", *chk.failing_tuple);
    }
    Bracket br(a.dim(), a.arity());
    for (const auto& [idx, v] : a.bracket.table()) br.set(idx, beta * v);
    std::vector<Matrix> twists;
    for (const auto& t : a.twists) twists.push_back(beta * t);
    return HomAlgebra{a.field, br, twists};
}

}  // namespace homlie
