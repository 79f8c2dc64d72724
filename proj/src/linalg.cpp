#include "homlie/linalg.hpp"

#include <sstream>
#include <utility>

namespace homlie {

Vector zero_vector(std::size_t n) { return Vector(n); }

Vector unit_vector(std::size_t n, int index) {
    Vector v(n);
    v.at(static_cast<std::size_t>(index - 1)) = 1;
    return v;
}

bool is_zero(const Vector& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw InputError("ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Vector Matrix::row(std::size_t r) const {
    return Vector(a_.begin() + static_cast<long>(r * cols_),
                  a_.begin() + static_cast<long>((r + 1) * cols_));
}

Vector Matrix::col(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

bool Matrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

std::string Matrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < rows_; ++r) {
        os << (r ? ", [" : "[");
        for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c);
        os << "]";
    }
    os << "]";
    return os.str();
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DomainError("matrix product shape mismatch");
    Matrix m(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (!b(k, j).is_zero()) m(i, j) += a(i, k) * b(k, j);
        }
    return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("matrix sum shape mismatch");
    Matrix m = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) += b(i, j);
    return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + Scalar(-1) * b; }

Matrix operator*(const Scalar& s, const Matrix& m) {
    Matrix out = m;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) *= s;
    return out;
}

Vector operator*(const Matrix& m, const Vector& v) {
    if (m.cols() != v.size()) throw DomainError("matrix-vector shape mismatch");
    Vector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!v[j].is_zero() && !m(i, j).is_zero()) out[i] += m(i, j) * v[j];
    return out;
}

Vector operator+(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DomainError("vector length mismatch");
    Vector out = a;
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
    return out;
}

Vector operator*(const Scalar& s, const Vector& v) {
    Vector out = v;
    for (auto& x : out) x *= s;
    return out;
}

Reduction reduce(const Matrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    Matrix a = m;
    Reduction out;

    // Bareiss forward pass: every update divides by the previous pivot.
    Scalar prev = 1;
    bool odd_swaps = false;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a(piv, c).is_zero()) ++piv;
        if (piv == rows) continue;
        if (piv != r) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(piv, j), a(r, j));
            odd_swaps = !odd_swaps;
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                a(i, j) = (a(r, c) * a(i, j) - a(i, c) * a(r, j)) / prev;
            a(i, c) = 0;
        }
        prev = a(r, c);
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;

    if (m.is_square()) {
        if (out.rank < rows || rows == 0)
            out.det = rows == 0 ? Scalar(1) : Scalar(0);
        else
            out.det = odd_swaps ? -prev : prev;
    }

    // Normalise to reduced echelon form.
    for (std::size_t k = out.rank; k-- > 0;) {
        std::size_t c = out.pivots[k];
        Scalar inv = a(k, c).inverse();
        for (std::size_t j = c; j < cols; ++j) a(k, j) *= inv;
        for (std::size_t i = 0; i < k; ++i) {
            if (a(i, c).is_zero()) continue;
            Scalar f = a(i, c);
            for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(k, j);
        }
    }
    out.rref = a;

    std::vector<bool> is_pivot(cols, false);
    for (auto c : out.pivots) is_pivot[c] = true;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vector v(cols);
        v[f] = 1;
        for (std::size_t k = 0; k < out.rank; ++k) v[out.pivots[k]] = -a(k, f);
        out.kernel.push_back(std::move(v));
    }
    return out;
}

Scalar det(const Matrix& m) {
    if (!m.is_square()) throw DomainError("determinant of non-square matrix");
    return *reduce(m).det;
}

std::size_t rank(const Matrix& m) { return reduce(m).rank; }

Matrix inverse(const Matrix& m) {
    if (!m.is_square()) throw DomainError("inverse of non-square matrix");
    const std::size_t n = m.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    Reduction red = reduce(aug);
    if (red.rank < n || red.pivots[n - 1] != n - 1) throw DomainError("singular matrix");
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = red.rref(i, n + j);
    return inv;
}

Subspace kernel(const Matrix& m) { return Subspace::span(m.cols(), reduce(m).kernel); }

Subspace Subspace::span(std::size_t ambient, const std::vector<Vector>& vectors) {
    Subspace s(ambient);
    if (vectors.empty()) return s;
    Matrix m = Matrix::from_rows(vectors, ambient);
    Reduction red = reduce(m);
    for (std::size_t k = 0; k < red.rank; ++k) s.basis_.push_back(red.rref.row(k));
    return s;
}

Subspace Subspace::whole(std::size_t ambient) {
    std::vector<Vector> e;
    for (std::size_t i = 1; i <= ambient; ++i) e.push_back(unit_vector(ambient, static_cast<int>(i)));
    return span(ambient, e);
}

void Subspace::check_ambient(const Subspace& other) const {
    if (ambient_ != other.ambient_) throw DomainError("subspace ambient dimension mismatch");
}

bool Subspace::contains(const Vector& v) const {
    if (v.size() != ambient_) throw DomainError("vector length does not match ambient dimension");
    if (homlie::is_zero(v)) return true;
    // Reduce v against the echelon basis; the residue vanishes iff v lies in the span.
    Vector r = v;
    for (const auto& b : basis_) {
        std::size_t p = 0;
        while (b[p].is_zero()) ++p;
        if (r[p].is_zero()) continue;
        Scalar f = r[p];
        for (std::size_t j = p; j < ambient_; ++j) r[j] -= f * b[j];
    }
    return homlie::is_zero(r);
}

bool Subspace::contains(const Subspace& other) const {
    check_ambient(other);
    for (const auto& v : other.basis_)
        if (!contains(v)) return false;
    return true;
}

Subspace Subspace::sum(const Subspace& other) const {
    check_ambient(other);
    std::vector<Vector> all = basis_;
    all.insert(all.end(), other.basis_.begin(), other.basis_.end());
    return span(ambient_, all);
}

Subspace Subspace::intersect(const Subspace& other) const {
    check_ambient(other);
    if (is_zero() || other.is_zero()) return Subspace(ambient_);
    // x*U = y*V  <=>  (x, y) in the kernel of [U; -V]^T
    const std::size_t r = basis_.size();
    const std::size_t s = other.basis_.size();
    Matrix stacked(ambient_, r + s);
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t j = 0; j < ambient_; ++j) stacked(j, k) = basis_[k][j];
    for (std::size_t k = 0; k < s; ++k)
        for (std::size_t j = 0; j < ambient_; ++j) stacked(j, r + k) = -other.basis_[k][j];
    std::vector<Vector> common;
    for (const auto& kv : reduce(stacked).kernel) {
        Vector w(ambient_);
        for (std::size_t k = 0; k < r; ++k)
            if (!kv[k].is_zero()) w = w + kv[k] * basis_[k];
        common.push_back(std::move(w));
    }
    return span(ambient_, common);
}

Subspace Subspace::image(const Matrix& f) const {
    if (f.cols() != ambient_) throw DomainError("map does not act on this subspace");
    std::vector<Vector> imgs;
    for (const auto& b : basis_) imgs.push_back(f * b);
    return span(f.rows(), imgs);
}

std::string Subspace::str() const {
    std::ostringstream os;
    os << "<";
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        os << (k ? ", (" : "(");
        for (std::size_t j = 0; j < ambient_; ++j) os << (j ? "," : "") << basis_[k][j];
        os << ")";
    }
    os << ">";
    return os.str();
}

}  // namespace homlie
