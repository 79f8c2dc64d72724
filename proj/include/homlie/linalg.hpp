#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "homlie/field.hpp"

namespace homlie {

using Vector = std::vector<Scalar>;

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, int index);  // 1-based index
bool is_zero(const Vector& v);

// Dense row-major matrix. Element access through operator() is 0-based;
// the 1-based basis convention lives in the domain types built on top.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    Vector row(std::size_t r) const;
    Vector col(std::size_t c) const;
    Matrix transpose() const;
    bool is_zero() const;

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    std::string str() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Scalar& s, const Matrix& m);
Vector operator*(const Matrix& m, const Vector& v);
Vector operator+(const Vector& a, const Vector& b);
Vector operator*(const Scalar& s, const Vector& v);

class Subspace;

struct Reduction {
    Matrix rref;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;  // 0-based pivot columns
    std::vector<Vector> kernel;       // right null space basis
    std::optional<Scalar> det;        // present iff square
};

Reduction reduce(const Matrix& m);
Scalar det(const Matrix& m);
std::size_t rank(const Matrix& m);
Matrix inverse(const Matrix& m);  // throws DomainError if singular
Subspace kernel(const Matrix& m);

// Linear subspace of K^d held as its reduced-echelon basis.
// The zero subspace has no basis rows.
class Subspace {
public:
    explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) {}

    static Subspace span(std::size_t ambient, const std::vector<Vector>& vectors);
    static Subspace whole(std::size_t ambient);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    bool is_zero() const { return basis_.empty(); }
    const std::vector<Vector>& basis() const { return basis_; }

    bool contains(const Vector& v) const;
    bool contains(const Subspace& other) const;
    Subspace sum(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;
    Subspace image(const Matrix& f) const;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

    std::string str() const;

private:
    void check_ambient(const Subspace& other) const;

    std::size_t ambient_;
    std::vector<Vector> basis_;
};

}  // namespace homlie
