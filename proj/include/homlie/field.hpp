#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "homlie/errors.hpp"

namespace homlie {

enum class Field { Q, Qi };

std::string field_name(Field f);
Field parse_field(const std::string& s);

// Element of Q(i) stored as re + im*i with canonical GMP rationals.
// Rationals are the elements with im == 0; the Field tag of the owning
// algebra decides which square tests apply.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
    Scalar(const mpq_class& re) : re_(re) { re_.canonicalize(); }  // NOLINT
    Scalar(const mpq_class& re, const mpq_class& im) : re_(re), im_(im) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static Scalar imag_unit() { return Scalar(mpq_class(0), mpq_class(1)); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_rational() const { return sgn(im_) == 0; }

    Scalar conj() const { return Scalar(re_, -im_); }
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    std::optional<Scalar> try_inverse() const;
    Scalar inverse() const;  // throws DomainError on zero

    Scalar operator-() const { return Scalar(-re_, -im_); }
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    // "p/q" for rationals, "a+bi" style otherwise; parse() accepts both.
    std::string str() const;
    static Scalar parse(const std::string& text);

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Throws DomainError when a carries an imaginary part but f is Q.
void require_in_field(const Scalar& a, Field f);

// Exact square root in f if one exists.
std::optional<Scalar> sqrt_exact(const Scalar& a, Field f);

bool is_square(const Scalar& a, Field f);

// Canonical representative of a*(K*)^2.
struct SquareClassRep {
    Field field = Field::Q;
    Scalar rep;
    friend bool operator==(const SquareClassRep& a, const SquareClassRep& b) {
        return a.field == b.field && a.rep == b.rep;
    }
    std::string str() const { return rep.str(); }
};

// Throws DomainError on zero.
SquareClassRep square_class(const Scalar& a, Field f);

}  // namespace homlie
