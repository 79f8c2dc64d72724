#include "homlie/field.hpp"

#include <ostream>
#include <utility>
#include <vector>

namespace homlie {

std::string field_name(Field f) { return f == Field::Q ? "Q" : "Qi"; }

Field parse_field(const std::string& s) {
    if (s == "Q") return Field::Q;
    if (s == "Qi") return Field::Qi;
    throw InputError("unknown field '" + s + "' (expected Q or Qi)");
}

std::optional<Scalar> Scalar::try_inverse() const {
    if (is_zero()) return std::nullopt;
    if (is_rational()) return Scalar(mpq_class(1) / re_);
    mpq_class n = norm();
    return Scalar(re_ / n, -im_ / n);
}

Scalar Scalar::inverse() const {
    auto inv = try_inverse();
    if (!inv) throw DomainError("division by zero");
    return *inv;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (is_rational() && o.is_rational()) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    if (o.is_rational()) {
        re_ /= o.re_;
        if (sgn(im_) != 0) im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

std::string Scalar::str() const {
    if (is_rational()) return re_.get_str();
    std::string out;
    if (sgn(re_) != 0) out = re_.get_str();
    mpq_class mag = abs(im_);
    if (sgn(im_) < 0)
        out += "-";
    else if (!out.empty())
        out += "+";
    if (mag != 1) out += mag.get_str();
    return out + "i";
}

namespace {

mpq_class parse_rational(const std::string& t, const std::string& whole) {
    if (t.empty()) throw InputError("malformed scalar '" + whole + "'");
    std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    bool slash = false;
    bool digits = false;
    for (std::size_t k = start; k < t.size(); ++k) {
        char c = t[k];
        if (c == '/') {
            if (slash || !digits) throw InputError("malformed scalar '" + whole + "'");
            slash = true;
            digits = false;
        } else if (c >= '0' && c <= '9') {
            digits = true;
        } else {
            throw InputError("malformed scalar '" + whole + "' (only exact p/q forms are accepted)");
        }
    }
    if (!digits) throw InputError("malformed scalar '" + whole + "'");
    mpq_class q;
    std::string body = t[0] == '+' ? t.substr(1) : t;
    if (q.set_str(body, 10) != 0) throw InputError("malformed scalar '" + whole + "'");
    if (sgn(q.get_den()) == 0) throw InputError("zero denominator in '" + whole + "'");
    q.canonicalize();
    return q;
}

}  // namespace

Scalar Scalar::parse(const std::string& text) {
    std::string t;
    for (char c : text)
        if (c != ' ') t += c;
    if (t.empty()) throw InputError("empty scalar");
    if (t.back() != 'i') return Scalar(parse_rational(t, text));
    std::string body = t.substr(0, t.size() - 1);
    // split "re+im" at the last sign that is not leading
    std::size_t cut = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if (body[k] == '+' || body[k] == '-') {
            cut = k;
            break;
        }
    }
    std::string re_part = cut == std::string::npos ? "" : body.substr(0, cut);
    std::string im_part = cut == std::string::npos ? body : body.substr(cut);
    if (im_part.empty() || im_part == "+") im_part = "1";
    if (im_part == "-") im_part = "-1";
    mpq_class re = re_part.empty() ? mpq_class(0) : parse_rational(re_part, text);
    return Scalar(re, parse_rational(im_part, text));
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

void require_in_field(const Scalar& a, Field f) {
    if (f == Field::Q && !a.is_rational())
        throw DomainError("scalar " + a.str() + " is not in Q");
}

namespace {

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
    if (sgn(q) < 0) return std::nullopt;
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return std::nullopt;
    mpz_class rn = sqrt(n);
    mpz_class rd = sqrt(d);
    return mpq_class(rn, rd);
}

}  // namespace

std::optional<Scalar> sqrt_exact(const Scalar& a, Field f) {
    require_in_field(a, f);
    if (a.is_rational()) {
        if (auto r = rational_sqrt(a.re())) return Scalar(*r);
        if (f == Field::Qi) {
            if (auto r = rational_sqrt(-a.re())) return Scalar(mpq_class(0), *r);
        }
        return std::nullopt;
    }
    // (p + qi)^2 = x + yi with y != 0: p^2 = (x + |a|)/2, q = y/(2p)
    auto r = rational_sqrt(a.norm());
    if (!r) return std::nullopt;
    auto p = rational_sqrt((a.re() + *r) / 2);
    if (!p || sgn(*p) == 0) return std::nullopt;
    mpq_class q = a.im() / (2 * *p);
    return Scalar(*p, q);
}

bool is_square(const Scalar& a, Field f) { return sqrt_exact(a, f).has_value(); }

namespace {

// Signed square-free part of a nonzero integer.
mpz_class squarefree_part(mpz_class z) {
    int sign = sgn(z);
    z = abs(z);
    mpz_class out = 1;
    for (mpz_class p = 2; p * p <= z; ++p) {
        if (z % p != 0) continue;
        int e = 0;
        while (z % p == 0) {
            z /= p;
            ++e;
        }
        if (e % 2) out *= p;
    }
    out *= z;
    return sign < 0 ? mpz_class(-out) : out;
}

struct Gauss {
    mpz_class re, im;
};

Gauss gmul(const Gauss& a, const Gauss& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

// Divides a by b in Z[i] if exact.
std::optional<Gauss> gdiv_exact(const Gauss& a, const Gauss& b) {
    mpz_class n = b.re * b.re + b.im * b.im;
    mpz_class re = a.re * b.re + a.im * b.im;
    mpz_class im = a.im * b.re - a.re * b.im;
    if (re % n != 0 || im % n != 0) return std::nullopt;
    return Gauss{re / n, im / n};
}

// Associate with argument in [0, pi/2): re > 0, im >= 0.
Gauss normalise_associate(Gauss g) {
    for (int k = 0; k < 4; ++k) {
        if (sgn(g.re) > 0 && sgn(g.im) >= 0) return g;
        g = gmul(g, Gauss{0, 1});
    }
    return g;
}

// Strips every power of prime pi from z; returns the exponent.
int strip(Gauss& z, const Gauss& pi) {
    int e = 0;
    while (auto q = gdiv_exact(z, pi)) {
        z = *q;
        ++e;
    }
    return e;
}

// Gaussian prime above a rational prime p = 1 mod 4.
Gauss split_prime(const mpz_class& p) {
    for (mpz_class a = 1; a * a < p; ++a) {
        mpz_class b2 = p - a * a;
        if (mpz_perfect_square_p(b2.get_mpz_t())) return normalise_associate(Gauss{a, sqrt(b2)});
    }
    throw InternalError("no two-square decomposition for " + p.get_str());
}

Scalar gaussian_square_class(const Scalar& a) {
    // a = g/m with g in Z[i], m > 0; a and g*m differ by the square m^2.
    mpz_class m = lcm(a.re().get_den(), a.im().get_den());
    Gauss z{a.re().get_num() * (m / a.re().get_den()) * m,
            a.im().get_num() * (m / a.im().get_den()) * m};
    mpz_class norm = z.re * z.re + z.im * z.im;
    Gauss rep{1, 0};
    auto absorb = [&](const Gauss& pi) {
        if (strip(z, pi) % 2) rep = gmul(rep, pi);
    };
    for (mpz_class p = 2; p * p <= norm; ++p) {
        if (norm % p != 0) continue;
        while (norm % p == 0) norm /= p;
        if (p == 2) {
            absorb(Gauss{1, 1});
        } else if (p % 4 == 3) {
            absorb(Gauss{p, 0});
        } else {
            Gauss pi = split_prime(p);
            absorb(pi);
            absorb(normalise_associate(Gauss{pi.re, -pi.im}));
        }
    }
    if (norm > 1) {
        // leftover prime norm: z is a unit times one Gaussian prime
        Gauss pi = norm == 2 ? Gauss{1, 1} : split_prime(norm);
        if (norm != 2 && !gdiv_exact(z, pi)) pi = normalise_associate(Gauss{pi.re, -pi.im});
        absorb(pi);
    }
    // z is now a unit; -1 = i^2 is a square, so only 1 versus i matters
    if (sgn(z.im) != 0) rep = gmul(rep, Gauss{0, 1});
    return Scalar(mpq_class(rep.re), mpq_class(rep.im));
}

}  // namespace

SquareClassRep square_class(const Scalar& a, Field f) {
    require_in_field(a, f);
    if (a.is_zero()) throw DomainError("square class of zero is undefined");
    if (f == Field::Q) {
        mpz_class pq = a.re().get_num() * a.re().get_den();
        return {f, Scalar(mpq_class(squarefree_part(pq)))};
    }
    return {f, gaussian_square_class(a)};
}

}  // namespace homlie
