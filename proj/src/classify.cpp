#include "homlie/classify.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <thread>

#include "homlie/identity.hpp"

namespace homlie {

namespace {

using Vec4 = std::array<Scalar, 4>;

bool all_zero(const Vec4& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x.is_zero(); });
}

}  // namespace

MinorTable minors(const FamilyAlgebra& f) {
    MinorTable t;
    const auto& a = f.c124;
    const auto& b = f.c134;
    for (int p = 1; p <= 4; ++p)
        for (int q = 1; q <= 4; ++q)
            t.d[p][q] = a[static_cast<std::size_t>(p - 1)] * b[static_cast<std::size_t>(q - 1)] -
                        a[static_cast<std::size_t>(q - 1)] * b[static_cast<std::size_t>(p - 1)];
    t.M = Matrix(2, 2);
    t.M(0, 0) = t.d[2][4];
    t.M(0, 1) = t.d[3][4];
    t.M(1, 0) = t.d[1][2];
    t.M(1, 1) = t.d[1][3];
    if (!(det(t.M) == t.d[2][3] * t.d[1][4])) throw InternalError("det M != d(2,3) d(1,4)");
    return t;
}

std::string subclass_name(Subclass s) {
    switch (s) {
        case Subclass::Abelian: return "Abelian";
        case Subclass::S1: return "S1";
        case Subclass::S2: return "S2";
        case Subclass::S3: return "S3";
        case Subclass::S4: return "S4";
        case Subclass::S5: return "S5";
    }
    return "?";
}

SubclassLabel subclass(const FamilyAlgebra& f) {
    const HomAlgebra a = f.to_hom();
    const MinorTable mt = minors(f);
    const BMatrix bm = f.bmatrix();
    SubclassLabel lab;
    lab.rank_b = rank(bm.B);

    const Subspace z = center(a);
    const Subspace derived = bracket_span(a, std::vector<Subspace>(3, Subspace::whole(4)));
    if (f.is_abelian())
        lab.label = Subclass::Abelian;
    else if (lab.rank_b == 2 && !mt(1, 4).is_zero())
        lab.label = Subclass::S1;
    else if (lab.rank_b == 2 && !mt.M.is_zero())
        lab.label = Subclass::S2;
    else if (lab.rank_b == 2)
        lab.label = Subclass::S3;
    else if (z == derived)
        lab.label = Subclass::S5;
    else
        lab.label = Subclass::S4;

    const SeriesReport d2 = series(a, 2, SeriesKind::Derived);
    const SeriesReport d3 = series(a, 3, SeriesKind::Derived);
    const NilpotencyProfile np = nilpotency_profile(a);
    lab.solvability2 = d2.cls;
    lab.solvability3 = d3.cls;
    lab.nilpotency = np.cls;
    lab.center_dim = np.center_dim;

    auto expect = [&](bool ok, const char* what) {
        if (!ok) throw InternalError("subclass " + subclass_name(lab.label) + " contradicts structure: " + what);
    };
    const std::optional<int> two = 2;
    switch (lab.label) {
        case Subclass::Abelian:
            expect(lab.nilpotency == 1 && lab.center_dim == 4, "abelian profile");
            break;
        case Subclass::S1:
            expect(!lab.solvability2 && lab.solvability3 == two && !np.nilpotent && lab.center_dim == 0,
                   "S1 profile");
            break;
        case Subclass::S2:
            expect(lab.solvability2 == 3 && lab.solvability3 == two && !np.nilpotent && lab.center_dim == 0,
                   "S2 profile");
            break;
        case Subclass::S3: {
            expect(lab.solvability2 == two && lab.solvability3 == two && !np.nilpotent && lab.center_dim == 0,
                   "S3 profile");
            const bool rows_vanish = f.c124[0].is_zero() && f.c124[3].is_zero() && f.c134[0].is_zero() &&
                                     f.c134[3].is_zero();
            expect(rows_vanish, "S3 rows 1 and 4");
            break;
        }
        case Subclass::S4:
            expect(lab.solvability2 == two && lab.solvability3 == two && !np.nilpotent && lab.center_dim == 1,
                   "S4 profile");
            break;
        case Subclass::S5:
            expect(lab.solvability2 == two && lab.solvability3 == two && np.cls == two && lab.center_dim == 1,
                   "S5 profile");
            break;
    }
    if (derived.dim() != lab.rank_b) throw InternalError("dim [A,A,A] != rank B");
    return lab;
}

bool is_multiplicative_family(const FamilyAlgebra& f) {
    const bool by_constants =
        f.c124[2].is_zero() && f.c124[3].is_zero() && f.c134[2].is_zero() && f.c134[3].is_zero();
    if (check_multiplicative(f.to_hom()).multiplicative != by_constants)
        throw InternalError("family multiplicativity test disagrees with the morphism check");
    return by_constants;
}

Matrix commutant(const Scalar& p11, const Scalar& p21, const Scalar& p14, const Scalar& p24, const Scalar& p23,
                 const Scalar& p33) {
    Matrix P(4, 4);
    P(0, 0) = p11;
    P(0, 3) = p14;
    P(1, 0) = p21;
    P(1, 1) = p33;
    P(1, 2) = p23;
    P(1, 3) = p24;
    P(2, 2) = p33;
    P(2, 3) = p23;
    P(3, 3) = p33;
    return P;
}

bool commutes_with_alpha(const Matrix& P) {
    const Matrix al = FamilyAlgebra::alpha();
    return P * al == al * P;
}

namespace {

// One case of the reduction: the proof's commutant with free parameters
// fixed, the residual formulas, and the displayed template.
struct Draft {
    std::string id;
    Matrix P;
    std::vector<Residual> residuals;
    // builds (c'124, c'134) from residual values
    std::function<void(const std::vector<Scalar>&, Vec4&, Vec4&)> shape;
    bool inferred = false;
    bool gap = false;
};

Residual eq(std::string name, Scalar v) { return {std::move(name), std::move(v), false, std::nullopt}; }
Residual sq(std::string name, Scalar v) { return {std::move(name), std::move(v), true, std::nullopt}; }

Matrix P(const Scalar& p11, const Scalar& p21, const Scalar& p14, const Scalar& p24, const Scalar& p23,
         const Scalar& p33 = 1) {
    return commutant(p11, p21, p14, p24, p23, p33);
}

// Free parameters p33 = 1 and p21 = p14 = p24 = p23 = 0 unless a case
// dictates otherwise. a = c(1,2,4,.), b = c(1,3,4,.), 1-based names.
Draft subclass1(const FamilyAlgebra& f, const MinorTable& d) {
    const Scalar &a1 = f.c124[0], &a2 = f.c124[1], &a3 = f.c124[2], &a4 = f.c124[3];
    const Scalar &b1 = f.c134[0], &b2 = f.c134[1], &b3 = f.c134[2], &b4 = f.c134[3];
    const Scalar d14 = d(1, 4);
    if (!a4.is_zero()) {
        Scalar p21 = -((-a4 * b3 * a3 + b4 * a3 * a3) + (a4 * a4 * b2 - a2 * a4 * b4)) / (-a4 * d14);
        Scalar p24 = ((a1 * a4 * b2 - a1 * b3 * a3) + (-a2 * a4 * b1 + b1 * a3 * a3)) / (-a4 * d14);
        return {"1a",
                P(a4, p21, -a1, p24, -a3 / a4),
                {sq("c'(1,3,4,1)", -d14 / a4), eq("c'(1,3,4,3)", -d(3, 4) / (a4 * a4)),
                 eq("c'(1,3,4,4)", (a3 + b4) / a4)},
                [](const std::vector<Scalar>& r, Vec4& x, Vec4& y) {
                    x = {0, 0, 0, 1};
                    y = {r[0], 0, r[1], r[2]};
                }};
    }
    if (!a3.is_zero() && !(a3 == b4)) {
        Scalar den = a3 - b4;
        Scalar p14 = -(a3 * (a3 * b1 - b4 * b1 - a1 * b3)) / (den * b4);
        Scalar p21 = -(a2 * a3 + b3 * a3 - a2 * b4) / (a1 * den);
        Scalar p24 = ((-a1 * b3 * b3 + a3 * b1 * b3 + a2 * a3 * b1) + (-a1 * a3 * b2 - a2 * b1 * b4 + a1 * b2 * b4)) /
                     (a1 * den * b4);
        Draft dr{"1b",
                 P(a3, p21, p14, p24, b3 / den),
                 {sq("c'(1,2,4,1)", a1), eq("c'(1,3,4,4)", b4 / a3)},
                 [](const std::vector<Scalar>& r, Vec4& x, Vec4& y) {
                     x = {r[0], 0, 1, 0};
                     y = {0, 0, 0, r[1]};
                 }};
        dr.inferred = true;
        return dr;
    }
    if (!a3.is_zero()) {
        Scalar p24 = (a2 * b1 - a1 * b2) / (a1 * b4);
        return {"1c",
                P(b4, -a2 / a1, -b1, p24, 0),
                {sq("c'(1,2,4,1)", a1), eq("c'(1,3,4,3)", b3 / b4)},
                [](const std::vector<Scalar>& r, Vec4& x, Vec4& y) {
                    x = {r[0], 0, 1, 0};
                    y = {0, 0, r[1], 1};
                }};
    }
    Scalar p14 = (-a1 * b3 - b1 * b4) / b4;
    Scalar p24 = -(-a1 * b3 * b3 - a2 * b1 * b4 + a1 * b2 * b4) / (a1 * b4 * b4);
    return {"1d",
            P(b4, -a2 / a1, p14, p24, -b3 / b4),
            {sq("c'(1,2,4,1)", a1)},
            [](const std::vector<Scalar>& r, Vec4& x, Vec4& y) {
                x = {r[0], 0, 0, 0};
                y = {0, 0, 0, 1};
            }};
}

Draft subclass2(const FamilyAlgebra& f) {
    const Scalar &a1 = f.c124[0], &a2 = f.c124[1], &a3 = f.c124[2], &a4 = f.c124[3];
    const Scalar &b1 = f.c134[0], &b2 = f.c134[1], &b3 = f.c134[2], &b4 = f.c134[3];
    Draft dr;
    if (!a1.is_zero() || !a4.is_zero()) {
        // (c(1,3,4,1), c(1,3,4,4)) = lambda (c(1,2,4,1), c(1,2,4,4))
        const Scalar lam = a4.is_zero() ? b1 / a1 : b4 / a4;
        if (!a4.is_zero()) {
            return {"2a",
                    P(a4, 0, -a1, (a3 * a3 - a2 * a4) / (a4 * a4), -a3 / a4),
                    {eq("c'(1,3,4,2)", (lam * a3 * a3 - lam * a2 * a4 - b3 * a3 + a4 * b2) / (a4 * a4)),
                     eq("c'(1,3,4,3)", (b3 - lam * a3) / a4), eq("c'(1,3,4,4)", (lam * a4 + a3) / a4)},
                    [](const std::vector<Scalar>& r, Vec4& x, Vec4& y) {
                        x = {0, 0, 0, 1};
                        y = {0, r[0], r[1], r[2]};
                    }};
        }
        if (!a3.is_zero()) {
            dr = {"2b",
                  P(a3, -(a2 + b3) / a1, 0, 0, b3 / a3),
                  {sq("c'(1,2,4,1)", a1), eq("lambda'", (lam * a3 - b3) / a3),
                   eq("c'(1,3,4,2)", (-lam * a3 * b3 - lam * a2 * a3 + b3 * b3 + a3 * b2) / (a3 * a3))},
                  [](const std::vector<Scalar>& r, Vec4& x, Vec4& y) {
                      x = {r[0], 0, 1, 0};
                      y = {r[1] * r[0], r[2], 0, 0};
                  }};
            dr.inferred = true;
            return dr;
        }
        if (!b3.is_zero()) {
            dr = {"2c",
                  P(b3, -a2 / a1, 0, 0, (lam * a2 - b2) / b3),
                  {sq("c'(1,2,4,1)", a1), eq("lambda'", (-lam * a2 + lam * b3 + b2) / b3)},
                  [](const std::vector<Scalar>& r, Vec4& x, Vec4& y) {
                      x = {r[0], 0, 0, 0};
                      y = {r[1] * r[0], 0, 1, 0};
                  }};
            dr.inferred = true;
            return dr;
        }
        return {"2d",
                P((a1 * b2 - a2 * b1) / a1, -a2 / a1, 0, 0, b1 / a1),
                {sq("c'(1,2,4,1)", a1)},
                [](const std::vector<Scalar>& r, Vec4& x, Vec4& y) {
                    x = {r[0], 0, 0, 0};
                    y = {0, 1, 0, 0};
                }};
    }
    if (!a3.is_zero() && !b4.is_zero()) {
        return {"2e",
                P(a3, 0, -a3 * b1 / b4, (-a3 * b2 + a2 * b3) / (a3 * b4), -a2 / a3),
                {eq("c'(1,3,4,3)", (a2 * a3 + b3 * a3 - a2 * b4) / (a3 * a3)), eq("c'(1,3,4,4)", b4 / a3)},
                [](const std::vector<Scalar>& r, Vec4& x, Vec4& y) {
                    x = {0, 0, 1, 0};
                    y = {0, 0, r[0], r[1]};
                }};
    }
    if (!a3.is_zero()) {
        // c(1,3,4,4) = 0 with c(1,3,4,1) != 0: outside the standard case list
        dr = {"2i",
              P(a3, (a2 * b3 - a3 * b2) / (a3 * b1), 0, 0, -a2 / a3),
              {sq("c'(1,3,4,1)", b1), eq("c'(1,3,4,3)", (a2 + b3) / a3)},
              [](const std::vector<Scalar>& r, Vec4& x, Vec4& y) {
                  x = {0, 0, 1, 0};
                  y = {r[0], 0, r[1], 0};
              }};
        dr.inferred = true;
        dr.gap = true;
        return dr;
    }
    if (!b4.is_zero()) {
        dr = {"2f",
              P(b4, 0, -b1, (b3 * b3 - a2 * b3 - b2 * b4) / (b4 * b4), -b3 / b4),
              {eq("c'(1,2,4,2)", a2 / b4)},
              [](const std::vector<Scalar>& r, Vec4& x, Vec4& y) {
                  x = {0, r[0], 0, 0};
                  y = {0, 0, 0, 1};
              }};
        dr.inferred = true;
        return dr;
    }
    if (!b3.is_zero()) {
        return {"2g",
                P(b3, -b2 / b1, 0, 0, 0),
                {eq("c'(1,2,4,2)", a2 / b3), sq("c'(1,3,4,1)", b1)},
                [](const std::vector<Scalar>& r, Vec4& x, Vec4& y) {
                    x = {0, r[0], 0, 0};
                    y = {r[1], 0, 1, 0};
                }};
    }
    return {"2h",
            P(a2, 0, 0, 0, b2 / a2),
            {sq("c'(1,3,4,1)", b1)},
            [](const std::vector<Scalar>& r, Vec4& x, Vec4& y) {
                x = {0, 1, 0, 0};
                y = {r[0], 0, 0, 0};
            }};
}

Draft subclass3(const FamilyAlgebra& f) {
    const Scalar &a2 = f.c124[1], &a3 = f.c124[2];
    const Scalar &b2 = f.c134[1], &b3 = f.c134[2];
    Draft dr;
    if (!a3.is_zero()) {
        dr = {"3a",
              P(a3, 0, 0, 0, b3 / a3),
              {eq("c'(1,2,4,2)", (a2 + b3) / a3), eq("c'(1,3,4,2)", (a3 * b2 - a2 * b3) / (a3 * a3))},
              [](const std::vector<Scalar>& r, Vec4& x, Vec4& y) {
                  x = {0, r[0], 1, 0};
                  y = {0, r[1], 0, 0};
              }};
    } else if (!(b3 == a2)) {
        dr = {"3b",
              P(b3, 0, 0, 0, b2 / (a2 - b3)),
              {eq("c'(1,2,4,2)", a2 / b3)},
              [](const std::vector<Scalar>& r, Vec4& x, Vec4& y) {
                  x = {0, r[0], 0, 0};
                  y = {0, 0, 1, 0};
              }};
    } else {
        dr = {"3c",
              P(1, 0, 0, 0, 0, b3),
              {eq("c'(1,3,4,2)", b2 / b3)},
              [](const std::vector<Scalar>& r, Vec4& x, Vec4& y) {
                  x = {0, 1, 0, 0};
                  y = {0, r[0], 1, 0};
              }};
    }
    dr.inferred = true;
    return dr;
}

Draft subclass4(const FamilyAlgebra& f) {
    const Scalar &a1 = f.c124[0], &a2 = f.c124[1], &a3 = f.c124[2], &a4 = f.c124[3];
    const Scalar &b1 = f.c134[0], &b2 = f.c134[1], &b3 = f.c134[2], &b4 = f.c134[3];
    Draft dr;
    if (!all_zero(f.c124)) {
        // w2 and w3 dependent: c(1,3,4,.) = lambda c(1,2,4,.)
        Scalar lam;
        for (std::size_t p = 0; p < 4; ++p)
            if (!f.c124[p].is_zero()) {
                lam = f.c134[p] / f.c124[p];
                break;
            }
        if (!a4.is_zero()) {
            return {"4a",
                    P(a4, 0, -a1, (a3 * a3 - a2 * a4) / (a4 * a4), -a3 / a4),
                    {eq("lambda'", a3 / a4 + lam)},
                    [](const std::vector<Scalar>& r, Vec4& x, Vec4& y) {
                        x = {0, 0, 0, 1};
                        y = {0, 0, 0, r[0]};
                    }};
        }
        if (!a3.is_zero() && !a1.is_zero()) {
            return {"4b",
                    P(a3, (-lam * a3 - a2) / a1, 0, 0, lam),
                    {sq("c'(1,2,4,1)", a1)},
                    [](const std::vector<Scalar>& r, Vec4& x, Vec4& y) {
                        x = {r[0], 0, 1, 0};
                        y = {0, 0, 0, 0};
                    }};
        }
        if (!a3.is_zero()) {
            dr = {"4c",
                  P(a3, 0, 0, 0, -a2 / a3),
                  {eq("lambda'", a2 / a3 + lam)},
                  [](const std::vector<Scalar>& r, Vec4& x, Vec4& y) {
                      x = {0, 0, 1, 0};
                      y = {0, 0, r[0], 0};
                  }};
            dr.inferred = true;
            return dr;
        }
        if (!a1.is_zero()) {
            dr = {"4d",
                  P(1, -a2 / a1, 0, 0, lam),
                  {sq("c'(1,2,4,1)", a1)},
                  [](const std::vector<Scalar>& r, Vec4& x, Vec4& y) {
                      x = {r[0], 0, 0, 0};
                      y = {0, 0, 0, 0};
                  }};
            dr.inferred = true;
            return dr;
        }
        return {"4e",
                P(a2, 0, 0, 0, lam),
                {},
                [](const std::vector<Scalar>&, Vec4& x, Vec4& y) {
                    x = {0, 1, 0, 0};
                    y = {0, 0, 0, 0};
                }};
    }
    if (!b4.is_zero()) {
        return {"4f",
                P(b4, 0, -b1, (b3 * b3 - b2 * b4) / (b4 * b4), -b3 / b4),
                {},
                [](const std::vector<Scalar>&, Vec4& x, Vec4& y) {
                    x = {0, 0, 0, 0};
                    y = {0, 0, 0, 1};
                }};
    }
    if (!b3.is_zero()) {
        dr = {"4g",
              P(b3, 0, 0, 0, -b2 / b3),
              {sq("c'(1,3,4,1)", b1)},
              [](const std::vector<Scalar>& r, Vec4& x, Vec4& y) {
                  x = {0, 0, 0, 0};
                  y = {r[0], 0, 1, 0};
              }};
        dr.gap = b1.is_zero();
        return dr;
    }
    return {"4h",
            P(1, -b2 / b1, 0, 0, 0),
            {sq("c'(1,3,4,1)", b1)},
            [](const std::vector<Scalar>& r, Vec4& x, Vec4& y) {
                x = {0, 0, 0, 0};
                y = {r[0], 0, 0, 0};
            }};
}

Draft subclass5(const FamilyAlgebra& f) {
    const Scalar &a2 = f.c124[1], &a3 = f.c124[2];
    if (!a3.is_zero()) {
        return {"5b",
                P(a3, 0, 0, 0, -a2 / a3),
                {},
                [](const std::vector<Scalar>&, Vec4& x, Vec4& y) {
                    x = {0, 0, 1, 0};
                    y = {0, 0, 0, 0};
                }};
    }
    return {"5a",
            P(f.c134[1], 0, 0, 0, 0),
            {},
            [](const std::vector<Scalar>&, Vec4& x, Vec4& y) {
                x = {0, 0, 0, 0};
                y = {0, 1, 0, 0};
            }};
}

}  // namespace

CanonicalForm canonical_reduce(const FamilyAlgebra& f) {
    if (f.is_abelian()) throw DomainError("abelian");
    const MinorTable mt = minors(f);
    const SubclassLabel lab = subclass(f);
    Draft dr;
    switch (lab.label) {
        case Subclass::S1: dr = subclass1(f, mt); break;
        case Subclass::S2: dr = subclass2(f); break;
        case Subclass::S3: dr = subclass3(f); break;
        case Subclass::S4: dr = subclass4(f); break;
        case Subclass::S5: dr = subclass5(f); break;
        case Subclass::Abelian: throw DomainError("abelian");
    }

    // Replace each nonzero square-class residual by its class representative;
    // diag(1/t, t, t, t) rescales exactly the e1-coordinates by 1/t^2.
    std::vector<Scalar> used;
    Matrix Pw = dr.P;
    for (auto& r : dr.residuals) {
        if (r.by_square_class && !r.value.is_zero()) {
            r.square_class = square_class(r.value, f.field);
            auto t = sqrt_exact(r.value / r.square_class->rep, f.field);
            if (!t) throw InternalError("value / square class representative is not a square");
            Pw = commutant(t->inverse(), 0, 0, 0, 0, *t) * Pw;
            used.push_back(r.square_class->rep);
        } else {
            used.push_back(r.value);
        }
    }
    Vec4 x, y;
    dr.shape(used, x, y);

    CanonicalForm cf;
    cf.case_id = dr.id;
    cf.subclass = lab.label;
    cf.residuals = dr.residuals;
    cf.canonical = FamilyAlgebra(f.field, x, y);
    cf.canonical_B = cf.canonical.bmatrix();
    cf.witness_P = Pw;
    cf.inferred = dr.inferred;
    cf.case_gap = dr.gap;

    const Scalar dP = det(Pw);
    const BMatrix got = dP.is_zero() ? BMatrix{} : congruence(f.bmatrix(), Pw);
    if (dP.is_zero() || !commutes_with_alpha(Pw) || !(got == cf.canonical_B))
        throw InternalError("case " + dr.id + ": congruence check failed; P = " + Pw.str() +
                            ", B = " + f.bmatrix().B.str() + ", expected B' = " + cf.canonical_B.B.str() +
                            (dP.is_zero() ? ", det P = 0" : ", got " + got.B.str()));
    return cf;
}

ClassReport classify(const FamilyAlgebra& f) {
    ClassReport rep;
    rep.label = subclass(f);
    if (rep.label.label != Subclass::Abelian) rep.canonical = canonical_reduce(f);
    rep.multiplicative = is_multiplicative_family(f);
    const HomAlgebra a = f.to_hom();
    rep.derived2_dims = series(a, 2, SeriesKind::Derived).dims();
    rep.derived3_dims = series(a, 3, SeriesKind::Derived).dims();
    rep.central_dims = series(a, 3, SeriesKind::Central).dims();
    return rep;
}

IsomorphismResult isomorphic(const FamilyAlgebra& f, const FamilyAlgebra& g) {
    if (f.field != g.field) throw InputError("algebras over different fields");
    if (f.is_abelian() || g.is_abelian()) throw DomainError("abelian");
    const CanonicalForm cf = canonical_reduce(f);
    const CanonicalForm cg = canonical_reduce(g);
    IsomorphismResult res;
    if (cf.case_id == cg.case_id && cf.canonical_B == cg.canonical_B) {
        Matrix T = inverse(cg.witness_P) * cf.witness_P;
        if (!commutes_with_alpha(T) || !(congruence(f.bmatrix(), T) == g.bmatrix()))
            throw InternalError("composite witness fails the congruence check");
        res.isomorphic = true;
        res.witness = T;
        return res;
    }

    // Name the first distinguishing invariant.
    const ClassReport rf = classify(f);
    const ClassReport rg = classify(g);
    if (rf.label.label != rg.label.label)
        res.reason = "subclass";
    else if (rf.derived2_dims != rg.derived2_dims || rf.derived3_dims != rg.derived3_dims ||
             rf.central_dims != rg.central_dims)
        res.reason = "series dimensions";
    else if (rf.multiplicative != rg.multiplicative)
        res.reason = "multiplicativity";
    else if (rf.label.center_dim != rg.label.center_dim)
        res.reason = "center dimension";
    else if (cf.case_id != cg.case_id)
        res.reason = "case " + cf.case_id + " vs " + cg.case_id;
    else {
        for (std::size_t k = 0; k < cf.residuals.size() && res.reason.empty(); ++k) {
            const Residual& u = cf.residuals[k];
            const Residual& v = cg.residuals[k];
            if (u.by_square_class) {
                if (u.value.is_zero() != v.value.is_zero() ||
                    (!u.value.is_zero() && !(*u.square_class == *v.square_class)))
                    res.reason = "square class of " + u.name;
            } else if (!(u.value == v.value)) {
                res.reason = "residual " + u.name;
            }
        }
    }
    if (res.reason.empty()) throw InternalError("canonical forms differ but every invariant agrees");
    return res;
}

void enumerate(const std::vector<Scalar>& grid, const EnumerateOptions& opts,
               const std::function<void(const FamilyAlgebra&, const ClassReport&)>& sink) {
    if (grid.empty()) return;
    for (const auto& s : grid) require_in_field(s, opts.field);
    const std::size_t g = grid.size();
    std::size_t total = 1;
    for (int k = 0; k < 8; ++k) total *= g;

    auto instance = [&](std::size_t idx) {
        std::array<std::size_t, 8> digit{};
        for (int k = 7; k >= 0; --k) {
            digit[static_cast<std::size_t>(k)] = idx % g;
            idx /= g;
        }
        Vec4 a, b;
        for (std::size_t k = 0; k < 4; ++k) {
            a[k] = grid[digit[k]];
            b[k] = grid[digit[k + 4]];
        }
        return FamilyAlgebra(opts.field, a, b);
    };

    unsigned workers = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    const std::size_t chunk = std::max<std::size_t>(1, opts.chunk);
    using Item = std::optional<std::pair<FamilyAlgebra, ClassReport>>;
    auto work = [&](std::size_t from, std::size_t to) {
        std::vector<Item> out;
        for (std::size_t i = from; i < to; ++i) {
            FamilyAlgebra f = instance(i);
            if (opts.filter && subclass(f).label != *opts.filter) {
                out.emplace_back();
                continue;
            }
            out.emplace_back(std::make_pair(f, classify(f)));
        }
        return out;
    };

    for (std::size_t start = 0; start < total; start += chunk * workers) {
        std::vector<std::future<std::vector<Item>>> jobs;
        for (unsigned w = 0; w < workers; ++w) {
            std::size_t from = start + w * chunk;
            if (from >= total) break;
            std::size_t to = std::min(total, from + chunk);
            if (workers == 1)
                jobs.push_back(std::async(std::launch::deferred, work, from, to));
            else
                jobs.push_back(std::async(std::launch::async, work, from, to));
        }
        for (auto& j : jobs)
            for (auto& item : j.get())
                if (item) sink(item->first, item->second);
    }
}

}  // namespace homlie
