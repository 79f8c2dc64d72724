#include <doctest.h>

#include <map>
#include <set>

#include "homlie/classify.hpp"
#include "support.hpp"

using namespace homlie;
using testkit::Rng;

namespace {

FamilyAlgebra fam(std::array<Scalar, 4> a, std::array<Scalar, 4> b, Field f = Field::Q) { return FamilyAlgebra(f, a, b); }

std::string key(const FamilyAlgebra& f) {
    std::string s;
    for (const auto& x : f.c124) s += x.str() + ",";
    for (const auto& x : f.c134) s += x.str() + ",";
    return s;
}

// All images of f under commutants with p11, p33 in {+-1, +-2} and the
// other free entries in {-1, 0, 1}, computed straight from the formula
// B' = det(T)^-1 T B T^t.
std::set<std::string> orbit(const FamilyAlgebra& f) {
    std::set<std::string> out;
    const int big[4] = {-2, -1, 1, 2};
    const Matrix B = f.bmatrix().B;
    for (int p11 : big)
        for (int p33 : big)
            for (int p21 = -1; p21 <= 1; ++p21)
                for (int p14 = -1; p14 <= 1; ++p14)
                    for (int p24 = -1; p24 <= 1; ++p24)
                        for (int p23 = -1; p23 <= 1; ++p23) {
                            Matrix T(4, 4);
                            T(0, 0) = p11;
                            T(0, 3) = p14;
                            T(1, 0) = p21;
                            T(1, 1) = p33;
                            T(1, 2) = p23;
                            T(1, 3) = p24;
                            T(2, 2) = p33;
                            T(2, 3) = p23;
                            T(3, 3) = p33;
                            const Matrix Bp = det(T).inverse() * (T * B * T.transpose());
                            std::array<Scalar, 4> a, b;
                            for (std::size_t p = 0; p < 4; ++p) {
                                a[p] = -Bp(p, 2);
                                b[p] = Bp(p, 1);
                                REQUIRE(Bp(p, 0).is_zero());
                                REQUIRE(Bp(p, 3).is_zero());
                            }
                            out.insert(key(FamilyAlgebra(f.field, a, b)));
                        }
    return out;
}

}  // namespace

TEST_SUITE("classify") {
    TEST_CASE("minors") {
        const MinorTable m = minors(fam({1, 0, 0, 0}, {0, 0, 0, 1}));
        for (int p = 1; p <= 4; ++p)
            for (int q = p + 1; q <= 4; ++q) CHECK(m(p, q) == Scalar(p == 1 && q == 4 ? 1 : 0));
        const MinorTable z = minors(fam({0, 0, 0, 0}, {0, 0, 0, 0}));
        CHECK(z.M.is_zero());
        const MinorTable s3 = minors(fam({0, 1, 0, 0}, {0, 0, 2, 0}));
        CHECK(s3(2, 3) == Scalar(2));
        CHECK(s3.M.is_zero());
    }

    TEST_CASE("subclass examples") {
        CHECK(subclass(fam({1, 0, 0, 0}, {0, 0, 0, 1})).label == Subclass::S1);
        const SubclassLabel s5 = subclass(fam({0, 0, 0, 0}, {0, 1, 0, 0}));
        CHECK(s5.label == Subclass::S5);
        CHECK(*s5.nilpotency == 2);
        CHECK(s5.center_dim == 1);
        const SubclassLabel s3 = subclass(fam({0, 1, 0, 0}, {0, 0, 2, 0}));
        CHECK(s3.label == Subclass::S3);
        CHECK(*s3.solvability2 == 2);
        CHECK(subclass(fam({0, 0, 0, 0}, {0, 0, 0, 0})).label == Subclass::Abelian);
    }

    TEST_CASE("multiplicative family") {
        CHECK(is_multiplicative_family(fam({1, 0, 0, 0}, {0, 5, 0, 0})));
        CHECK_FALSE(is_multiplicative_family(fam({0, 0, 0, 0}, {0, 0, 0, 1})));
        CHECK(is_multiplicative_family(fam({0, 0, 0, 0}, {0, 0, 0, 0})));
    }

    TEST_CASE("canonical examples") {
        const CanonicalForm d = canonical_reduce(fam({4, 0, 0, 0}, {0, 0, 0, 1}));
        CHECK(d.case_id == "1d");
        REQUIRE(d.residuals.size() == 1);
        CHECK(d.residuals[0].square_class->rep == Scalar(1));
        CHECK(d.canonical == fam({1, 0, 0, 0}, {0, 0, 0, 1}));

        const CanonicalForm a = canonical_reduce(fam({0, 0, 6, 2}, {0, 0, 0, 0}));
        CHECK(a.case_id == "4a");
        CHECK(a.residuals[0].value == Scalar(3));
        CHECK(a.canonical == fam({0, 0, 0, 1}, {0, 0, 0, 3}));

        const FamilyAlgebra f5 = fam({0, 0, 0, 0}, {0, 1, 0, 0});
        const CanonicalForm c5 = canonical_reduce(f5);
        CHECK(c5.case_id == "5a");
        CHECK(c5.canonical == f5);
        CHECK(commutes_with_alpha(c5.witness_P));
        CHECK_THROWS_AS(canonical_reduce(fam({0, 0, 0, 0}, {0, 0, 0, 0})), DomainError);
    }

    TEST_CASE("gap cases are flagged") {
        const CanonicalForm g = canonical_reduce(fam({0, 0, 0, 0}, {0, 1, 2, 0}));
        CHECK(g.case_id == "4g");
        CHECK(g.case_gap);
        CHECK(g.residuals[0].value.is_zero());
        const CanonicalForm i = canonical_reduce(fam({0, 1, 2, 0}, {3, 1, 1, 0}));
        CHECK(i.case_id == "2i");
        CHECK(i.case_gap);
        CHECK(i.inferred);
        CHECK_FALSE(canonical_reduce(fam({0, 0, 0, 0}, {1, 1, 2, 0})).case_gap);
    }

    TEST_CASE("isomorphism examples") {
        const IsomorphismResult y = isomorphic(fam({1, 0, 0, 0}, {0, 0, 0, 1}), fam({4, 0, 0, 0}, {0, 0, 0, 1}));
        CHECK(y.isomorphic);
        REQUIRE(y.witness.has_value());
        CHECK(congruence(fam({1, 0, 0, 0}, {0, 0, 0, 1}).bmatrix(), *y.witness) == fam({4, 0, 0, 0}, {0, 0, 0, 1}).bmatrix());
        CHECK_FALSE(isomorphic(fam({1, 0, 0, 0}, {0, 0, 0, 1}), fam({2, 0, 0, 0}, {0, 0, 0, 1})).isomorphic);
        CHECK(isomorphic(fam({1, 0, 0, 0}, {0, 0, 0, 1}, Field::Qi), fam({-1, 0, 0, 0}, {0, 0, 0, 1}, Field::Qi)).isomorphic);
        const IsomorphismResult n5 = isomorphic(fam({0, 0, 0, 0}, {0, 1, 0, 0}), fam({0, 0, 1, 0}, {0, 0, 0, 0}));
        CHECK_FALSE(n5.isomorphic);
        CHECK(n5.reason == "multiplicativity");
        CHECK_THROWS_AS(isomorphic(fam({0, 0, 0, 0}, {0, 0, 0, 0}), fam({0, 0, 1, 0}, {0, 0, 0, 0})), DomainError);
    }

    TEST_CASE("decision tree totality and case conditions") {
        Rng r(61);
        std::map<std::string, int> seen;
        for (int k = 0; k < 10000; ++k) {
            const Field fld = k % 4 == 0 ? Field::Qi : Field::Q;
            const FamilyAlgebra f = testkit::random_family(r, fld, 3, k % 2 ? 0.4 : 0.65);
            if (f.is_abelian()) continue;
            const CanonicalForm cf = canonical_reduce(f);
            seen[cf.case_id]++;
            CHECK_MESSAGE(cf.case_id == testkit::expected_case(f), key(f));
            CHECK(subclass_name(cf.subclass) == testkit::expected_subclass(f));
            CHECK(commutes_with_alpha(cf.witness_P));
            CHECK_FALSE(det(cf.witness_P).is_zero());
            CHECK(congruence(f.bmatrix(), cf.witness_P) == cf.canonical_B);
            if (cf.subclass == Subclass::S3) {
                CHECK(f.c124[0].is_zero());
                CHECK(f.c124[3].is_zero());
                CHECK(f.c134[0].is_zero());
                CHECK(f.c134[3].is_zero());
            }
        }
        for (const auto& c : testkit::case_templates()) CHECK_MESSAGE(seen[c.id] > 0, "case never reached: ", c.id);
    }

    TEST_CASE("golden subclass and case counts on the grid {-1,0,1}") {
        // from tests/oracle/subclass_counts.py
        const std::map<std::string, int> sub_golden = {{"Abelian", 1}, {"S1", 3888}, {"S2", 2304}, {"S3", 48}, {"S4", 312}, {"S5", 8}};
        const std::map<std::string, int> case_golden = {
            {"1a", 2916}, {"1b", 324}, {"1c", 324}, {"1d", 324}, {"2a", 1296}, {"2b", 288}, {"2c", 108},
            {"2d", 36},   {"2e", 324}, {"2f", 108}, {"2g", 24},  {"2h", 12},   {"2i", 108}, {"3a", 36},
            {"3b", 6},    {"3c", 6},   {"4a", 162}, {"4b", 36},  {"4c", 12},   {"4d", 18},  {"4e", 6},
            {"4f", 54},   {"4g", 18},  {"4h", 6},   {"5a", 2},   {"5b", 6}};
        std::map<std::string, int> subs, cases;
        std::vector<std::string> order;
        EnumerateOptions opt;
        opt.threads = 2;
        opt.chunk = 300;
        enumerate({-1, 0, 1}, opt, [&](const FamilyAlgebra& f, const ClassReport& rep) {
            subs[subclass_name(rep.label.label)]++;
            if (rep.canonical) cases[rep.canonical->case_id]++;
            order.push_back(key(f));
        });
        CHECK(order.size() == 6561);
        CHECK(order[1] == "-1,-1,-1,-1,-1,-1,-1,0,");
        CHECK(order.front() == "-1,-1,-1,-1,-1,-1,-1,-1,");
        CHECK(order.back() == "1,1,1,1,1,1,1,1,");
        CHECK(subs == sub_golden);
        CHECK(cases == case_golden);
        // deterministic across thread counts
        std::vector<std::string> again;
        opt.threads = 1;
        opt.chunk = 97;
        enumerate({-1, 0, 1}, opt, [&](const FamilyAlgebra& f, const ClassReport&) { again.push_back(key(f)); });
        CHECK(again == order);
    }

    TEST_CASE("enumerate filters") {
        EnumerateOptions opt;
        opt.filter = Subclass::S5;
        int n = 0;
        enumerate({0, 1}, opt, [&](const FamilyAlgebra& f, const ClassReport& rep) {
            ++n;
            CHECK(testkit::expected_subclass(f) == "S5");
            CHECK(nilpotency_profile(f.to_hom()).nilpotent);
            CHECK(rep.label.label == Subclass::S5);
        });
        int expected = 0;
        for (int m = 0; m < 256; ++m) {
            std::array<Scalar, 4> a, b;
            for (int k = 0; k < 4; ++k) {
                a[static_cast<std::size_t>(k)] = (m >> k) & 1;
                b[static_cast<std::size_t>(k)] = (m >> (k + 4)) & 1;
            }
            expected += testkit::expected_subclass(FamilyAlgebra(Field::Q, a, b)) == "S5";
        }
        CHECK(n == expected);
        CHECK(n > 0);
        int z = 0;
        enumerate({0}, EnumerateOptions{}, [&](const FamilyAlgebra& f, const ClassReport& rep) {
            ++z;
            CHECK(f.is_abelian());
            CHECK(rep.label.label == Subclass::Abelian);
        });
        CHECK(z == 1);
    }

    TEST_CASE("invariance under commutant changes of basis") {
        Rng r(62);
        for (int k = 0; k < 60; ++k) {
            const Field fld = k % 3 ? Field::Q : Field::Qi;
            const FamilyAlgebra f = testkit::random_family(r, fld, 3, 0.55);
            if (f.is_abelian()) continue;
            const CanonicalForm cf = canonical_reduce(f);
            for (int t = 0; t < 5; ++t) {
                const FamilyAlgebra g = testkit::transport(f, testkit::random_commutant(r, fld));
                const CanonicalForm cg = canonical_reduce(g);
                CHECK(cg.case_id == cf.case_id);
                CHECK(cg.canonical_B == cf.canonical_B);
                const IsomorphismResult iso = isomorphic(f, g);
                CHECK(iso.isomorphic);
                CHECK(testkit::transport(f, *iso.witness) == g);
            }
        }
    }

    TEST_CASE("isomorphism verdicts against a brute-force orbit search") {
        Rng r(63);
        std::vector<FamilyAlgebra> pool;
        while (pool.size() < 24) {
            FamilyAlgebra f = testkit::random_family(r, Field::Q, 2, 0.6);
            if (f.is_abelian()) continue;
            pool.push_back(f);
            // an isomorphic partner and a square-class partner
            pool.push_back(testkit::transport(f, testkit::random_commutant(r, Field::Q, 1)));
            pool.push_back(FamilyAlgebra(Field::Q, {f.c124[0] * Scalar(2), f.c124[1], f.c124[2], f.c124[3]},
                                         {f.c134[0] * Scalar(2), f.c134[1], f.c134[2], f.c134[3]}));
        }
        std::size_t iso_pairs = 0, non_pairs = 0;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (pool[i].is_abelian()) continue;
            const std::set<std::string> orb = orbit(pool[i]);
            for (std::size_t j = 0; j < pool.size(); ++j) {
                if (pool[j].is_abelian()) continue;
                const IsomorphismResult res = isomorphic(pool[i], pool[j]);
                if (orb.count(key(pool[j]))) CHECK(res.isomorphic);
                if (res.isomorphic) {
                    ++iso_pairs;
                    CHECK(commutes_with_alpha(*res.witness));
                    CHECK(congruence(pool[i].bmatrix(), *res.witness) == pool[j].bmatrix());
                } else {
                    ++non_pairs;
                    CHECK_FALSE(res.reason.empty());
                    // the named invariant really differs
                    const ClassReport a = classify(pool[i]), b = classify(pool[j]);
                    const bool differs = a.label.label != b.label.label || a.derived2_dims != b.derived2_dims ||
                                         a.derived3_dims != b.derived3_dims || a.central_dims != b.central_dims ||
                                         a.multiplicative != b.multiplicative ||
                                         a.label.center_dim != b.label.center_dim ||
                                         a.canonical->case_id != b.canonical->case_id ||
                                         !(a.canonical->canonical_B == b.canonical->canonical_B);
                    CHECK(differs);
                }
            }
        }
        CHECK(iso_pairs > pool.size());
        CHECK(non_pairs > 0);
    }
}
