#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "homlie/homalg.hpp"
#include "homlie/structure.hpp"

namespace homlie {

struct MinorTable {
    // d(p,q) = c(1,2,4,p) c(1,3,4,q) - c(1,2,4,q) c(1,3,4,p), 1-based
    Scalar d[5][5];
    Matrix M;  // [[d(2,4), d(3,4)], [d(1,2), d(1,3)]]
    const Scalar& operator()(int p, int q) const { return d[p][q]; }
};

MinorTable minors(const FamilyAlgebra& f);

enum class Subclass { Abelian, S1, S2, S3, S4, S5 };
std::string subclass_name(Subclass s);

struct SubclassLabel {
    Subclass label = Subclass::Abelian;
    std::optional<int> solvability2;  // 2-derived class
    std::optional<int> solvability3;  // 3-derived class
    std::optional<int> nilpotency;    // central class
    std::size_t center_dim = 0;
    std::size_t rank_b = 0;
};

// Decision tree on the minors, cross-checked against the structure module.
SubclassLabel subclass(const FamilyAlgebra& f);

// c(1,2,4,3) = c(1,2,4,4) = c(1,3,4,3) = c(1,3,4,4) = 0, cross-checked
// against the general multiplicativity test.
bool is_multiplicative_family(const FamilyAlgebra& f);

// Commutant of the family twist; all invertible ones have this shape.
Matrix commutant(const Scalar& p11, const Scalar& p21, const Scalar& p14, const Scalar& p24, const Scalar& p23,
                 const Scalar& p33);
bool commutes_with_alpha(const Matrix& P);

struct Residual {
    std::string name;   // e.g. "c'(1,3,4,1)" or "lambda'"
    Scalar value;       // computed from the input parameters
    bool by_square_class = false;
    std::optional<SquareClassRep> square_class;  // nonzero square-class residuals
};

struct CanonicalForm {
    std::string case_id;
    Subclass subclass = Subclass::Abelian;
    std::vector<Residual> residuals;
    FamilyAlgebra canonical;  // residuals substituted, square classes as representatives
    BMatrix canonical_B;
    Matrix witness_P;
    bool inferred = false;   // isomorphism condition derived from the stabiliser, not listed
    bool case_gap = false;   // case outside the standard case list
};

// Throws DomainError("abelian") on B = 0 and InternalError when the
// congruence check fails.
CanonicalForm canonical_reduce(const FamilyAlgebra& f);

struct IsomorphismResult {
    bool isomorphic = false;
    std::optional<Matrix> witness;  // T with det(T)^-1 T B_f T^t = B_g, T alpha = alpha T
    std::string reason;             // why not, when false
};

IsomorphismResult isomorphic(const FamilyAlgebra& f, const FamilyAlgebra& g);

struct ClassReport {
    SubclassLabel label;
    std::optional<CanonicalForm> canonical;  // absent for abelian
    bool multiplicative = true;
    std::vector<std::size_t> derived2_dims, derived3_dims, central_dims;
};

ClassReport classify(const FamilyAlgebra& f);

struct EnumerateOptions {
    Field field = Field::Q;
    std::optional<Subclass> filter;
    unsigned threads = 0;     // 0: hardware concurrency
    std::size_t chunk = 256;  // grid points per parallel batch
};

// Every family instance with parameters from grid, in lexicographic order
// of (c124, c134); sink sees results in that order.
void enumerate(const std::vector<Scalar>& grid, const EnumerateOptions& opts,
               const std::function<void(const FamilyAlgebra&, const ClassReport&)>& sink);

}  // namespace homlie
