#pragma once

#include <optional>
#include <string>
#include <vector>

#include "homlie/homalg.hpp"

namespace homlie {

// Template shapes of the twisting map for which a closed polynomial
// system in the entries of B replaces the brute-force identity check.
struct TwistShape {
    enum class Kind { DiagInvertible, DiagKer1, DiagKer2, NilKer1, NilKer2, General };
    Kind kind = Kind::General;
    std::vector<Scalar> lambdas;  // diagonal shapes only, lambda_1..lambda_{n+1}
    int i0 = 0;                   // NilKer2 only: ker alpha = <e_1, e_i0>

    static TwistShape diag(std::vector<Scalar> lambdas);  // picks the diagonal kind
    static TwistShape nil_ker1() { return {Kind::NilKer1, {}, 0}; }
    static TwistShape nil_ker2(int i0) { return {Kind::NilKer2, {}, i0}; }

    Matrix template_matrix(int dim) const;
    std::string name() const;
};

// Shape of a's single twisting map, General when no template matches.
TwistShape detect_shape(const HomAlgebra& a);

struct HnfResult {
    bool ok = true;
    Tuple x, y;     // witness argument blocks when !ok
    Vector defect;
};

// Defect of the Hom-Nambu-Filippov identity at concrete vectors.
Vector hnf_defect(const HomAlgebra& a, const std::vector<Vector>& x, const std::vector<Vector>& y);

// Evaluates the defect on basis tuples. Increasing blocks suffice when all
// twists coincide; otherwise, or when exhaustive is set, every ordered
// tuple is tried.
HnfResult check_hnf_bruteforce(const HomAlgebra& a, bool exhaustive = false);

struct PolynomialResult {
    bool ok = true;
    std::vector<std::string> failing;  // labels of nonvanishing equations
};

// Throws InputError naming the first off-template entry of [alpha].
PolynomialResult check_hnf_polynomial(const HomAlgebra& a, const TwistShape& shape);

struct MultiplicativeReport {
    bool multiplicative = true;
    MorphismCheck direct;
    std::optional<bool> image_in_kernel;  // [A,..,A] in ker alpha, when dim ker alpha >= 2
    std::optional<bool> alpha_b_zero;     // [alpha] B = 0, when dim ker alpha >= 2
};

// Throws DomainError unless a has a single twisting map; throws
// InternalError when the criteria disagree.
MultiplicativeReport check_multiplicative(const HomAlgebra& a);

// Criterion for a nilpotent alpha with one-dimensional kernel in Jordan form:
// alpha(w_1) = (-1)^n w_{n+1} and alpha(w_i) = 0 for i >= 2.
bool nilker1_multiplicative(const BMatrix& bm, const Matrix& alpha);

}  // namespace homlie
