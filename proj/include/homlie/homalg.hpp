#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homlie/linalg.hpp"

namespace homlie {

using Tuple = std::vector<int>;  // 1-based basis indices

int permutation_sign(const std::vector<int>& p);
std::vector<Tuple> increasing_tuples(int dim, int len);

// Skew-symmetric n-linear map stored on strictly increasing index tuples.
class Bracket {
public:
    Bracket() = default;
    Bracket(int dim, int arity);

    int dim() const { return dim_; }
    int arity() const { return arity_; }
    const std::map<Tuple, Vector>& table() const { return table_; }

    // Stores c(i_1..i_n; .) for an increasing tuple; zero vectors are dropped.
    void set(const Tuple& increasing, const Vector& value);
    // Any tuple: zero on repeats, signed on permutations.
    Vector get(const Tuple& indices) const;
    Vector eval(const std::vector<Vector>& args) const;
    bool is_zero() const { return table_.empty(); }

    friend bool operator==(const Bracket& a, const Bracket& b) {
        return a.dim_ == b.dim_ && a.arity_ == b.arity_ && a.table_ == b.table_;
    }

private:
    int dim_ = 0;
    int arity_ = 0;
    std::map<Tuple, Vector> table_;
};

// (n+1)x(n+1) dual view: b(p,i) is the e_p coefficient of w_i.
struct BMatrix {
    int n = 0;
    Matrix B;
    const Scalar& b(int p, int i) const { return B(p - 1, i - 1); }
    Scalar& b(int p, int i) { return B(p - 1, i - 1); }
    friend bool operator==(const BMatrix& x, const BMatrix& y) { return x.n == y.n && x.B == y.B; }
};

BMatrix to_bmatrix(const Bracket& br);
Bracket from_bmatrix(const BMatrix& bm);

struct HomAlgebra {
    Field field = Field::Q;
    Bracket bracket;
    std::vector<Matrix> twists;  // arity - 1 entries

    int dim() const { return bracket.dim(); }
    int arity() const { return bracket.arity(); }
    bool single_twist() const;
    const Matrix& alpha() const { return twists.at(0); }
    void validate() const;  // throws InputError

    Vector eval(const std::vector<Vector>& args) const { return bracket.eval(args); }
    Vector eval(const Tuple& indices) const { return bracket.get(indices); }

    friend bool operator==(const HomAlgebra& a, const HomAlgebra& b) {
        return a.field == b.field && a.bracket == b.bracket && a.twists == b.twists;
    }
};

HomAlgebra make_algebra(Field f, const Bracket& br, const Matrix& alpha);

// The 8-parameter family in dimension 4, arity 3, with the fixed
// nilpotent twist alpha(e3) = e2, alpha(e4) = e3.
struct FamilyAlgebra {
    Field field = Field::Q;
    std::array<Scalar, 4> c124;  // [e1,e2,e4] coordinates
    std::array<Scalar, 4> c134;  // [e1,e3,e4] coordinates

    FamilyAlgebra() = default;
    FamilyAlgebra(Field f, std::array<Scalar, 4> a, std::array<Scalar, 4> b);

    static Matrix alpha();
    HomAlgebra to_hom() const;
    BMatrix bmatrix() const;
    bool is_abelian() const;

    // Recovers the parameters when a has the family shape (alpha fixed,
    // [e1,e2,e3] = [e2,e3,e4] = 0); nullopt otherwise.
    static std::optional<FamilyAlgebra> from_hom(const HomAlgebra& a);

    friend bool operator==(const FamilyAlgebra& x, const FamilyAlgebra& y) {
        return x.field == y.field && x.c124 == y.c124 && x.c134 == y.c134;
    }
};

// det(T)^-1 * T * B * T^t
BMatrix congruence(const BMatrix& bm, const Matrix& T);

// Isomorphic algebra in coordinates x' = T x. Uses the B form when
// dim = arity + 1, multilinear transport otherwise.
HomAlgebra change_basis(const HomAlgebra& a, const Matrix& T);
HomAlgebra change_basis_multilinear(const HomAlgebra& a, const Matrix& T);

// Matrix sending e_k to e_sigma(k); sigma is 1-based, sigma[k-1] = sigma(k).
Matrix permutation_matrix(const std::vector<int>& sigma);
BMatrix permute_basis(const BMatrix& bm, const std::vector<int>& sigma);

struct MorphismCheck {
    bool ok = true;
    std::optional<Tuple> failing_tuple;
    Vector defect;                      // f[e_I] - [f e_I] at the failing tuple
    std::optional<Matrix> intertwining; // f alpha_i - beta_i f when nonzero
    std::size_t twist_index = 0;
};

MorphismCheck is_morphism(const Matrix& f, const HomAlgebra& src, const HomAlgebra& dst, bool weak);

class NotWeakMorphism : public DomainError {
public:
    NotWeakMorphism(const std::string& what, Tuple witness) : DomainError(what), witness(std::move(witness)) {}
    Tuple witness;
};

// Throws NotWeakMorphism carrying the failing basis tuple.
HomAlgebra yau_twist(const HomAlgebra& a, const Matrix& beta);

}  // namespace homlie
