#pragma once

#include <optional>
#include <string>
#include <vector>

#include "homlie/homalg.hpp"

namespace homlie {

enum class SeriesKind { Derived, Central };

struct SeriesReport {
    SeriesKind kind = SeriesKind::Derived;
    int k = 2;
    std::vector<Subspace> terms;  // terms[0] is the starting ideal
    std::optional<int> cls;       // smallest r with terms[r] = 0

    std::vector<std::size_t> dims() const;
};

Subspace bracket_span(const HomAlgebra& a, const std::vector<Subspace>& parts);

// Whole-algebra series when ideal is omitted.
SeriesReport series(const HomAlgebra& a, int k, SeriesKind kind, const std::optional<Subspace>& ideal = std::nullopt);

Subspace center(const HomAlgebra& a);

struct SubspaceStatus {
    bool weak_subalgebra = false;
    bool hom_subalgebra = false;
    bool weak_ideal = false;
    bool hom_ideal = false;
};

SubspaceStatus subspace_status(const HomAlgebra& a, const Subspace& w);
// Same predicates with `outer` (a subspace containing w) in place of A.
SubspaceStatus subspace_status_in(const HomAlgebra& a, const Subspace& outer, const Subspace& w);

struct NilpotencyProfile {
    bool nilpotent = false;
    std::optional<int> cls;
    std::size_t center_dim = 0;
};

NilpotencyProfile nilpotency_profile(const HomAlgebra& a);

}  // namespace homlie
