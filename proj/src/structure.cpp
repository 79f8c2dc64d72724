#include "homlie/structure.hpp"

#include <functional>

#include "homlie/identity.hpp"

namespace homlie {

std::vector<std::size_t> SeriesReport::dims() const {
    std::vector<std::size_t> d;
    for (const auto& t : terms) d.push_back(t.dim());
    return d;
}

Subspace bracket_span(const HomAlgebra& a, const std::vector<Subspace>& parts) {
    const auto d = static_cast<std::size_t>(a.dim());
    if (static_cast<int>(parts.size()) != a.arity()) throw InputError("bracket_span needs one part per argument");
    for (const auto& p : parts) {
        if (p.ambient_dim() != d) throw DomainError("part lives in the wrong ambient space");
        if (p.is_zero()) return Subspace(d);
    }
    // Consecutive equal parts only need strictly increasing basis picks:
    // repeats vanish and reorderings change the sign only.
    const std::size_t m = parts.size();
    std::vector<bool> same_as_prev(m, false);
    for (std::size_t k = 1; k < m; ++k) same_as_prev[k] = parts[k] == parts[k - 1];

    std::vector<Vector> images;
    std::vector<std::size_t> pick(m, 0);
    std::function<void(std::size_t)> walk = [&](std::size_t k) {
        if (k == m) {
            std::vector<Vector> args;
            for (std::size_t j = 0; j < m; ++j) args.push_back(parts[j].basis()[pick[j]]);
            Vector v = a.bracket.eval(args);
            if (!is_zero(v)) images.push_back(std::move(v));
            return;
        }
        std::size_t from = same_as_prev[k] ? pick[k - 1] + 1 : 0;
        for (std::size_t i = from; i < parts[k].dim(); ++i) {
            pick[k] = i;
            walk(k + 1);
        }
    };
    walk(0);
    return Subspace::span(d, images);
}

SeriesReport series(const HomAlgebra& a, int k, SeriesKind kind, const std::optional<Subspace>& ideal) {
    const int n = a.arity();
    if (k < 2 || k > n) throw InputError("series index k must satisfy 2 <= k <= n");
    const auto d = static_cast<std::size_t>(a.dim());
    const Subspace whole = Subspace::whole(d);
    const Subspace start = ideal.value_or(whole);
    if (!whole.contains(start)) throw DomainError("ideal is not a subspace of A");

    SeriesReport rep{kind, k, {start}, std::nullopt};
    if (start.is_zero()) {
        rep.cls = 0;
        return rep;
    }
    const std::size_t cap = d + 2;
    while (rep.terms.size() <= cap) {
        const Subspace& cur = rep.terms.back();
        std::vector<Subspace> parts;
        if (kind == SeriesKind::Derived) {
            parts.assign(static_cast<std::size_t>(k), cur);
        } else {
            parts.push_back(cur);
            parts.insert(parts.end(), static_cast<std::size_t>(k - 1), start);
        }
        parts.insert(parts.end(), static_cast<std::size_t>(n - k), whole);
        Subspace next = bracket_span(a, parts);
        if (next == cur) break;
        rep.terms.push_back(next);
        if (next.is_zero()) {
            rep.cls = static_cast<int>(rep.terms.size() - 1);
            break;
        }
    }

    if (kind == SeriesKind::Central && !ideal && k != n) {
        // on the whole algebra every k gives the same central series
        SeriesReport other = series(a, n, kind);
        if (other.terms != rep.terms)
            throw InternalError("central series of A depends on k");
    }
    return rep;
}

Subspace center(const HomAlgebra& a) {
    const int d = a.dim();
    const int n = a.arity();
    // Stack the maps z -> [e_I, z] for every increasing (n-1)-tuple I.
    std::vector<Tuple> tuples = increasing_tuples(d, n - 1);
    Matrix stacked(tuples.size() * static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    for (std::size_t t = 0; t < tuples.size(); ++t) {
        for (int j = 1; j <= d; ++j) {
            Tuple idx = tuples[t];
            idx.push_back(j);
            Vector v = a.bracket.get(idx);
            for (int p = 0; p < d; ++p)
                stacked(t * static_cast<std::size_t>(d) + static_cast<std::size_t>(p), static_cast<std::size_t>(j - 1)) =
                    v[static_cast<std::size_t>(p)];
        }
    }
    if (tuples.empty()) return Subspace::whole(static_cast<std::size_t>(d));
    return kernel(stacked);
}

namespace {

bool twist_invariant(const HomAlgebra& a, const Subspace& w) {
    for (const auto& t : a.twists)
        if (!w.contains(w.image(t))) return false;
    return true;
}

}  // namespace

SubspaceStatus subspace_status_in(const HomAlgebra& a, const Subspace& outer, const Subspace& w) {
    const auto d = static_cast<std::size_t>(a.dim());
    if (w.ambient_dim() != d || outer.ambient_dim() != d) throw DomainError("subspace ambient dimension mismatch");
    if (!outer.contains(w)) throw DomainError("subspace is not contained in the enclosing space");
    const auto n = static_cast<std::size_t>(a.arity());
    SubspaceStatus s;
    s.weak_subalgebra = w.contains(bracket_span(a, std::vector<Subspace>(n, w)));
    std::vector<Subspace> parts(n - 1, outer);
    parts.push_back(w);
    s.weak_ideal = w.contains(bracket_span(a, parts));
    const bool invariant = twist_invariant(a, w);
    s.hom_subalgebra = s.weak_subalgebra && invariant;
    s.hom_ideal = s.weak_ideal && invariant;
    if ((s.hom_ideal && !s.weak_ideal) || (s.weak_ideal && !s.weak_subalgebra) ||
        (s.hom_ideal && !s.hom_subalgebra))
        throw InternalError("subspace status implications violated");
    return s;
}

SubspaceStatus subspace_status(const HomAlgebra& a, const Subspace& w) {
    return subspace_status_in(a, Subspace::whole(static_cast<std::size_t>(a.dim())), w);
}

NilpotencyProfile nilpotency_profile(const HomAlgebra& a) {
    const auto d = static_cast<std::size_t>(a.dim());
    const int n = a.arity();
    SeriesReport cs = series(a, n, SeriesKind::Central);
    Subspace z = center(a);
    NilpotencyProfile prof{cs.cls.has_value(), cs.cls, z.dim()};

    if (prof.nilpotent && d > 0 && z.is_zero())
        throw InternalError("nilpotent algebra with trivial center");
    if (a.dim() == n + 1) {
        if (prof.center_dim != 0 && prof.center_dim != 1 && prof.center_dim != d)
            throw InternalError("center dimension outside {0, 1, dim}");
        const bool abelian = a.bracket.is_zero();
        const Subspace derived = cs.terms.size() > 1 ? cs.terms[1] : Subspace(d);
        const bool lhs = prof.nilpotent && !abelian;
        const bool rhs = prof.center_dim == 1 && derived == z;
        // the equivalence needs the Hom-Nambu-Filippov identity; only a
        // genuine n-Hom-Lie algebra can contradict it
        if (lhs != rhs && check_hnf_bruteforce(a).ok)
            throw InternalError("nilpotency and center characterisation disagree");
    }
    return prof;
}

}  // namespace homlie
