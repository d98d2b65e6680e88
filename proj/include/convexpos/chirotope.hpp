#pragma once

// Chirotopes: a cyclic orientation for every triple of labels, the CC-system
// axioms, and convex-independence queries answered from orientations alone.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "convexpos/curve_system.hpp"
#include "convexpos/error.hpp"

namespace convexpos {

class Chirotope {
public:
    Chirotope() = default;

    /// All orientations start at +1; callers fill them with set().
    explicit Chirotope(std::vector<Label> labels) : labels_(std::move(labels)) {
        std::sort(labels_.begin(), labels_.end());
        if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end())
            fail(ErrorKind::InvalidArgument, "repeated chirotope label");
        const std::size_t n = labels_.size();
        signs_.assign(n * n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k = j + 1; k < n; ++k) store(i, j, k, 1);
    }

    const std::vector<Label>& labels() const { return labels_; }
    std::size_t size() const { return labels_.size(); }

    std::size_t index_of(Label l) const {
        auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
        if (it == labels_.end() || *it != l) fail(ErrorKind::UnknownLabel, "label " + std::to_string(l));
        return static_cast<std::size_t>(it - labels_.begin());
    }

    /// Orientation of the ordered triple: +1 if (a,b,c) is the stored cyclic
    /// order (counter-clockwise for point sets), -1 otherwise.
    int operator()(Label a, Label b, Label c) const { return at(index_of(a), index_of(b), index_of(c)); }

    int at(std::size_t i, std::size_t j, std::size_t k) const {
        const std::size_t n = labels_.size();
        return signs_[(i * n + j) * n + k];
    }

    void set(Label a, Label b, Label c, int sign) {
        if (a == b || b == c || a == c) fail(ErrorKind::InvalidArgument, "degenerate triple");
        store(index_of(a), index_of(b), index_of(c), sign > 0 ? 1 : -1);
    }

    /// Sets the orientation so that (a,b,c) in this cyclic order is positive.
    void set_cycle(const std::array<Label, 3>& cycle) { set(cycle[0], cycle[1], cycle[2], 1); }

    std::array<Label, 3> cycle(Label a, Label b, Label c) const {
        return (*this)(a, b, c) > 0 ? canonical_cycle(a, b, c) : canonical_cycle(a, c, b);
    }

    friend bool operator==(const Chirotope&, const Chirotope&) = default;

private:
    void store(std::size_t i, std::size_t j, std::size_t k, int sign) {
        const std::size_t n = labels_.size();
        auto put = [&](std::size_t x, std::size_t y, std::size_t z, int s) {
            signs_[(x * n + y) * n + z] = static_cast<std::int8_t>(s);
        };
        put(i, j, k, sign);
        put(j, k, i, sign);
        put(k, i, j, sign);
        put(i, k, j, -sign);
        put(k, j, i, -sign);
        put(j, i, k, -sign);
    }

    std::vector<Label> labels_;
    std::vector<std::int8_t> signs_;
};

/// Orientation of each triple read from its envelope in the system.
inline Chirotope chirotope_from_system(const CurveSystem& s) {
    Chirotope chi(s.labels());
    for (const auto& t : all_triples(s.labels())) {
        const auto cls = classify_triple(s, t);
        if (!cls.orientable)
            fail(ErrorKind::NonOrientableTriple, "triple " + triple_name(t[0], t[1], t[2]) + " is non-orientable");
        chi.set_cycle(cls.cyclic);
    }
    return chi;
}

struct AxiomReport {
    bool passed = true;
    std::string axiom;
    std::vector<Label> witness;
};

/// Checks the interiority and transitivity axioms of a CC system over all
/// ordered 4- and 5-tuples. Cyclic symmetry, antisymmetry and
/// non-degeneracy hold by construction of the representation.
inline AxiomReport verify_cc_axioms(const Chirotope& chi) {
    const std::size_t n = chi.size();
    AxiomReport report;
    auto pos = [&](std::size_t a, std::size_t b, std::size_t c) { return chi.at(a, b, c) > 0; };
    const auto& L = chi.labels();
    // Interiority: tqr, ptr, pqt imply pqr.
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t p = 0; p < n; ++p) {
            if (p == t) continue;
            for (std::size_t q = 0; q < n; ++q) {
                if (q == t || q == p || !pos(p, q, t)) continue;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == t || r == p || r == q) continue;
                    if (pos(t, q, r) && pos(p, t, r) && !pos(p, q, r)) {
                        report.passed = false;
                        report.axiom = "interiority";
                        report.witness = {L[p], L[q], L[r], L[t]};
                        return report;
                    }
                }
            }
        }
    // Transitivity: tsp, tsq, tsr, tpq, tqr imply tpr.
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t s = 0; s < n; ++s) {
            if (s == t) continue;
            for (std::size_t p = 0; p < n; ++p) {
                if (p == t || p == s || !pos(t, s, p)) continue;
                for (std::size_t q = 0; q < n; ++q) {
                    if (q == t || q == s || q == p || !pos(t, s, q) || !pos(t, p, q)) continue;
                    for (std::size_t r = 0; r < n; ++r) {
                        if (r == t || r == s || r == p || r == q) continue;
                        if (pos(t, s, r) && pos(t, q, r) && !pos(t, p, r)) {
                            report.passed = false;
                            report.axiom = "transitivity";
                            report.witness = {L[t], L[s], L[p], L[q], L[r]};
                            return report;
                        }
                    }
                }
            }
        }
    return report;
}

namespace detail {

// d lies inside triangle abc.
inline bool inside(const Chirotope& chi, std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    const int s = chi.at(a, b, c);
    return chi.at(a, b, d) == s && chi.at(b, c, d) == s && chi.at(c, a, d) == s;
}

inline bool four_set_independent(const Chirotope& chi, std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    return !inside(chi, a, b, c, d) && !inside(chi, a, b, d, c) && !inside(chi, a, c, d, b) &&
           !inside(chi, b, c, d, a);
}

}  // namespace detail

/// Convex independence by the four-point test: no member inside a triangle
/// of three others.
inline bool is_convexly_independent_chirotope(const Chirotope& chi, const std::vector<Label>& subset) {
    std::vector<std::size_t> idx;
    for (Label l : subset) idx.push_back(chi.index_of(l));
    if (subset.size() < 3) fail(ErrorKind::SubsetTooSmall, "independence needs at least 3 labels");
    const std::size_t k = idx.size();
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            for (std::size_t c = b + 1; c < k; ++c)
                for (std::size_t d = c + 1; d < k; ++d)
                    if (!detail::four_set_independent(chi, idx[a], idx[b], idx[c], idx[d])) return false;
    return true;
}

namespace detail {

// Largest convex polygon having `e` as a vertex, among `pool` (indices).
// `e` must be extreme in pool: the others are totally ordered around it.
inline std::size_t largest_polygon_through(const Chirotope& chi, std::size_t e, const std::vector<std::size_t>& pool) {
    std::vector<std::size_t> ys;
    for (std::size_t x : pool)
        if (x != e) ys.push_back(x);
    const std::size_t m = ys.size();
    if (m < 2) return m + 1;
    std::vector<std::size_t> rank(m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (i != j && chi.at(e, ys[i], ys[j]) < 0) ++rank[i];
    std::vector<std::size_t> order(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        if (rank[i] >= m || order[rank[i]] != m)
            fail(ErrorKind::AxiomViolation, "angular order around an extreme element is not transitive");
        order[rank[i]] = ys[i];
    }
    // dp[i][j]: vertices after e of the longest convex chain e, ..., y_i, y_j.
    std::vector<std::vector<std::size_t>> dp(m, std::vector<std::size_t>(m, 0));
    std::size_t best = 2;
    for (std::size_t j = 1; j < m; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            std::size_t v = 2;
            for (std::size_t h = 0; h < i; ++h)
                if (dp[h][i] > 0 && chi.at(order[h], order[i], order[j]) > 0) v = std::max(v, dp[h][i] + 1);
            dp[i][j] = v;
            if (chi.at(order[i], order[j], e) > 0) best = std::max(best, v + 1);
        }
    return best;
}

inline bool is_extreme(const Chirotope& chi, std::size_t e, const std::vector<std::size_t>& pool) {
    for (std::size_t a = 0; a < pool.size(); ++a)
        for (std::size_t b = a + 1; b < pool.size(); ++b)
            for (std::size_t c = b + 1; c < pool.size(); ++c) {
                const std::size_t x = pool[a], y = pool[b], z = pool[c];
                if (x == e || y == e || z == e) continue;
                if (inside(chi, x, y, z, e)) return false;
            }
    return true;
}

}  // namespace detail

/// A maximum convexly independent subset. Size comes from a peeling dynamic
/// program; among all maximum subsets the lexicographically smallest label
/// set is returned.
inline std::vector<Label> max_independent_dp(const Chirotope& chi) {
    const std::size_t n = chi.size();
    if (n < 3) return chi.labels();
    if (const auto report = verify_cc_axioms(chi); !report.passed)
        fail(ErrorKind::AxiomViolation, report.axiom + " axiom fails");
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    std::size_t best = 2;
    while (pool.size() >= 3 && pool.size() > best) {
        std::optional<std::size_t> extreme;
        for (std::size_t e : pool)
            if (detail::is_extreme(chi, e, pool)) {
                extreme = e;
                break;
            }
        if (!extreme) fail(ErrorKind::AxiomViolation, "no extreme element");
        best = std::max(best, detail::largest_polygon_through(chi, *extreme, pool));
        pool.erase(std::find(pool.begin(), pool.end(), *extreme));
    }

    // Lexicographically smallest set of size `best`, depth-first in label
    // order with the four-point test applied incrementally.
    std::vector<std::size_t> chosen;
    std::function<bool(std::size_t)> dfs = [&](std::size_t next) -> bool {
        if (chosen.size() == best) return true;
        for (std::size_t x = next; x < n; ++x) {
            if (chosen.size() + (n - x) < best) return false;
            bool ok = true;
            const std::size_t k = chosen.size();
            for (std::size_t a = 0; a < k && ok; ++a)
                for (std::size_t b = a + 1; b < k && ok; ++b)
                    for (std::size_t c = b + 1; c < k && ok; ++c)
                        ok = detail::four_set_independent(chi, chosen[a], chosen[b], chosen[c], x);
            if (!ok) continue;
            chosen.push_back(x);
            if (dfs(x + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (!dfs(0)) fail(ErrorKind::AxiomViolation, "dynamic program size not attained by any subset");
    std::vector<Label> out;
    for (std::size_t i : chosen) out.push_back(chi.labels()[i]);
    return out;
}

}  // namespace convexpos
