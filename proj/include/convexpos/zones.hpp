#pragma once

// Zones of non-orientable triples and the triangle flip.
//
// A zone is one of the two triangular cells of a non-orientable triple
// {t,x,y} whose top edge lies on t: three cyclically consecutive events of
// the restriction, {t,x} (left), {x,y} (bottom), {y,t} (right), with t on top
// of the triple on both gaps in between.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "convexpos/curve_system.hpp"
#include "convexpos/error.hpp"

namespace convexpos {

struct Zone {
    std::array<Label, 3> triple{};  // sorted
    Label top = 0;
    std::size_t left_vertex = 0;    // event indices into the system
    std::size_t bottom_vertex = 0;
    std::size_t right_vertex = 0;
    int side = 0;                   // 0 or 1, ordered by left_vertex

    /// Curve crossing the top at the left vertex; the lower boundary up to
    /// the bottom vertex.
    Label left_curve = 0;
    Label right_curve = 0;

    friend bool operator==(const Zone&, const Zone&) = default;
};

inline bool zone_less(const Zone& a, const Zone& b) {
    return std::tie(a.triple, a.left_vertex) < std::tie(b.triple, b.left_vertex);
}

struct ZoneStatus {
    bool empty = true;
    bool free = true;
    std::vector<Label> intruders;
};

namespace detail {

// Cyclic distance from `from` forward to `to` in a sequence of length m.
inline std::size_t forward(std::size_t from, std::size_t to, std::size_t m) { return (to + m - from) % m; }

}  // namespace detail

inline std::array<Zone, 2> find_zones(const CurveSystem& s, std::array<Label, 3> triple) {
    std::sort(triple.begin(), triple.end());
    const auto cls = classify_triple(s, triple);
    if (cls.orientable)
        fail(ErrorKind::TripleNotNonOrientable, "triple " + triple_name(triple[0], triple[1], triple[2]) +
                                                    " is orientable");
    const Label t = cls.top;
    std::vector<std::size_t> kept;
    const CurveSystem r = restrict(s, {triple[0], triple[1], triple[2]}, &kept);
    const auto gaps = r.gaps();
    const std::size_t m = r.event_count();
    std::vector<Zone> zones;
    for (std::size_t i = 0; i < m; ++i) {
        const Event el = r.events()[i], eb = r.events()[(i + 1) % m], er = r.events()[(i + 2) % m];
        if (!el.involves(t) || !er.involves(t) || eb.involves(t)) continue;
        const Label x = el.other(t), y = er.other(t);
        if (x == y || !(eb == Event(x, y))) continue;
        if (gaps[(i + 1) % m].back() != t || gaps[(i + 2) % m].back() != t) continue;
        Zone z;
        z.triple = triple;
        z.top = t;
        z.left_curve = x;
        z.right_curve = y;
        z.left_vertex = kept[i];
        z.bottom_vertex = kept[(i + 1) % m];
        z.right_vertex = kept[(i + 2) % m];
        zones.push_back(z);
    }
    if (zones.size() != 2)
        fail(ErrorKind::InternalInvariant, "expected 2 zones on " + triple_name(triple[0], triple[1], triple[2]) +
                                               ", found " + std::to_string(zones.size()));
    std::sort(zones.begin(), zones.end(), zone_less);
    zones[0].side = 0;
    zones[1].side = 1;
    return {zones[0], zones[1]};
}

inline ZoneStatus zone_status(const CurveSystem& s, const Zone& z) {
    const std::size_t m = s.event_count();
    const bool in_range = z.left_vertex < m && z.bottom_vertex < m && z.right_vertex < m;
    bool current = false;
    if (in_range) {
        try {
            for (const auto& cand : find_zones(s, z.triple))
                if (cand.left_vertex == z.left_vertex && cand.bottom_vertex == z.bottom_vertex &&
                    cand.right_vertex == z.right_vertex && cand.top == z.top)
                    current = true;
        } catch (const Error&) {
            current = false;
        }
    }
    if (!current) fail(ErrorKind::StaleZone, "zone does not match the system");

    const auto gaps = s.gaps();
    const std::set<Label> in_triple(z.triple.begin(), z.triple.end());
    std::set<Label> intruders;
    const std::size_t to_bottom = detail::forward(z.left_vertex, z.bottom_vertex, m);
    const std::size_t to_right = detail::forward(z.left_vertex, z.right_vertex, m);
    for (std::size_t d = 1; d <= to_right; ++d) {
        const auto& p = gaps[(z.left_vertex + d) % m];
        const Label lower = d <= to_bottom ? z.left_curve : z.right_curve;
        const auto rank = [&](Label l) { return std::find(p.begin(), p.end(), l) - p.begin(); };
        const auto lo = rank(lower), hi = rank(z.top);
        for (auto r = lo + 1; r < hi; ++r)
            if (!in_triple.count(p[static_cast<std::size_t>(r)])) intruders.insert(p[static_cast<std::size_t>(r)]);
    }
    ZoneStatus st;
    st.intruders.assign(intruders.begin(), intruders.end());
    st.empty = intruders.empty();
    for (std::size_t d = 1; d < to_right; ++d) {
        const Event e = s.events()[(z.left_vertex + d) % m];
        if (e.involves(z.top) && !in_triple.count(e.other(z.top))) st.free = false;
    }
    return st;
}

namespace detail {

inline void require_all_independent(const CurveSystem& s) {
    if (auto t = find_dependent_triple(s))
        fail(ErrorKind::TripleNotIndependent, "triple " + triple_name((*t)[0], (*t)[1], (*t)[2]) +
                                                  " is not convexly independent");
}

inline std::vector<Zone> all_zones(const CurveSystem& s) {
    std::vector<Zone> out;
    for (const auto& t : all_triples(s.labels())) {
        if (classify_triple(s, t).orientable) continue;
        for (const auto& z : find_zones(s, t)) out.push_back(z);
    }
    return out;
}

}  // namespace detail

/// Exhaustive search: the smallest (triple, left vertex) empty zone over
/// all non-orientable triples, or none if the system is orientable.
inline std::optional<Zone> find_empty_zone_reference(const CurveSystem& s) {
    detail::require_all_independent(s);
    std::optional<Zone> best;
    bool any = false;
    for (const auto& z : detail::all_zones(s)) {
        any = true;
        if (zone_status(s, z).empty && (!best || zone_less(z, *best))) best = z;
    }
    if (any && !best) fail(ErrorKind::InternalInvariant, "non-orientable system without an empty zone");
    return best;
}

/// Starts from a free zone and descends into free zones nested inside it
/// with fewer intruding curves until an empty one is reached. Returns none
/// when the descent gets stuck; callers fall back to the reference search.
inline std::optional<Zone> find_empty_zone_descent(const CurveSystem& s) {
    detail::require_all_independent(s);
    const auto zones = detail::all_zones(s);
    const std::size_t m = s.event_count();
    std::optional<Zone> cur;
    ZoneStatus st;
    for (const auto& z : zones) {
        auto zs = zone_status(s, z);
        if (zs.free) {
            cur = z;
            st = zs;
            break;
        }
    }
    while (cur && !st.empty) {
        const std::size_t span = detail::forward(cur->left_vertex, cur->right_vertex, m);
        auto inside = [&](std::size_t idx) { return detail::forward(cur->left_vertex, idx, m) <= span; };
        std::set<Label> pool(cur->triple.begin(), cur->triple.end());
        pool.insert(st.intruders.begin(), st.intruders.end());
        std::optional<Zone> next;
        ZoneStatus next_st;
        for (const auto& z : zones) {
            if (z == *cur) continue;
            if (!pool.count(z.triple[0]) || !pool.count(z.triple[1]) || !pool.count(z.triple[2])) continue;
            if (!inside(z.left_vertex) || !inside(z.bottom_vertex) || !inside(z.right_vertex)) continue;
            if (detail::forward(cur->left_vertex, z.left_vertex, m) > detail::forward(cur->left_vertex, z.right_vertex, m))
                continue;
            auto zs = zone_status(s, z);
            if (!zs.free || zs.intruders.size() >= st.intruders.size()) continue;
            if (!next || zs.intruders.size() < next_st.intruders.size() ||
                (zs.intruders.size() == next_st.intruders.size() && zone_less(z, *next))) {
                next = z;
                next_st = zs;
            }
        }
        if (!next) return std::nullopt;
        cur = next;
        st = next_st;
    }
    return cur;
}

/// An empty zone of some non-orientable triple, or none if the system is
/// orientable. Uses the exhaustive reference (smallest triple and left
/// vertex) unless `descent` is set, in which case the nested-free-zone walk
/// is tried first.
inline std::optional<Zone> find_empty_zone(const CurveSystem& s, bool descent = false) {
    if (descent)
        if (auto z = find_empty_zone_descent(s)) return z;
    return find_empty_zone_reference(s);
}

struct FlipResult {
    CurveSystem system;
    /// New indices of the former right, bottom and left events, in order.
    std::array<std::size_t, 3> positions{};
};

/// Reverses the three corner events of an empty zone. Unrelated events
/// between the corners are commuted out of the way first: those between the
/// left and bottom corners to just before the left one, those between the
/// bottom and right corners to just after the right one.
inline FlipResult triangle_flip_detailed(const CurveSystem& s, const Zone& z) {
    if (!zone_status(s, z).empty) fail(ErrorKind::ZoneNotEmpty, "zone has intruding curves");
    const std::size_t m = s.event_count();
    const std::size_t L = z.left_vertex;
    const std::size_t b = detail::forward(L, z.bottom_vertex, m);
    const std::size_t r = detail::forward(L, z.right_vertex, m);
    std::vector<Event> frame(m);
    for (std::size_t i = 0; i < m; ++i) frame[i] = s.events()[(L + i) % m];

    std::vector<Event> rebuilt;
    rebuilt.reserve(m);
    for (std::size_t i = 1; i < b; ++i) rebuilt.push_back(frame[i]);
    const std::size_t before = rebuilt.size();
    rebuilt.push_back(frame[r]);
    rebuilt.push_back(frame[b]);
    rebuilt.push_back(frame[0]);
    for (std::size_t i = b + 1; i < r; ++i) rebuilt.push_back(frame[i]);
    for (std::size_t i = r + 1; i < m; ++i) rebuilt.push_back(frame[i]);

    // Re-anchor at angle 0: simulate from the gap-L permutation.
    const Permutation start = s.gaps()[L];
    std::vector<Event> events(m);
    for (std::size_t i = 0; i < m; ++i) events[(L + i) % m] = rebuilt[i];
    Permutation base = start;
    const std::size_t steps = (m - L) % m;
    for (std::size_t i = 0; i < steps; ++i) {
        const Event e = rebuilt[i];
        auto ia = std::find(base.begin(), base.end(), e.a), ib = std::find(base.begin(), base.end(), e.b);
        std::iter_swap(ia, ib);
    }
    FlipResult out{CurveSystem(std::move(base), std::move(events)),
                   {(L + before) % m, (L + before + 1) % m, (L + before + 2) % m}};
    if (!classify_triple(out.system, z.triple).orientable)
        fail(ErrorKind::InternalInvariant, "flipped triple is still non-orientable");
    return out;
}

inline CurveSystem triangle_flip(const CurveSystem& s, const Zone& z) { return triangle_flip_detailed(s, z).system; }

}  // namespace convexpos
