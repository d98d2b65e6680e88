#pragma once

// Reduction of a curve system to an orientable one by repeated triangle
// flips, the weak-map check between two systems, and a random generator of
// combinatorial systems with non-orientable triples.

#include <array>
#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "convexpos/curve_system.hpp"
#include "convexpos/error.hpp"
#include "convexpos/rng.hpp"
#include "convexpos/zones.hpp"

namespace convexpos {

struct FlipRecord {
    std::array<Label, 3> triple{};
    Label top = 0;
    std::array<std::size_t, 3> vertices_before{};  // left, bottom, right
    std::array<std::size_t, 3> positions_after{};
    std::size_t non_orientable_before = 0;
    std::size_t non_orientable_after = 0;
};

struct Reduction {
    CurveSystem system;
    std::vector<FlipRecord> log;
    std::size_t initial_non_orientable = 0;
};

/// Flips empty zones until no non-orientable triple remains. Every
/// iteration re-checks that all triples are convexly independent and that
/// the flip removed exactly one non-orientable triple.
inline Reduction reduce_to_orientable(const CurveSystem& s, bool descent = false) {
    Reduction out{s, {}, 0};
    detail::require_all_independent(s);
    std::size_t count = count_non_orientable(s);
    out.initial_non_orientable = count;
    while (count > 0) {
        if (out.log.size() >= out.initial_non_orientable)
            fail(ErrorKind::InternalInvariant, "flip budget exhausted");
        detail::require_all_independent(out.system);
        const auto zone = find_empty_zone(out.system, descent);
        if (!zone) fail(ErrorKind::InternalInvariant, "no empty zone in a non-orientable system");
        const auto flipped = triangle_flip_detailed(out.system, *zone);
        const std::size_t after = count_non_orientable(flipped.system);
        if (after + 1 != count)
            fail(ErrorKind::InternalInvariant, "flip changed the non-orientable count from " + std::to_string(count) +
                                                   " to " + std::to_string(after));
        out.log.push_back({zone->triple,
                           zone->top,
                           {zone->left_vertex, zone->bottom_vertex, zone->right_vertex},
                           flipped.positions,
                           count,
                           after});
        out.system = flipped.system;
        count = after;
    }
    return out;
}

struct WeakMapReport {
    bool passed = true;
    std::size_t checked = 0;
    std::vector<std::vector<Label>> violations;
};

/// Checks that every subset of size 3..max_subset_size that is convexly
/// independent in `after` is also independent in `before`.
inline WeakMapReport verify_weak_map(const CurveSystem& before, const CurveSystem& after, std::size_t max_subset_size) {
    if (before.labels() != after.labels()) fail(ErrorKind::LabelMismatch, "systems have different labels");
    const auto labels = before.labels();
    WeakMapReport report;
    std::vector<Label> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t next) {
        if (cur.size() >= 3) {
            ++report.checked;
            if (is_convexly_independent(after, cur) && !is_convexly_independent(before, cur)) {
                report.passed = false;
                report.violations.push_back(cur);
            }
        }
        if (cur.size() == max_subset_size) return;
        for (std::size_t i = next; i < labels.size(); ++i) {
            cur.push_back(labels[i]);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return report;
}

/// A random system on n curves with all triples convexly independent,
/// obtained from a random generalized configuration by a walk of
/// commutations and triangle reversals. Reversals that would make some
/// triple dependent are rejected.
inline CurveSystem random_admissible_system(std::size_t n, std::size_t steps, Rng& rng) {
    CurveSystem s = double_cover(random_wiring_diagram(n, rng));
    std::vector<Event> ev = s.events();
    const std::size_t m = ev.size();
    Permutation base = s.base();
    for (std::size_t step = 0; step < steps; ++step) {
        // Indices stay below m so that the base permutation never moves.
        const std::size_t i = uniform_index(rng, m - 1);
        const Event e0 = ev[i], e1 = ev[i + 1];
        if (!e0.involves(e1.a) && !e0.involves(e1.b)) {
            std::swap(ev[i], ev[i + 1]);
            continue;
        }
        if (i + 2 >= m) continue;
        const Event e2 = ev[i + 2];
        const std::set<Event> pairs{e0, e1, e2};
        const std::set<Label> curves{e0.a, e0.b, e1.a, e1.b, e2.a, e2.b};
        if (pairs.size() != 3 || curves.size() != 3) continue;
        std::vector<Event> trial = ev;
        std::swap(trial[i], trial[i + 2]);
        const CurveSystem cand(base, trial);
        if (!is_convexly_independent(cand, std::vector<Label>(curves.begin(), curves.end()))) continue;
        ev = std::move(trial);
    }
    return CurveSystem(base, ev);
}

}  // namespace convexpos
