#pragma once

// Seeded property suites shared by the CLI verify command and the
// acceptance runner. Instance i draws from make_rng(seed, i).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "convexpos/chirotope.hpp"
#include "convexpos/cup_cap.hpp"
#include "convexpos/curve_system.hpp"
#include "convexpos/es_search.hpp"
#include "convexpos/generate.hpp"
#include "convexpos/geometry.hpp"
#include "convexpos/realize.hpp"
#include "convexpos/reduction.hpp"
#include "convexpos/rng.hpp"
#include "convexpos/wiring_diagram.hpp"

namespace convexpos {

struct SuiteReport {
    std::string name;
    std::size_t instances = 0;
    std::vector<std::string> failures;

    bool passed() const { return failures.empty(); }
    void fail_instance(std::size_t i, const std::string& what) {
        failures.push_back("instance " + std::to_string(i) + ": " + what);
    }
};

namespace detail {

template <class F>
void each_subset(const std::vector<Label>& labels, std::size_t lo, std::size_t hi, F&& visit) {
    std::vector<Label> cur;
    auto rec = [&](auto&& self, std::size_t from) -> void {
        if (cur.size() >= lo) visit(cur);
        if (cur.size() == hi) return;
        for (std::size_t i = from; i < labels.size(); ++i) {
            cur.push_back(labels[i]);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
}

template <class F>
void guarded(SuiteReport& r, std::size_t i, F&& body) {
    try {
        body();
    } catch (const Error& e) {
        r.fail_instance(i, e.what());
    }
}

}  // namespace detail

/// Random non-crossing arrangements with every triple independent are
/// reduced to orientable systems; the flip log, the final axioms and the
/// weak map are all checked.
inline SuiteReport weak_map_suite(std::size_t instances, std::uint64_t seed, std::size_t max_subset = 6) {
    SuiteReport r{"weakmap", instances, {}};
    for (std::size_t i = 0; i < instances; ++i)
        detail::guarded(r, i, [&] {
            auto rng = make_rng(seed, i);
            PolygonOptions opt;
            opt.bodies = 5 + uniform_index(rng, 6);
            const auto s = dualize(random_polygon_arrangement(opt, rng));
            const auto red = reduce_to_orientable(s);
            if (red.log.size() > red.initial_non_orientable) r.fail_instance(i, "more flips than non-orientable triples");
            std::size_t prev = red.initial_non_orientable;
            for (const auto& f : red.log) {
                if (f.non_orientable_before != prev || f.non_orientable_after >= prev)
                    r.fail_instance(i, "a flip did not decrease the non-orientable count");
                prev = f.non_orientable_after;
            }
            if (!is_orientable(red.system)) r.fail_instance(i, "result is not orientable");
            if (!verify_cc_axioms(chirotope_from_system(red.system)).passed) r.fail_instance(i, "axioms fail after reduction");
            if (!verify_weak_map(s, red.system, max_subset).passed) r.fail_instance(i, "weak map violated");
        });
    return r;
}

/// Geometric, envelope and chirotope independence agree on every subset of
/// 3..max_subset bodies. Even instances are point sets, odd ones polygons;
/// the chirotope is consulted only for orientable systems.
inline SuiteReport oracle_suite(std::size_t instances, std::uint64_t seed, std::size_t max_subset = 5,
                                double eps = kEpsilon) {
    SuiteReport r{"oracle", instances, {}};
    for (std::size_t i = 0; i < instances; ++i)
        detail::guarded(r, i, [&] {
            auto rng = make_rng(seed, i);
            Arrangement arr;
            if (i % 2 == 0) {
                arr = random_point_arrangement(5 + uniform_index(rng, 5), rng);
            } else {
                PolygonOptions opt;
                opt.bodies = 5 + uniform_index(rng, 4);
                opt.all_triples_independent = false;
                arr = random_polygon_arrangement(opt, rng);
            }
            const auto s = dualize(arr);
            const GeometricOracle geo(arr);
            const bool all_triples = !find_dependent_triple(s).has_value();
            const bool orientable = all_triples && is_orientable(s);
            std::optional<Chirotope> chi;
            if (orientable) chi = chirotope_from_system(s);
            std::size_t disagreements = 0;
            std::vector<Label> labels;
            for (const auto& b : arr) labels.push_back(b.label);
            detail::each_subset(labels, 3, max_subset, [&](const std::vector<Label>& sub) {
                const bool g = geo.independent(sub, eps), e = is_convexly_independent(s, sub);
                bool ok = g == e;
                if (chi) ok = ok && is_convexly_independent_chirotope(*chi, sub) == e;
                if (!ok) ++disagreements;
            });
            if (disagreements) r.fail_instance(i, std::to_string(disagreements) + " subsets disagree");
        });
    return r;
}

/// Double covers of random diagrams and dualized point sets satisfy the
/// CC axioms.
inline SuiteReport axioms_suite(std::size_t instances, std::uint64_t seed) {
    SuiteReport r{"axioms", instances, {}};
    for (std::size_t i = 0; i < instances; ++i)
        detail::guarded(r, i, [&] {
            auto rng = make_rng(seed, i);
            const CurveSystem s = i % 2 == 0 ? double_cover(random_wiring_diagram(4 + uniform_index(rng, 7), rng))
                                             : dualize(random_point_arrangement(4 + uniform_index(rng, 7), rng));
            const auto rep = verify_cc_axioms(chirotope_from_system(s));
            if (!rep.passed) r.fail_instance(i, "axiom " + rep.axiom + " fails");
        });
    return r;
}

/// Wire counts at which every diagram holds n independent members, sampled:
/// 5 wires for n = 4 and pipeline_bound(5) = 11 wires for n = 5.
inline SuiteReport bound_suite(std::size_t instances, std::uint64_t seed) {
    SuiteReport r{"bound", instances, {}};
    for (std::size_t i = 0; i < instances; ++i)
        detail::guarded(r, i, [&] {
            auto rng = make_rng(seed, i);
            const std::size_t n = i % 2 == 0 ? 4 : 5;
            const std::size_t wires = n == 4 ? 5 : pipeline_bound(5);
            const auto w = random_wiring_diagram(wires, rng);
            const auto c = es_pipeline(w, n);
            if (c.labels.size() != n) r.fail_instance(i, "pipeline returned " + std::to_string(c.labels.size()) + " labels");
            if (!validate_certificate(w, c)) r.fail_instance(i, "certificate does not validate");
        });
    return r;
}

}  // namespace convexpos
