#pragma once

// Seeded random arrangements: point sets and non-crossing polygon families.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "convexpos/geometry.hpp"
#include "convexpos/rng.hpp"

namespace convexpos {

/// n point bodies in the square [-1, 1]^2, labels 0..n-1, generic.
inline Arrangement random_point_arrangement(std::size_t n, Rng& rng, std::size_t retries = 1000) {
    for (std::size_t attempt = 0; attempt < retries; ++attempt) {
        Arrangement arr;
        for (std::size_t i = 0; i < n; ++i)
            arr.push_back({static_cast<Label>(i), ConvexBody({{uniform(rng, -1, 1), uniform(rng, -1, 1)}})});
        try {
            check_generic(arr);
            return arr;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NotGeneric && e.kind() != ErrorKind::DegeneratePair) throw;
        }
    }
    fail(ErrorKind::GenerationFailed, "no generic point set found");
}

struct PolygonOptions {
    std::size_t bodies = 6;
    double thin_fraction = 0.3;  // share of long needle-like bodies
    double spread = 3.0;         // centres lie in [-spread, spread]^2
    bool all_triples_independent = true;
    std::size_t retries = 4000;
};

/// A sampled ellipse-like polygon with 8..16 vertices.
inline ConvexBody random_polygon(Rng& rng, const PolygonOptions& opt) {
    const double cx = uniform(rng, -opt.spread, opt.spread), cy = uniform(rng, -opt.spread, opt.spread);
    const bool thin = uniform(rng, 0, 1) < opt.thin_fraction;
    const double a = thin ? uniform(rng, 0.8, 2.0) : uniform(rng, 0.1, 0.5);
    const double b = thin ? uniform(rng, 0.03, 0.1) : a * uniform(rng, 0.5, 1.0);
    const double rot = uniform(rng, 0, std::numbers::pi);
    const std::size_t k = 8 + uniform_index(rng, 9);
    const double start = uniform(rng, 0, kTwoPi);
    std::vector<Point> v;
    for (std::size_t j = 0; j < k; ++j) {
        const double phi = start + kTwoPi * (static_cast<double>(j) + uniform(rng, -0.3, 0.3)) / static_cast<double>(k);
        const double x = a * std::cos(phi), y = b * std::sin(phi);
        v.push_back({cx + x * std::cos(rot) - y * std::sin(rot), cy + x * std::sin(rot) + y * std::cos(rot)});
    }
    return ConvexBody(std::move(v));
}

/// Pairwise non-crossing generic polygons, labels 0..n-1, built by rejection
/// sampling one body at a time.
inline Arrangement random_polygon_arrangement(const PolygonOptions& opt, Rng& rng) {
    Arrangement arr;
    std::size_t budget = opt.retries;
    while (arr.size() < opt.bodies) {
        if (budget-- == 0) fail(ErrorKind::GenerationFailed, "polygon arrangement retry budget exhausted");
        const LabeledBody cand{static_cast<Label>(arr.size()), random_polygon(rng, opt)};
        auto next = arr;
        next.push_back(cand);
        try {
            bool ok = true;
            for (const auto& b : arr)
                if (common_tangent_angles(b.body, cand.body).size() != 2) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            check_generic(next);
            if (opt.all_triples_independent && next.size() >= 3) {
                const GeometricOracle oracle(next, 0);
                for (std::size_t i = 0; i + 1 < arr.size() && ok; ++i)
                    for (std::size_t j = i + 1; j < arr.size() && ok; ++j)
                        ok = oracle.independent({arr[i].label, arr[j].label, cand.label});
            }
            if (!ok) continue;
        } catch (const Error& e) {
            const auto k = e.kind();
            if (k != ErrorKind::NotGeneric && k != ErrorKind::DegeneratePair && k != ErrorKind::Tolerance) throw;
            continue;
        }
        arr = std::move(next);
    }
    return arr;
}

}  // namespace convexpos
