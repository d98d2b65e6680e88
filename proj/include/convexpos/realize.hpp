#pragma once

// Realization of curve systems by convex polygons: rank curves on a uniform
// angle grid, smoothed, lifted until they are support functions, and cut out
// as intersections of half-planes.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "convexpos/chirotope.hpp"
#include "convexpos/curve_system.hpp"
#include "convexpos/geometry.hpp"

namespace convexpos {

struct RealizedArrangement {
    Arrangement bodies;
    std::size_t grid = 0;
    double lift = 0;
    std::vector<std::vector<double>> heights;  // lifted samples, in body order
};

/// min over samples of h + h'' with central differences on a uniform grid.
inline double blaschke_margin(const std::vector<double>& h) {
    const std::size_t m = h.size();
    const double d = kTwoPi / static_cast<double>(m);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < m; ++s) {
        const double prev = h[(s + m - 1) % m], next = h[(s + 1) % m];
        best = std::min(best, h[s] + (next - 2 * h[s] + prev) / (d * d));
    }
    return best;
}

namespace detail {

// Piecewise-linear ranks: gap g is centred at angle g 2pi/m and event g
// happens halfway to the next centre.
inline std::map<Label, std::vector<double>> rank_curves(const CurveSystem& s, std::size_t samples) {
    const std::size_t m = s.event_count();
    auto gaps = s.gaps();
    gaps.push_back(s.base());
    std::vector<std::map<Label, int>> rank(m + 1);
    for (std::size_t g = 0; g <= m; ++g)
        for (std::size_t i = 0; i < gaps[g].size(); ++i) rank[g][gaps[g][i]] = static_cast<int>(i);
    std::map<Label, std::vector<double>> out;
    for (Label l : s.labels()) out[l].resize(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double x = (static_cast<double>(k) + 0.5) * static_cast<double>(m) / static_cast<double>(samples);
        const std::size_t g = static_cast<std::size_t>(x) % m;
        const double t = x - std::floor(x);
        const Event e = s.events()[g];
        for (auto& [l, f] : out) {
            const double r0 = rank[g][l];
            f[k] = e.involves(l) ? r0 + t * (rank[g + 1][l] - r0) : r0;
        }
    }
    return out;
}

inline void smooth(std::vector<double>& f, int passes) {
    const std::size_t m = f.size();
    for (int p = 0; p < passes; ++p) {
        std::vector<double> g(m);
        for (std::size_t s = 0; s < m; ++s) {
            double sum = 0;
            for (std::size_t d = 0; d < 5; ++d) sum += f[(s + m + d - 2) % m];
            g[s] = sum / 5;
        }
        f = std::move(g);
    }
}

// Smallest lift making every sample a facet of the polygon and the discrete
// curvature non-negative.
inline double lift_threshold(const std::vector<double>& f) {
    const std::size_t m = f.size();
    const double d = kTwoPi / static_cast<double>(m);
    double c0 = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < m; ++s) {
        const double prev = f[(s + m - 1) % m], next = f[(s + 1) % m];
        c0 = std::max(c0, -(f[s] + (next - 2 * f[s] + prev) / (d * d)));
        c0 = std::max(c0, (2 * std::cos(d) * f[s] - prev - next) / (2 - 2 * std::cos(d)));
    }
    return c0;
}

// Vertex s is where the supporting lines at samples s and s+1 meet.
inline ConvexBody half_plane_polygon(const std::vector<double>& h) {
    const std::size_t m = h.size();
    const double d = kTwoPi / static_cast<double>(m);
    std::vector<Point> v;
    for (std::size_t s = 0; s < m; ++s) {
        const double t0 = d * (static_cast<double>(s) + 0.5), t1 = t0 + d;
        const double h0 = h[s], h1 = h[(s + 1) % m];
        v.push_back({(h0 * std::sin(t1) - h1 * std::sin(t0)) / std::sin(d),
                     (h1 * std::cos(t0) - h0 * std::cos(t1)) / std::sin(d)});
    }
    return ConvexBody(std::move(v));
}

inline bool same_crossing_words(const CurveSystem& a, const CurveSystem& b) {
    if (a.base() != b.base()) return false;
    const auto labels = a.labels();
    for (Label l : labels) {
        std::vector<Label> others;
        for (Label o : labels)
            if (o != l) others.push_back(o);
        if (crossing_word(a, l, others) != crossing_word(b, l, others)) return false;
    }
    return true;
}

}  // namespace detail

/// Realizes any curve system at grid size M. The dual of the result has the
/// same base and the same crossing word along every curve; GridTooCoarse if
/// the sampled curves fail to reproduce them.
inline RealizedArrangement realize_curve_system(const CurveSystem& s, std::size_t grid) {
    const std::size_t m = s.event_count();
    if (m == 0) fail(ErrorKind::InvalidArgument, "nothing to realize");
    if (grid < 8 * m) fail(ErrorKind::InvalidArgument, "grid must have at least 8 samples per event");
    auto curves = detail::rank_curves(s, grid);
    double c0 = -std::numeric_limits<double>::infinity(), fmax = 0;
    for (auto& [l, f] : curves) {
        detail::smooth(f, 3);
        c0 = std::max(c0, detail::lift_threshold(f));
        for (double x : f) fmax = std::max(fmax, std::abs(x));
    }
    RealizedArrangement out;
    out.grid = grid;
    out.lift = std::max(c0, 0.0) + 1 + fmax;
    for (auto& [l, f] : curves) {
        for (double& x : f) x += out.lift;
        try {
            out.bodies.push_back({l, detail::half_plane_polygon(f)});
        } catch (const Error& e) {
            fail(ErrorKind::InternalInvariant, std::string("lifted samples do not bound a convex polygon: ") + e.what());
        }
        out.heights.push_back(f);
    }
    try {
        if (!detail::same_crossing_words(dualize(out.bodies), s))
            fail(ErrorKind::GridTooCoarse, "dual crossing order differs at grid " + std::to_string(grid));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::GridTooCoarse) throw;
        fail(ErrorKind::GridTooCoarse, "dualization failed at grid " + std::to_string(grid) + ": " + e.what());
    }
    return out;
}

/// Realizes the double cover of W and checks the chirotope round trip.
inline RealizedArrangement realize_wiring_diagram(const WiringDiagram& w, std::size_t grid) {
    const auto s = double_cover(w);
    auto out = realize_curve_system(s, grid);
    if (!(chirotope_from_system(dualize(out.bodies)) == chirotope_from_system(s)))
        fail(ErrorKind::GridTooCoarse, "chirotope round trip differs at grid " + std::to_string(grid));
    return out;
}

inline std::size_t minimum_grid(const CurveSystem& s) { return 8 * s.event_count(); }

/// Doubles the grid on GridTooCoarse, starting from `grid` (0 picks the
/// minimum) up to `max_grid`.
template <class Input>
RealizedArrangement realize_with_escalation(const Input& input, std::size_t grid = 0, std::size_t max_grid = 1 << 16) {
    CurveSystem s;
    if constexpr (std::is_same_v<Input, WiringDiagram>)
        s = double_cover(input);
    else
        s = input;
    grid = std::max(grid, minimum_grid(s));
    for (;; grid *= 2) {
        try {
            if constexpr (std::is_same_v<Input, WiringDiagram>)
                return realize_wiring_diagram(input, grid);
            else
                return realize_curve_system(input, grid);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::GridTooCoarse || grid * 2 > max_grid) throw;
        }
    }
}

}  // namespace convexpos
