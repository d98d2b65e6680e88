#pragma once

// Shared fixtures: letter labels (a=0, b=1, ...) and the small systems used
// across suites.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "convexpos/chirotope.hpp"
#include "convexpos/curve_system.hpp"
#include "convexpos/wiring_diagram.hpp"

namespace fixtures {

using namespace convexpos;

inline Label L(char c) { return c - 'a'; }

inline Permutation perm(const std::string& s) {
    Permutation p;
    for (char c : s) p.push_back(L(c));
    return p;
}

inline std::vector<Switch> switches(const std::vector<std::string>& pairs) {
    std::vector<Switch> out;
    for (const auto& p : pairs) out.push_back({L(p[0]), L(p[1])});
    return out;
}

inline std::vector<Event> events(const std::vector<std::string>& pairs) {
    std::vector<Event> out;
    for (const auto& p : pairs) out.emplace_back(L(p[0]), L(p[1]));
    return out;
}

/// base (c,a,b), events ab,ab,ac,bc,bc,ac: the canonical non-orientable triple.
inline CurveSystem nx3() { return CurveSystem(perm("cab"), events({"ab", "ab", "ac", "bc", "bc", "ac"})); }

/// The 4-wire diagram with ordered switches dc,ac,bc,ad,bd,ba.
inline WiringDiagram four_wire() { return {perm("badc"), switches({"dc", "ac", "bc", "ad", "bd", "ba"})}; }

/// The 5-wire diagram with switches 21,43,53,54,51,41,52,42,31,32 on wires 1..5.
inline WiringDiagram five_wire() {
    WiringDiagram w;
    w.base = {5, 4, 3, 2, 1};
    const int sw[][2] = {{2, 1}, {4, 3}, {5, 3}, {5, 4}, {5, 1}, {4, 1}, {5, 2}, {4, 2}, {3, 1}, {3, 2}};
    for (const auto& s : sw) w.switches.push_back({s[0], s[1]});
    return w;
}

/// The 3-wire cup: every wire reaches the top.
inline WiringDiagram three_cup() { return {perm("abc"), switches({"bc", "ac", "ab"})}; }

inline std::vector<std::vector<Label>> subsets(const std::vector<Label>& labels, std::size_t lo, std::size_t hi) {
    std::vector<std::vector<Label>> out;
    const std::size_t n = labels.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<Label> s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) s.push_back(labels[i]);
        if (s.size() >= lo && s.size() <= hi) out.push_back(s);
    }
    return out;
}

using Pt = std::array<double, 2>;

inline double cross(const Pt& o, const Pt& a, const Pt& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/// Orientation of every triple straight from coordinates; labels 0..n-1.
inline Chirotope point_chirotope(const std::vector<Pt>& pts) {
    std::vector<Label> labels;
    for (std::size_t i = 0; i < pts.size(); ++i) labels.push_back(static_cast<Label>(i));
    Chirotope chi(labels);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            for (std::size_t k = j + 1; k < pts.size(); ++k)
                chi.set(static_cast<Label>(i), static_cast<Label>(j), static_cast<Label>(k),
                        cross(pts[i], pts[j], pts[k]) > 0 ? 1 : -1);
    return chi;
}

/// Convex position by hull size (monotone chain).
inline bool in_convex_position(std::vector<Pt> pts) {
    const std::size_t n = pts.size();
    if (n < 3) return true;
    std::sort(pts.begin(), pts.end());
    std::vector<Pt> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    return k - 1 == n;
}

inline std::vector<Pt> regular_polygon(std::size_t n, double radius = 1.0) {
    std::vector<Pt> out;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = 2.0 * 3.14159265358979323846 * static_cast<double>(i) / static_cast<double>(n) + 0.1;
        out.push_back({radius * std::cos(a), radius * std::sin(a)});
    }
    return out;
}

/// The k-cup diagram on wires 0..k-1: the top wire sweeps down first, then
/// the next one, and so on.
inline WiringDiagram cup_diagram(std::size_t k) {
    WiringDiagram w;
    for (std::size_t i = 0; i < k; ++i) w.base.push_back(static_cast<Label>(i));
    for (std::size_t top = k; top-- > 1;)
        for (std::size_t below = top; below-- > 0;) w.switches.push_back({static_cast<Label>(below), static_cast<Label>(top)});
    return w;
}

}  // namespace fixtures
