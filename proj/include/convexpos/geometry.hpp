#pragma once

// Convex bodies in the plane, their support functions, and dualization of an
// arrangement of bodies into a curve system on the cylinder.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "convexpos/curve_system.hpp"
#include "convexpos/error.hpp"
#include "convexpos/rng.hpp"

namespace convexpos {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kEpsilon = 1e-9;
inline constexpr double kEventSeparation = 1e-8;
inline constexpr std::size_t kDefaultGrid = 4096;

struct Point {
    double x = 0;
    double y = 0;
    friend bool operator==(const Point&, const Point&) = default;
};

inline double cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline double normalize_angle(double t) {
    t = std::fmod(t, kTwoPi);
    if (t < 0) t += kTwoPi;
    return t >= kTwoPi ? 0.0 : t;
}

/// A point or a strictly convex polygon with counter-clockwise vertices.
class ConvexBody {
public:
    ConvexBody() = default;

    explicit ConvexBody(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
        const std::size_t n = vertices_.size();
        if (n == 0) fail(ErrorKind::InvalidBody, "body has no vertices");
        if (n == 2) fail(ErrorKind::InvalidBody, "segments are not accepted as bodies");
        for (const auto& p : vertices_)
            if (!std::isfinite(p.x) || !std::isfinite(p.y)) fail(ErrorKind::InvalidBody, "non-finite vertex");
        if (n == 1) return;
        double turning = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const Point& a = vertices_[i];
            const Point& b = vertices_[(i + 1) % n];
            const Point& c = vertices_[(i + 2) % n];
            if (!(cross(a, b, c) > 0))
                fail(ErrorKind::InvalidBody, "vertices " + std::to_string(i) + ".." + std::to_string((i + 2) % n) +
                                                 " are not strictly left-turning");
            const double e1 = std::atan2(b.y - a.y, b.x - a.x);
            const double e2 = std::atan2(c.y - b.y, c.x - b.x);
            turning += normalize_angle(e2 - e1);
        }
        if (std::abs(turning - kTwoPi) > 1e-6) fail(ErrorKind::InvalidBody, "polygon winds more than once");
    }

    const std::vector<Point>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    bool is_point() const { return vertices_.size() == 1; }

    friend bool operator==(const ConvexBody&, const ConvexBody&) = default;

private:
    std::vector<Point> vertices_;
};

struct LabeledBody {
    Label label = 0;
    ConvexBody body;
    friend bool operator==(const LabeledBody&, const LabeledBody&) = default;
};

using Arrangement = std::vector<LabeledBody>;

inline double dot_dir(const Point& p, double theta) { return p.x * std::cos(theta) + p.y * std::sin(theta); }

inline double support(const ConvexBody& a, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& p : a.vertices()) best = std::max(best, p.x * c + p.y * s);
    return best;
}

namespace detail {

inline std::size_t argmax_vertex(const ConvexBody& a, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    std::size_t best = 0;
    for (std::size_t i = 1; i < a.size(); ++i)
        if (a.vertices()[i].x * c + a.vertices()[i].y * s > a.vertices()[best].x * c + a.vertices()[best].y * s)
            best = i;
    return best;
}

// Supporting vertex for each of an increasing run of angles spanning at most
// one turn. The maximizer only advances counter-clockwise.
inline std::vector<std::size_t> argmax_walk(const ConvexBody& a, const std::vector<double>& thetas) {
    std::vector<std::size_t> out;
    if (thetas.empty()) return out;
    const std::size_t n = a.size();
    std::size_t idx = argmax_vertex(a, thetas.front());
    for (double t : thetas) {
        const double c = std::cos(t), s = std::sin(t);
        auto val = [&](std::size_t i) { return a.vertices()[i].x * c + a.vertices()[i].y * s; };
        for (std::size_t steps = 0; steps < n && val((idx + 1) % n) > val(idx); ++steps) idx = (idx + 1) % n;
        out.push_back(idx);
    }
    return out;
}

// Outward normal angle of every edge, in [0, 2pi).
inline std::vector<double> edge_normals(const ConvexBody& a) {
    std::vector<double> out;
    const auto& v = a.vertices();
    if (v.size() < 3) return out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point& p = v[i];
        const Point& q = v[(i + 1) % v.size()];
        out.push_back(normalize_angle(std::atan2(q.y - p.y, q.x - p.x) - std::numbers::pi / 2));
    }
    return out;
}

}  // namespace detail

/// Sampled support function at angles 2pi (s + offset) / samples.
inline std::vector<double> support_grid(const ConvexBody& a, std::size_t samples, double offset = 0.5) {
    std::vector<double> thetas(samples);
    for (std::size_t s = 0; s < samples; ++s)
        thetas[s] = kTwoPi * (static_cast<double>(s) + offset) / static_cast<double>(samples);
    const auto idx = detail::argmax_walk(a, thetas);
    std::vector<double> out(samples);
    for (std::size_t s = 0; s < samples; ++s) out[s] = dot_dir(a.vertices()[idx[s]], thetas[s]);
    return out;
}

struct TangentEvent {
    Label a = 0;
    Label b = 0;
    double angle = 0;
    Label rising = 0;
};

/// Angles where the two support functions agree. Each root is solved in
/// closed form per vertex-pair regime and confirmed as a transversal sign
/// change; the root count is cross-checked on a uniform grid.
inline std::vector<double> common_tangent_angles(const ConvexBody& a, const ConvexBody& b, std::size_t grid = kDefaultGrid) {
    std::vector<double> breaks{0.0};
    for (double t : detail::edge_normals(a)) breaks.push_back(t);
    for (double t : detail::edge_normals(b)) breaks.push_back(t);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    std::vector<double> mids;
    for (std::size_t i = 0; i < breaks.size(); ++i) {
        const double hi = i + 1 < breaks.size() ? breaks[i + 1] : kTwoPi;
        mids.push_back((breaks[i] + hi) / 2);
    }
    const auto ia = detail::argmax_walk(a, mids);
    const auto ib = detail::argmax_walk(b, mids);

    std::vector<double> roots;
    for (std::size_t i = 0; i < breaks.size(); ++i) {
        const double lo = breaks[i];
        const double hi = i + 1 < breaks.size() ? breaks[i + 1] : kTwoPi;
        const Point pa = a.vertices()[ia[i]], pb = b.vertices()[ib[i]];
        const double dx = pa.x - pb.x, dy = pa.y - pb.y;
        if (std::hypot(dx, dy) < 1e-12) fail(ErrorKind::DegeneratePair, "support functions agree on an interval");
        const double phi = std::atan2(dy, dx);
        for (double r : {phi + std::numbers::pi / 2, phi - std::numbers::pi / 2}) {
            double t = normalize_angle(r - lo) + lo;
            if (t > kTwoPi - 1e-12 && lo < 1e-12) t -= kTwoPi;
            if (t >= lo - 1e-12 && t <= hi + 1e-12) roots.push_back(normalize_angle(t));
        }
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> uniq;
    for (double r : roots)
        if (uniq.empty() || r - uniq.back() > 1e-10) uniq.push_back(r);
    if (uniq.size() > 1 && uniq.front() + kTwoPi - uniq.back() <= 1e-10) uniq.pop_back();

    auto diff = [&](double t) { return support(a, t) - support(b, t); };
    const std::size_t k = uniq.size();
    double min_gap = kTwoPi;
    for (std::size_t i = 0; i < k; ++i) {
        const double next = i + 1 < k ? uniq[i + 1] : uniq.front() + kTwoPi;
        min_gap = std::min(min_gap, next - uniq[i]);
    }
    const double delta = std::min(1e-6, min_gap / 4);
    for (double r : uniq)
        if (!(diff(r - delta) * diff(r + delta) < 0))
            fail(ErrorKind::DegeneratePair, "supports touch without crossing at angle " + std::to_string(r));

    if (grid > 0 && k > 0 && min_gap > 2 * kTwoPi / static_cast<double>(grid)) {
        const auto ga = support_grid(a, grid), gb = support_grid(b, grid);
        std::size_t changes = 0;
        for (std::size_t s = 0; s < grid; ++s) {
            const double d0 = ga[s] - gb[s], d1 = ga[(s + 1) % grid] - gb[(s + 1) % grid];
            if ((d0 > 0) != (d1 > 0)) ++changes;
        }
        if (changes != k)
            fail(ErrorKind::InternalInvariant, "grid sign changes disagree with closed-form tangent count");
    }
    return uniq;
}

namespace detail {

inline void require_distinct_labels(const Arrangement& arr) {
    std::vector<Label> labels;
    for (const auto& b : arr) labels.push_back(b.label);
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
        fail(ErrorKind::InvalidArgument, "repeated body label");
}

inline const ConvexBody& body_of(const Arrangement& arr, Label l) {
    for (const auto& b : arr)
        if (b.label == l) return b.body;
    fail(ErrorKind::UnknownLabel, "label " + std::to_string(l));
}

// All tangent events, sorted by angle; every pair must have an even count.
inline std::vector<TangentEvent> all_tangent_events(const Arrangement& arr, std::size_t grid, bool require_two) {
    require_distinct_labels(arr);
    std::vector<TangentEvent> out;
    for (std::size_t i = 0; i < arr.size(); ++i)
        for (std::size_t j = i + 1; j < arr.size(); ++j) {
            const auto& A = arr[i];
            const auto& B = arr[j];
            const auto angles = common_tangent_angles(A.body, B.body, grid);
            const std::string pair = std::to_string(A.label) + "," + std::to_string(B.label);
            if (require_two && angles.empty()) fail(ErrorKind::NestedPair, "bodies " + pair + " have no common tangent");
            if (require_two && angles.size() > 2)
                fail(ErrorKind::CrossingPair, "bodies " + pair + " have " + std::to_string(angles.size()) + " common tangents");
            for (double t : angles) {
                const double probe = t + kEventSeparation / 2;
                const bool a_up = support(A.body, probe) > support(B.body, probe);
                out.push_back({std::min(A.label, B.label), std::max(A.label, B.label), t, a_up ? A.label : B.label});
            }
        }
    std::sort(out.begin(), out.end(), [](const TangentEvent& x, const TangentEvent& y) { return x.angle < y.angle; });
    return out;
}

inline void require_separated(const std::vector<TangentEvent>& events) {
    const std::size_t m = events.size();
    for (std::size_t i = 0; i < m && m > 1; ++i) {
        const double next = i + 1 < m ? events[i + 1].angle : events.front().angle + kTwoPi;
        if (next - events[i].angle < kEventSeparation)
            fail(ErrorKind::NotGeneric, "tangent events closer than tolerance near angle " + std::to_string(events[i].angle));
    }
}

// Angle inside the cyclic gap that contains 0, where the base order is read.
inline double base_angle(const std::vector<TangentEvent>& events) {
    if (events.empty()) return 0;
    return (events.back().angle - kTwoPi + events.front().angle) / 2;
}

inline Permutation order_at(const Arrangement& arr, double theta) {
    std::vector<std::pair<double, Label>> h;
    for (const auto& b : arr) h.push_back({support(b.body, theta), b.label});
    std::sort(h.begin(), h.end());
    for (std::size_t i = 1; i < h.size(); ++i)
        if (h[i].first - h[i - 1].first < kEpsilon) fail(ErrorKind::NotGeneric, "supports tie at the base angle");
    Permutation p;
    for (const auto& [v, l] : h) p.push_back(l);
    return p;
}

}  // namespace detail

/// Tangent events of every pair, sorted by angle.
inline std::vector<TangentEvent> tangent_events(const Arrangement& arr, std::size_t grid = kDefaultGrid) {
    return detail::all_tangent_events(arr, grid, false);
}

/// Throws NotGeneric or DegeneratePair unless every event is transversal and
/// event angles are pairwise separated.
inline void check_generic(const Arrangement& arr, std::size_t grid = kDefaultGrid) {
    const auto events = detail::all_tangent_events(arr, grid, false);
    detail::require_separated(events);
    detail::order_at(arr, detail::base_angle(events));
}

/// The dual curve system: base order just after angle 0, events in angular order.
inline CurveSystem dualize(const Arrangement& arr, std::size_t grid = kDefaultGrid) {
    const auto tev = detail::all_tangent_events(arr, grid, true);
    detail::require_separated(tev);
    const Permutation base = detail::order_at(arr, detail::base_angle(tev));
    std::vector<Event> events;
    for (const auto& e : tev) events.emplace_back(e.a, e.b);
    try {
        return CurveSystem(base, events);
    } catch (const Error& e) {
        fail(ErrorKind::InternalInvariant, std::string("dual events do not form a curve system: ") + e.what());
    }
}

/// Convex independence from support maxima. Candidate angles are the
/// midpoints between consecutive tangent angles, where the top body is
/// constant, plus a uniform grid.
class GeometricOracle {
public:
    explicit GeometricOracle(const Arrangement& arr, std::size_t grid = kDefaultGrid) : arr_(arr), grid_(grid) {
        detail::require_distinct_labels(arr_);
        for (std::size_t i = 0; i < arr_.size(); ++i) {
            index_[arr_[i].label] = i;
            samples_.push_back(grid_ > 0 ? support_grid(arr_[i].body, grid_) : std::vector<double>{});
        }
        const std::size_t n = arr_.size();
        tangents_.assign(n * n, {});
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                tangents_[i * n + j] = common_tangent_angles(arr_[i].body, arr_[j].body, 0);
    }

    /// Smallest margin by which each member beats the others, per member.
    std::vector<double> margins(const std::vector<Label>& subset) const {
        std::vector<std::size_t> idx;
        for (Label l : subset) {
            auto it = index_.find(l);
            if (it == index_.end()) fail(ErrorKind::UnknownLabel, "label " + std::to_string(l));
            idx.push_back(it->second);
        }
        const std::size_t n = arr_.size(), k = idx.size();
        std::vector<double> cuts;
        for (std::size_t x = 0; x < k; ++x)
            for (std::size_t y = x + 1; y < k; ++y) {
                const auto& t = tangents_[std::min(idx[x], idx[y]) * n + std::max(idx[x], idx[y])];
                cuts.insert(cuts.end(), t.begin(), t.end());
            }
        std::sort(cuts.begin(), cuts.end());
        std::vector<double> probes;
        for (std::size_t i = 0; i < cuts.size(); ++i) {
            const double next = i + 1 < cuts.size() ? cuts[i + 1] : cuts.front() + kTwoPi;
            probes.push_back((cuts[i] + next) / 2);
        }
        if (cuts.empty()) probes.push_back(0);

        std::vector<double> best(k, -std::numeric_limits<double>::infinity());
        std::vector<double> h(k);
        auto score = [&]() {
            for (std::size_t x = 0; x < k; ++x) {
                double other = -std::numeric_limits<double>::infinity();
                for (std::size_t y = 0; y < k; ++y)
                    if (y != x) other = std::max(other, h[y]);
                best[x] = std::max(best[x], h[x] - other);
            }
        };
        for (double t : probes) {
            for (std::size_t x = 0; x < k; ++x) h[x] = support(arr_[idx[x]].body, t);
            score();
        }
        for (std::size_t s = 0; s < grid_; ++s) {
            for (std::size_t x = 0; x < k; ++x) h[x] = samples_[idx[x]][s];
            score();
        }
        return best;
    }

    bool independent(const std::vector<Label>& subset, double eps = kEpsilon) const {
        if (subset.size() < 3) fail(ErrorKind::SubsetTooSmall, "independence needs at least 3 labels");
        bool all = true;
        for (double m : margins(subset)) {
            if (std::abs(m) < eps) fail(ErrorKind::Tolerance, "support margin " + std::to_string(m) + " below tolerance");
            all = all && m > 0;
        }
        return all;
    }

private:
    Arrangement arr_;
    std::size_t grid_;
    std::map<Label, std::size_t> index_;
    std::vector<std::vector<double>> samples_;
    std::vector<std::vector<double>> tangents_;
};

inline bool is_convexly_independent_geometric(const Arrangement& arr, const std::vector<Label>& subset,
                                              double eps = kEpsilon, std::size_t grid = kDefaultGrid) {
    Arrangement sub;
    for (Label l : subset) sub.push_back({l, detail::body_of(arr, l)});
    return GeometricOracle(sub, grid).independent(subset, eps);
}

namespace detail {

inline bool is_generic(const Arrangement& arr, std::size_t grid) {
    try {
        check_generic(arr, grid);
        return true;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotGeneric || e.kind() == ErrorKind::DegeneratePair) return false;
        throw;
    }
}

inline std::optional<std::size_t> tangent_count(const ConvexBody& a, const ConvexBody& b, std::size_t grid) {
    try {
        return common_tangent_angles(a, b, grid).size();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::DegeneratePair) return std::nullopt;
        throw;
    }
}

}  // namespace detail

/// Seeded vertex jitter, each coordinate by less than eps / 2, until the
/// arrangement is generic. Tangent counts of pairs that were already
/// non-degenerate must survive the jitter.
inline Arrangement perturb(const Arrangement& arr, double eps, std::uint64_t seed = 0, std::size_t retries = 64,
                           std::size_t grid = kDefaultGrid) {
    if (!(eps > 0)) fail(ErrorKind::InvalidArgument, "perturbation size must be positive");
    if (detail::is_generic(arr, grid)) return arr;
    const std::size_t n = arr.size();
    std::vector<std::optional<std::size_t>> before(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) before[i * n + j] = detail::tangent_count(arr[i].body, arr[j].body, grid);

    for (std::size_t attempt = 0; attempt < retries; ++attempt) {
        auto rng = make_rng(seed, attempt);
        Arrangement out;
        bool ok = true;
        for (const auto& b : arr) {
            std::vector<Point> v = b.body.vertices();
            for (auto& p : v) {
                p.x += uniform(rng, -eps / 2, eps / 2);
                p.y += uniform(rng, -eps / 2, eps / 2);
            }
            try {
                out.push_back({b.label, ConvexBody(std::move(v))});
            } catch (const Error&) {
                ok = false;
                break;
            }
        }
        if (!ok || !detail::is_generic(out, grid)) continue;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = i + 1; j < n && ok; ++j)
                if (before[i * n + j] && detail::tangent_count(out[i].body, out[j].body, grid) != before[i * n + j]) ok = false;
        if (ok) return out;
    }
    fail(ErrorKind::PerturbationFailed, "no generic perturbation found after " + std::to_string(retries) + " attempts");
}

}  // namespace convexpos
