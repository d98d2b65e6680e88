#pragma once

// Erdos-Szekeres search: exhaustive maximum independent sets, the
// evacuation pipeline for wiring diagrams, lower-bound point sets, and convex
// clusterings.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "convexpos/binomial.hpp"
#include "convexpos/cup_cap.hpp"
#include "convexpos/curve_system.hpp"
#include "convexpos/geometry.hpp"

namespace convexpos {

inline constexpr std::size_t kBruteForceLimit = 16;
inline constexpr std::uint64_t kTransversalCap = 1'000'000;

enum class CertificateKind { IndependentSet, Cup, Cap };

inline std::string to_string(CertificateKind k) {
    switch (k) {
        case CertificateKind::Cup: return "cup";
        case CertificateKind::Cap: return "cap";
        default: return "independent-set";
    }
}

inline CertificateKind certificate_kind_from_string(const std::string& s) {
    if (s == "cup") return CertificateKind::Cup;
    if (s == "cap") return CertificateKind::Cap;
    if (s == "independent-set") return CertificateKind::IndependentSet;
    fail(ErrorKind::MalformedInput, "unknown certificate kind '" + s + "'");
}

struct SearchCertificate {
    CertificateKind kind = CertificateKind::IndependentSet;
    std::vector<Label> labels;
    std::vector<std::string> trace;
    friend bool operator==(const SearchCertificate&, const SearchCertificate&) = default;
};

/// Independent sets against the envelope of the double cover; cups and caps
/// against the restricted diagram.
inline bool validate_certificate(const WiringDiagram& w, const SearchCertificate& c) {
    if (c.labels.size() < 3) return !c.labels.empty() || w.base.empty();
    switch (c.kind) {
        case CertificateKind::Cup: return is_cup_or_cap(w, c.labels, CupCapKind::Cup);
        case CertificateKind::Cap: return is_cup_or_cap(w, c.labels, CupCapKind::Cap);
        default: return is_convexly_independent(double_cover(w), c.labels);
    }
}

/// Without a diagram only independent-set certificates can be checked.
inline bool validate_certificate(const CurveSystem& s, const SearchCertificate& c) {
    if (c.kind != CertificateKind::IndependentSet) return false;
    if (c.labels.size() < 3) return !c.labels.empty() || s.labels().empty();
    return is_convexly_independent(s, c.labels);
}

namespace detail {

inline std::string join_labels(const std::vector<Label>& v) {
    std::string out;
    for (Label l : v) out += (out.empty() ? "" : ",") + std::to_string(l);
    return "{" + out + "}";
}

}  // namespace detail

/// A maximum convexly independent subset by include-first depth-first search.
/// Dependent triples and 4-sets are tabulated once and their supersets never
/// visited; every candidate of size 5 or more is confirmed by the envelope
/// oracle. Among maximum sets the lexicographically smallest is returned.
inline std::vector<Label> brute_force_max_independent(const CurveSystem& s, std::size_t limit = kBruteForceLimit) {
    const auto labels = s.labels();
    const std::size_t n = labels.size();
    if (n > limit)
        fail(ErrorKind::SizeLimit, std::to_string(n) + " curves exceed the brute-force limit " + std::to_string(limit));
    if (n < 3) return labels;

    auto key3 = [n](std::size_t a, std::size_t b, std::size_t c) { return (a * n + b) * n + c; };
    auto key4 = [n](std::size_t a, std::size_t b, std::size_t c, std::size_t d) { return ((a * n + b) * n + c) * n + d; };
    std::vector<char> ok3(n * n * n, 1), ok4(n * n * n * n, 1);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c) {
                ok3[key3(a, b, c)] = is_convexly_independent(s, {labels[a], labels[b], labels[c]});
                for (std::size_t d = c + 1; d < n; ++d)
                    ok4[key4(a, b, c, d)] = is_convexly_independent(s, {labels[a], labels[b], labels[c], labels[d]});
            }

    std::vector<std::size_t> cur, best{0, 1};
    std::function<void(std::size_t)> dfs = [&](std::size_t next) {
        if (cur.size() > best.size()) best = cur;
        for (std::size_t x = next; x < n; ++x) {
            if (cur.size() + (n - x) <= best.size()) return;
            const std::size_t k = cur.size();
            bool ok = true;
            for (std::size_t i = 0; i < k && ok; ++i)
                for (std::size_t j = i + 1; j < k && ok; ++j) {
                    ok = ok3[key3(cur[i], cur[j], x)];
                    for (std::size_t h = j + 1; h < k && ok; ++h) ok = ok4[key4(cur[i], cur[j], cur[h], x)];
                }
            if (!ok) continue;
            cur.push_back(x);
            bool full = true;
            if (cur.size() >= 5) {
                std::vector<Label> sub;
                for (std::size_t i : cur) sub.push_back(labels[i]);
                full = is_convexly_independent(s, sub);
            }
            if (full) dfs(x + 1);
            cur.pop_back();
        }
    };
    dfs(0);
    std::vector<Label> out;
    for (std::size_t i : best) out.push_back(labels[i]);
    return out;
}

namespace detail {

inline SearchCertificate cup_cap_certificate(const CupCapCertificate& c, std::size_t n, std::vector<std::string> trace) {
    SearchCertificate out;
    out.kind = c.kind == CupCapKind::Cup ? CertificateKind::Cup : CertificateKind::Cap;
    out.labels.assign(c.wires.begin(), c.wires.begin() + static_cast<std::ptrdiff_t>(std::min(n, c.wires.size())));
    out.trace = std::move(trace);
    return out;
}

}  // namespace detail

/// Searches W for n convexly independent wires: a cup or cap of W itself;
/// after evacuating and deleting the top wire t, an (n-1)-cup of the rest
/// completed by t; otherwise exhaustive search on the reduced and then the
/// full double cover. Returns the largest certificate found.
inline SearchCertificate es_pipeline(const WiringDiagram& w, std::size_t n, std::size_t limit = kBruteForceLimit) {
    require_valid(w);
    if (n < 3) fail(ErrorKind::InvalidArgument, "pipeline needs n >= 3");
    std::vector<std::string> trace;
    const auto cc = longest_cup_cap(w);
    trace.push_back("cup/cap on W: cup " + std::to_string(cc.cup.wires.size()) + ", cap " +
                    std::to_string(cc.cap.wires.size()));
    if (cc.cup.wires.size() >= n) return detail::cup_cap_certificate(cc.cup, n, trace);
    if (cc.cap.wires.size() >= n) return detail::cup_cap_certificate(cc.cap, n, trace);

    SearchCertificate best = detail::cup_cap_certificate(cc.cup.wires.size() >= cc.cap.wires.size() ? cc.cup : cc.cap,
                                                         n, {});
    const auto cover = double_cover(w);
    auto finish = [&](SearchCertificate c) {
        c.trace = trace;
        if (!validate_certificate(w, c))
            fail(ErrorKind::InternalInvariant, "certificate " + detail::join_labels(c.labels) + " does not validate");
        return c;
    };

    if (w.base.size() >= 2) {
        EvacuationTrace ev;
        const auto evacuated = evacuate_top_wire(w, &ev);
        const Label t = ev.top_wire;
        trace.push_back("evacuated top wire " + std::to_string(t) + " with " + std::to_string(ev.rotations) +
                        " rotations");
        const auto w0 = delete_wire(evacuated, t);
        trace.push_back("deleted wire " + std::to_string(t));
        const auto cc0 = longest_cup_cap(w0);
        trace.push_back("cup/cap on W0: cup " + std::to_string(cc0.cup.wires.size()) + ", cap " +
                        std::to_string(cc0.cap.wires.size()));
        if (cc0.cup.wires.size() + 1 >= n) {
            std::vector<Label> cand(cc0.cup.wires.begin(), cc0.cup.wires.begin() + static_cast<std::ptrdiff_t>(n - 1));
            cand.push_back(t);
            std::sort(cand.begin(), cand.end());
            if (is_cup_or_cap(evacuated, cand, CupCapKind::Cup) && is_convexly_independent(cover, cand)) {
                trace.push_back("cup " + detail::join_labels(cand) + " in the evacuated diagram");
                return finish({CertificateKind::IndependentSet, cand, {}});
            }
        }
        if (w0.base.size() <= limit) {
            auto found = brute_force_max_independent(double_cover(w0), limit);
            trace.push_back("exhaustive search on W0: " + std::to_string(found.size()));
            if (found.size() >= n) {
                found.resize(n);
                return finish({CertificateKind::IndependentSet, found, {}});
            }
            if (found.size() > best.labels.size()) best = {CertificateKind::IndependentSet, found, {}};
        }
    }
    if (w.base.size() <= limit) {
        auto found = brute_force_max_independent(cover, limit);
        trace.push_back("exhaustive search on W: " + std::to_string(found.size()));
        if (found.size() >= n) found.resize(n);
        if (found.size() > best.labels.size() || found.size() >= n)
            best = {CertificateKind::IndependentSet, found, {}};
    }
    return finish(best);
}

/// Smallest number of wires at which the pipeline is guaranteed an
/// n-certificate.
inline std::size_t pipeline_bound(std::size_t n) {
    return static_cast<std::size_t>(binomial(static_cast<long long>(2 * n) - 5, static_cast<long long>(n) - 2)) + 1;
}

namespace detail {

using PointSet = std::vector<Point>;

inline void normalize(PointSet& p) {
    double x0 = p[0].x, x1 = p[0].x, y0 = p[0].y, y1 = p[0].y;
    for (const auto& q : p) {
        x0 = std::min(x0, q.x), x1 = std::max(x1, q.x);
        y0 = std::min(y0, q.y), y1 = std::max(y1, q.y);
    }
    const double scale = std::max({x1 - x0, y1 - y0, 1e-300});
    for (auto& q : p) q = {(q.x - x0) / scale, (q.y - y0) / scale};
}

// Points sorted by x with no k-cup and no l-cap, C(k+l-4, k-2) of them,
// normalized to the unit box with every slope in (-1, 1). Base chains get
// jittered abscissae so repeated sub-blocks are not translates of each other.
inline PointSet cup_cap_free(std::size_t k, std::size_t l, Rng& rng) {
    PointSet out;
    if (k <= 2 || l <= 2) {
        out.push_back({0, 0});
        return out;
    }
    if (k == 3 || l == 3) {
        const std::size_t count = k == 3 ? l - 1 : k - 1;
        const double sign = k == 3 ? -1 : 1;  // a cap when cups are forbidden
        for (std::size_t i = 0; i < count; ++i) {
            const double x = static_cast<double>(i) + uniform(rng, -0.25, 0.25);
            out.push_back({x, sign * x * x});
        }
    } else {
        // Every slope from the left block to the right one exceeds 1.
        PointSet left = cup_cap_free(k - 1, l, rng), right = cup_cap_free(k, l - 1, rng);
        out = left;
        for (const auto& q : right) out.push_back({q.x + 2, q.y + 4.5});
    }
    normalize(out);
    double steep = 0;
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
            steep = std::max(steep, std::abs((out[j].y - out[i].y) / (out[j].x - out[i].x)));
    if (steep > 0) {
        const double factor = steep * uniform(rng, 1.05, 1.5);
        for (auto& q : out) q.y /= factor;
    }
    return out;
}

}  // namespace detail

/// Point bodies with no n convexly independent members, 2^(n-2) of them:
/// blocks free of (n-i)-cups and (i+2)-caps, shrunk and strung along a steep
/// concave arc. Labels follow increasing x.
inline Arrangement lower_bound_construction(std::size_t n) {
    if (n < 3 || n > 8) fail(ErrorKind::SizeLimit, "lower-bound construction supports 3 <= n <= 8");
    const double gap = 10;
    for (std::uint64_t attempt = 0; attempt < 256; ++attempt) {
        auto rng = make_rng(n, attempt);
        Arrangement arr;
        for (std::size_t i = 0; i + 2 <= n; ++i) {
            const double ci = static_cast<double>(i);
            const Point centre{gap * ci, -gap * (3 * ci + ci * ci / 2)};
            for (const auto& q : detail::cup_cap_free(n - i, i + 2, rng))
                arr.push_back({static_cast<Label>(arr.size()), ConvexBody({{centre.x + q.x, centre.y + q.y}})});
        }
        if (detail::is_generic(arr, 0)) return arr;
    }
    fail(ErrorKind::GenerationFailed, "no generic lower-bound layout found");
}

struct ConvexClustering {
    std::vector<std::vector<Label>> clusters;
    friend bool operator==(const ConvexClustering&, const ConvexClustering&) = default;
};

struct ClusteringReport {
    bool passed = true;
    std::size_t size = 0;
    std::uint64_t checked = 0;
    std::vector<Label> witness;
};

/// Checks every transversal, one label per cluster, with the envelope oracle.
inline ClusteringReport verify_clustering(const CurveSystem& s, const ConvexClustering& c,
                                          std::uint64_t cap = kTransversalCap) {
    ClusteringReport report;
    if (c.clusters.empty()) return report;
    std::set<Label> seen;
    for (const auto& cl : c.clusters) {
        if (cl.size() != c.clusters.front().size()) fail(ErrorKind::UnequalSizes, "clusters differ in size");
        for (Label l : cl) {
            if (!s.has_label(l)) fail(ErrorKind::UnknownLabel, "label " + std::to_string(l));
            if (!seen.insert(l).second) fail(ErrorKind::ClusterOverlap, "label " + std::to_string(l) + " is in two clusters");
        }
    }
    report.size = c.clusters.front().size();
    const std::size_t k = c.clusters.size();
    double total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= static_cast<double>(report.size);
    if (total > static_cast<double>(cap))
        fail(ErrorKind::SizeLimit, "clustering has more than " + std::to_string(cap) + " transversals");
    if (k < 3 || report.size == 0) return report;

    std::vector<std::size_t> digit(k, 0);
    for (;;) {
        std::vector<Label> t;
        for (std::size_t i = 0; i < k; ++i) t.push_back(c.clusters[i][digit[i]]);
        ++report.checked;
        if (!is_convexly_independent(s, t)) {
            report.passed = false;
            report.witness = t;
            return report;
        }
        std::size_t i = k;
        while (i > 0 && ++digit[i - 1] == report.size) digit[--i] = 0;
        if (i == 0) break;
    }
    return report;
}

inline ClusteringReport verify_clustering(const Arrangement& arr, const ConvexClustering& c,
                                          std::uint64_t cap = kTransversalCap) {
    return verify_clustering(dualize(arr), c, cap);
}

/// Backtracking search for n clusters of the given size. Clusters are built
/// one label at a time; a label joins only if every partial transversal
/// through it and the finished clusters is independent.
inline std::optional<ConvexClustering> find_clustering(const CurveSystem& s, std::size_t n, std::size_t size,
                                                      std::size_t limit = kBruteForceLimit) {
    if (n < 3 || size < 1) fail(ErrorKind::InvalidArgument, "clustering needs n >= 3 and size >= 1");
    const auto labels = s.labels();
    if (labels.size() > limit)
        fail(ErrorKind::SizeLimit, std::to_string(labels.size()) + " curves exceed the search limit " + std::to_string(limit));
    if (n * size > labels.size()) return std::nullopt;

    std::vector<std::vector<Label>> clusters(n);
    std::set<Label> used;
    auto compatible = [&](std::size_t j, Label x) {
        if (j < 2) return true;
        std::vector<std::size_t> digit(j, 0);
        for (;;) {
            std::vector<Label> t{x};
            for (std::size_t i = 0; i < j; ++i) t.push_back(clusters[i][digit[i]]);
            if (!is_convexly_independent(s, t)) return false;
            std::size_t i = j;
            while (i > 0 && ++digit[i - 1] == size) digit[--i] = 0;
            if (i == 0) return true;
        }
    };
    // Cluster j is filled in increasing label order; cluster minima increase.
    std::function<bool(std::size_t, std::size_t)> fill = [&](std::size_t j, std::size_t from) -> bool {
        if (j == n) return true;
        if (clusters[j].size() == size) return fill(j + 1, 0);
        const std::size_t start = clusters[j].empty() && j > 0 ? 0 : from;
        for (std::size_t idx = start; idx < labels.size(); ++idx) {
            const Label x = labels[idx];
            if (used.count(x)) continue;
            if (clusters[j].empty() && j > 0 && x < clusters[j - 1].front()) continue;
            if (!compatible(j, x)) continue;
            clusters[j].push_back(x);
            used.insert(x);
            if (fill(j, idx + 1)) return true;
            clusters[j].pop_back();
            used.erase(x);
        }
        return false;
    };
    if (!fill(0, 0)) return std::nullopt;
    ConvexClustering out{clusters};
    if (!verify_clustering(s, out).passed) fail(ErrorKind::InternalInvariant, "found clustering does not verify");
    return out;
}

}  // namespace convexpos
