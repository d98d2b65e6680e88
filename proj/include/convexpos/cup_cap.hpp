#pragma once

// Cups and caps in wiring diagrams. A k-cup is a set of k wires that all
// reach the upper envelope of their restricted diagram; a cap uses the lower
// envelope instead.

#include <algorithm>
#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "convexpos/wiring_diagram.hpp"

namespace convexpos {

enum class CupCapKind { Cup, Cap };

struct CupCapCertificate {
    CupCapKind kind = CupCapKind::Cup;
    std::vector<Label> wires;  // in base order, bottom to top
    WiringDiagram witness;
};

struct CupCapResult {
    CupCapCertificate cup;
    CupCapCertificate cap;
};

/// Wires met on the top (or bottom) of the diagram from left to right,
/// consecutive repeats collapsed.
inline std::vector<Label> diagram_envelope(const WiringDiagram& w, bool upper) {
    std::vector<Label> out;
    for (const auto& p : simulate(w.base, w.switches)) {
        if (p.empty()) break;
        const Label l = upper ? p.back() : p.front();
        if (out.empty() || out.back() != l) out.push_back(l);
    }
    return out;
}

/// Definitional test: every wire of the subset appears on the relevant
/// envelope of the restricted diagram.
inline bool is_cup_or_cap(const WiringDiagram& w, const std::vector<Label>& subset, CupCapKind kind) {
    const auto env = diagram_envelope(restrict(w, subset), kind == CupCapKind::Cup);
    const std::set<Label> seen(env.begin(), env.end());
    return seen.size() == std::set<Label>(subset.begin(), subset.end()).size();
}

namespace detail {

// time[i][j] = index of the switch between base positions i and j.
inline std::vector<std::vector<std::size_t>> switch_times(const WiringDiagram& w) {
    const std::size_t n = w.base.size();
    std::vector<std::vector<std::size_t>> time(n, std::vector<std::size_t>(n, 0));
    auto index = [&](Label l) { return static_cast<std::size_t>(std::find(w.base.begin(), w.base.end(), l) - w.base.begin()); };
    for (std::size_t k = 0; k < w.switches.size(); ++k) {
        const std::size_t i = index(w.switches[k].below), j = index(w.switches[k].above);
        time[i][j] = time[j][i] = k;
    }
    return time;
}

inline std::vector<std::size_t> longest_chain(const std::vector<std::vector<std::size_t>>& time, bool cup) {
    const std::size_t n = time.size();
    if (n == 0) return {};
    if (n == 1) return {0};
    // Triple i<j<k of base positions restricts to a 3-cup iff {j,k} switches before {i,j}.
    auto good = [&](std::size_t i, std::size_t j, std::size_t k) {
        return cup ? time[j][k] < time[i][j] : time[j][k] > time[i][j];
    };
    std::vector<std::vector<std::size_t>> len(n, std::vector<std::size_t>(n, 2));
    std::vector<std::vector<std::size_t>> prev(n, std::vector<std::size_t>(n, n));
    std::size_t bi = 0, bj = 1, best = 2;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k)
            for (std::size_t i = 0; i < j; ++i)
                if (good(i, j, k) && len[i][j] + 1 > len[j][k]) {
                    len[j][k] = len[i][j] + 1;
                    prev[j][k] = i;
                }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (len[i][j] > best) {
                best = len[i][j];
                bi = i;
                bj = j;
            }
    std::vector<std::size_t> chain{bj, bi};
    while (prev[bi][bj] != n) {
        const std::size_t h = prev[bi][bj];
        chain.push_back(h);
        bj = bi;
        bi = h;
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

}  // namespace detail

/// Longest cup and longest cap, by a dynamic program over pairs of wires.
inline CupCapResult longest_cup_cap(const WiringDiagram& w) {
    require_valid(w);
    const auto time = detail::switch_times(w);
    CupCapResult out;
    for (CupCapKind kind : {CupCapKind::Cup, CupCapKind::Cap}) {
        CupCapCertificate cert;
        cert.kind = kind;
        for (std::size_t p : detail::longest_chain(time, kind == CupCapKind::Cup)) cert.wires.push_back(w.base[p]);
        cert.witness = restrict(w, cert.wires);
        (kind == CupCapKind::Cup ? out.cup : out.cap) = std::move(cert);
    }
    return out;
}

/// Longest cup and cap lengths by testing every subset; exponential.
inline std::pair<std::size_t, std::size_t> brute_force_cup_cap(const WiringDiagram& w) {
    const std::size_t n = w.base.size();
    std::size_t cup = std::min<std::size_t>(n, 2), cap = cup;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<Label> sub;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) sub.push_back(w.base[i]);
        if (sub.size() <= std::min(cup, cap)) continue;
        if (sub.size() > cup && is_cup_or_cap(w, sub, CupCapKind::Cup)) cup = sub.size();
        if (sub.size() > cap && is_cup_or_cap(w, sub, CupCapKind::Cap)) cap = sub.size();
    }
    return {cup, cap};
}

}  // namespace convexpos
