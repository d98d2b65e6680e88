#pragma once

// Wiring diagrams: half-periods of allowable sequences.
//
// Permutations are read bottom-to-top. A switch (below, above) records the
// pair immediately before it swaps, so applying it is a local transposition
// of two neighbouring positions.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "convexpos/error.hpp"
#include "convexpos/rng.hpp"

namespace convexpos {

using Label = int;
using Permutation = std::vector<Label>;

struct Switch {
    Label below = 0;
    Label above = 0;

    friend bool operator==(const Switch&, const Switch&) = default;
};

struct WiringDiagram {
    Permutation base;
    std::vector<Switch> switches;

    std::size_t wire_count() const { return base.size(); }
    friend bool operator==(const WiringDiagram&, const WiringDiagram&) = default;
};

inline std::pair<Label, Label> unordered(Label a, Label b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

namespace detail {

inline std::map<Label, std::size_t> index_positions(const Permutation& perm) {
    std::map<Label, std::size_t> pos;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (!pos.emplace(perm[i], i).second) fail(ErrorKind::InvalidArgument, "repeated label " + std::to_string(perm[i]));
    }
    return pos;
}

}  // namespace detail

/// Applies the switches in order and returns the permutation in every gap,
/// starting with `base` (so the result has switches.size() + 1 entries).
inline std::vector<Permutation> simulate(const Permutation& base, const std::vector<Switch>& switches) {
    auto pos = detail::index_positions(base);
    Permutation cur = base;
    std::vector<Permutation> out;
    out.reserve(switches.size() + 1);
    out.push_back(cur);
    for (std::size_t k = 0; k < switches.size(); ++k) {
        const auto [x, y] = switches[k];
        auto ix = pos.find(x), iy = pos.find(y);
        if (ix == pos.end() || iy == pos.end())
            fail(ErrorKind::UnknownLabel, "switch " + std::to_string(k) + " uses a label not in the base");
        const std::size_t px = ix->second, py = iy->second;
        if (py + 1 == px)
            fail(ErrorKind::MisorderedSwitch, "switch " + std::to_string(k) + ": " + std::to_string(x) +
                                                  " is above " + std::to_string(y));
        if (px + 1 != py) fail(ErrorKind::NonAdjacentSwitch, "switch " + std::to_string(k) + " is not adjacent");
        std::swap(cur[px], cur[py]);
        ix->second = py;
        iy->second = px;
        out.push_back(cur);
    }
    return out;
}

struct ValidityReport {
    bool valid = true;
    std::vector<std::string> issues;

    void add(std::string issue) {
        valid = false;
        issues.push_back(std::move(issue));
    }
};

inline ValidityReport validate_wiring_diagram(const WiringDiagram& w) {
    ValidityReport report;
    {
        std::set<Label> seen(w.base.begin(), w.base.end());
        if (seen.size() != w.base.size()) {
            report.add("base has repeated labels");
            return report;
        }
    }
    // Simulate leniently so that every problem is reported, not just the first.
    std::map<Label, std::size_t> pos;
    for (std::size_t i = 0; i < w.base.size(); ++i) pos[w.base[i]] = i;
    Permutation cur = w.base;
    std::map<std::pair<Label, Label>, int> pair_count;
    for (std::size_t k = 0; k < w.switches.size(); ++k) {
        const auto [x, y] = w.switches[k];
        if (!pos.count(x) || !pos.count(y) || x == y) {
            report.add("switch " + std::to_string(k + 1) + ": unknown label");
            continue;
        }
        ++pair_count[unordered(x, y)];
        const std::size_t px = pos[x], py = pos[y];
        if (px + 1 != py) {
            report.add("switch " + std::to_string(k + 1) + " (" + std::to_string(x) + "," + std::to_string(y) +
                       "): non-adjacent switch");
            continue;
        }
        std::swap(cur[px], cur[py]);
        pos[x] = py;
        pos[y] = px;
    }
    for (const auto& [pair, count] : pair_count)
        if (count > 1)
            report.add("duplicate pair {" + std::to_string(pair.first) + "," + std::to_string(pair.second) + "}");
    for (std::size_t i = 0; i < w.base.size(); ++i)
        for (std::size_t j = i + 1; j < w.base.size(); ++j)
            if (!pair_count.count(unordered(w.base[i], w.base[j])))
                report.add("missing pair {" + std::to_string(std::min(w.base[i], w.base[j])) + "," +
                           std::to_string(std::max(w.base[i], w.base[j])) + "}");
    Permutation reversed(w.base.rbegin(), w.base.rend());
    if (cur != reversed) report.add("final permutation is not the reverse of the base");
    return report;
}

inline void require_valid(const WiringDiagram& w) {
    auto report = validate_wiring_diagram(w);
    if (!report.valid) fail(ErrorKind::InvalidDiagram, report.issues.front());
}

/// Moves the first switch to the far end of the diagram, where the same pair
/// meets again in the opposite order. The base advances by that transposition.
inline WiringDiagram rotate_half_period(const WiringDiagram& w) {
    require_valid(w);
    if (w.switches.empty()) return w;
    WiringDiagram out;
    const Switch first = w.switches.front();
    out.base = simulate(w.base, {first}).back();
    out.switches.assign(w.switches.begin() + 1, w.switches.end());
    out.switches.push_back({first.above, first.below});
    return out;
}

inline WiringDiagram restrict(const WiringDiagram& w, const std::vector<Label>& subset) {
    std::set<Label> keep(subset.begin(), subset.end());
    for (Label l : keep)
        if (std::find(w.base.begin(), w.base.end(), l) == w.base.end())
            fail(ErrorKind::UnknownLabel, "label " + std::to_string(l) + " not in diagram");
    WiringDiagram out;
    for (Label l : w.base)
        if (keep.count(l)) out.base.push_back(l);
    for (const auto& s : w.switches)
        if (keep.count(s.below) && keep.count(s.above)) out.switches.push_back(s);
    return out;
}

inline WiringDiagram delete_wire(const WiringDiagram& w, Label wire) {
    std::vector<Label> rest;
    for (Label l : w.base)
        if (l != wire) rest.push_back(l);
    return restrict(w, rest);
}

/// The ordered list of partners each wire meets. Two diagrams with the same
/// base are equal up to commuting independent switches iff these agree.
inline std::map<Label, std::vector<Label>> crossing_sequences(const WiringDiagram& w) {
    std::map<Label, std::vector<Label>> seq;
    for (Label l : w.base) seq[l];
    for (const auto& s : w.switches) {
        seq[s.below].push_back(s.above);
        seq[s.above].push_back(s.below);
    }
    return seq;
}

inline bool equivalent_up_to_commutation(const WiringDiagram& a, const WiringDiagram& b) {
    return a.base == b.base && crossing_sequences(a) == crossing_sequences(b);
}

struct EvacuationTrace {
    Label top_wire = 0;
    std::size_t rotations = 0;
    std::vector<Switch> evacuated;
};

/// Rewrites `w` so that its top wire crosses every other wire before any other
/// crossing happens. Crossings between two wires that have not yet met the top
/// wire are commuted to the front and rotated, one at a time, to the far end;
/// afterwards the top wire's crossings are commuted to the front. The result
/// encodes the same generalized configuration with the same labels.
inline WiringDiagram evacuate_top_wire(const WiringDiagram& w, EvacuationTrace* trace = nullptr) {
    require_valid(w);
    if (w.base.empty()) return w;
    const Label top = w.base.back();

    std::set<Label> crossed_top;
    std::vector<Switch> left, rest;
    for (const auto& s : w.switches) {
        const bool involves_top = s.below == top || s.above == top;
        if (!involves_top && !crossed_top.count(s.below) && !crossed_top.count(s.above))
            left.push_back(s);
        else
            rest.push_back(s);
        if (involves_top) crossed_top.insert(s.below == top ? s.above : s.below);
    }

    // Left crossings form a prefix-closed set, so this reordering only
    // commutes switches on disjoint wires.
    WiringDiagram cur{w.base, left};
    cur.switches.insert(cur.switches.end(), rest.begin(), rest.end());
    require_valid(cur);

    for (std::size_t i = 0; i < left.size(); ++i) cur = rotate_half_period(cur);

    std::vector<Switch> top_first, others;
    for (const auto& s : cur.switches) (s.below == top || s.above == top ? top_first : others).push_back(s);
    cur.switches = top_first;
    cur.switches.insert(cur.switches.end(), others.begin(), others.end());
    require_valid(cur);

    if (trace) {
        trace->top_wire = top;
        trace->rotations = left.size();
        trace->evacuated = left;
    }
    return cur;
}

/// Random valid diagram on labels 0..n-1: random base, then repeatedly swap a
/// uniformly chosen adjacent pair that has not crossed yet.
inline WiringDiagram random_wiring_diagram(std::size_t n, Rng& rng) {
    WiringDiagram w;
    w.base.resize(n);
    for (std::size_t i = 0; i < n; ++i) w.base[i] = static_cast<Label>(i);
    for (std::size_t i = n; i > 1; --i) std::swap(w.base[i - 1], w.base[uniform_index(rng, i)]);

    std::vector<std::size_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) rank[static_cast<std::size_t>(w.base[i])] = i;
    Permutation cur = w.base;
    std::vector<std::size_t> candidates;
    for (;;) {
        candidates.clear();
        for (std::size_t p = 0; p + 1 < n; ++p)
            if (rank[static_cast<std::size_t>(cur[p])] < rank[static_cast<std::size_t>(cur[p + 1])])
                candidates.push_back(p);
        if (candidates.empty()) break;
        const std::size_t p = candidates[uniform_index(rng, candidates.size())];
        w.switches.push_back({cur[p], cur[p + 1]});
        std::swap(cur[p], cur[p + 1]);
    }
    return w;
}

/// Calls `visit` for every valid diagram with base 0,1,...,n-1 (every
/// diagram on n wires up to relabeling).
inline void enumerate_wiring_diagrams(std::size_t n, const std::function<void(const WiringDiagram&)>& visit) {
    WiringDiagram w;
    for (std::size_t i = 0; i < n; ++i) w.base.push_back(static_cast<Label>(i));
    Permutation cur = w.base;
    const std::size_t total = n * (n - 1) / 2;
    std::function<void()> rec = [&]() {
        if (w.switches.size() == total) {
            visit(w);
            return;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            if (cur[p] < cur[p + 1]) {
                w.switches.push_back({cur[p], cur[p + 1]});
                std::swap(cur[p], cur[p + 1]);
                rec();
                std::swap(cur[p], cur[p + 1]);
                w.switches.pop_back();
            }
        }
    };
    rec();
}

}  // namespace convexpos
