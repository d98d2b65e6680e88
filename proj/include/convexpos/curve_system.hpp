#pragma once

// Cyclic curve systems on the cylinder: a base permutation at angle 0 and the
// cyclic sequence of adjacent transpositions met while sweeping once around.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "convexpos/error.hpp"
#include "convexpos/wiring_diagram.hpp"

namespace convexpos {

/// An unordered pair of labels, stored with a < b.
struct Event {
    Label a = 0;
    Label b = 0;

    Event() = default;
    Event(Label x, Label y) : a(std::min(x, y)), b(std::max(x, y)) {}

    bool involves(Label l) const { return a == l || b == l; }
    Label other(Label l) const { return a == l ? b : a; }
    friend bool operator==(const Event&, const Event&) = default;
    friend auto operator<=>(const Event&, const Event&) = default;
};

inline std::string triple_name(Label a, Label b, Label c) {
    return "{" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "}";
}

class CurveSystem {
public:
    CurveSystem() = default;

    /// Validates every invariant: distinct labels, each event adjacent when
    /// applied, every pair crossing exactly twice, return to base.
    CurveSystem(Permutation base, std::vector<Event> events) : base_(std::move(base)), events_(std::move(events)) {
        if (base_.empty()) fail(ErrorKind::InvalidSystem, "empty base");
        std::map<Label, std::size_t> pos;
        for (std::size_t i = 0; i < base_.size(); ++i)
            if (!pos.emplace(base_[i], i).second)
                fail(ErrorKind::InvalidSystem, "repeated label " + std::to_string(base_[i]));
        std::map<Event, int> count;
        Permutation cur = base_;
        for (std::size_t k = 0; k < events_.size(); ++k) {
            const Event e = events_[k];
            auto ia = pos.find(e.a), ib = pos.find(e.b);
            if (ia == pos.end() || ib == pos.end() || e.a == e.b)
                fail(ErrorKind::InvalidSystem, "event " + std::to_string(k) + " uses an unknown label");
            const std::size_t pa = ia->second, pb = ib->second;
            if (pa + 1 != pb && pb + 1 != pa)
                fail(ErrorKind::InvalidSystem, "event " + std::to_string(k) + " swaps a non-adjacent pair");
            std::swap(cur[pa], cur[pb]);
            std::swap(ia->second, ib->second);
            ++count[e];
        }
        if (cur != base_) fail(ErrorKind::InvalidSystem, "events do not return to the base permutation");
        for (std::size_t i = 0; i < base_.size(); ++i)
            for (std::size_t j = i + 1; j < base_.size(); ++j) {
                const Event e(base_[i], base_[j]);
                auto it = count.find(e);
                const int c = it == count.end() ? 0 : it->second;
                if (c != 2)
                    fail(ErrorKind::InvalidSystem, "pair {" + std::to_string(e.a) + "," + std::to_string(e.b) +
                                                       "} crosses " + std::to_string(c) + " times");
            }
    }

    const Permutation& base() const { return base_; }
    const std::vector<Event>& events() const { return events_; }
    std::size_t curve_count() const { return base_.size(); }
    std::size_t event_count() const { return events_.size(); }

    std::vector<Label> labels() const {
        std::vector<Label> out = base_;
        std::sort(out.begin(), out.end());
        return out;
    }

    bool has_label(Label l) const { return std::find(base_.begin(), base_.end(), l) != base_.end(); }

    /// Permutation in gap g, i.e. just before event g; gap 0 is the base.
    std::vector<Permutation> gaps() const {
        std::vector<Permutation> out;
        out.reserve(events_.size());
        Permutation cur = base_;
        std::map<Label, std::size_t> pos;
        for (std::size_t i = 0; i < cur.size(); ++i) pos[cur[i]] = i;
        for (const auto& e : events_) {
            out.push_back(cur);
            std::swap(cur[pos[e.a]], cur[pos[e.b]]);
            std::swap(pos[e.a], pos[e.b]);
        }
        if (out.empty()) out.push_back(cur);
        return out;
    }

    friend bool operator==(const CurveSystem&, const CurveSystem&) = default;

private:
    Permutation base_;
    std::vector<Event> events_;
};

namespace detail {

inline void require_labels(const CurveSystem& s, const std::vector<Label>& subset) {
    std::set<Label> seen;
    for (Label l : subset) {
        if (!s.has_label(l)) fail(ErrorKind::UnknownLabel, "label " + std::to_string(l) + " not in system");
        if (!seen.insert(l).second) fail(ErrorKind::InvalidArgument, "repeated label " + std::to_string(l));
    }
}

// Per-gap vertical ranks of the given labels in the restriction. Returns
// rank[g][i] for subset[i]; used by every envelope-style reading.
inline std::vector<std::vector<int>> restricted_ranks(const CurveSystem& s, const std::vector<Label>& subset) {
    std::map<Label, std::size_t> idx;
    for (std::size_t i = 0; i < subset.size(); ++i) idx[subset[i]] = i;
    std::vector<int> rank(subset.size());
    {
        int r = 0;
        for (Label l : s.base())
            if (auto it = idx.find(l); it != idx.end()) rank[it->second] = r++;
    }
    std::vector<std::vector<int>> out;
    const std::size_t m = s.event_count();
    out.reserve(std::max<std::size_t>(m, 1));
    for (std::size_t g = 0; g < std::max<std::size_t>(m, 1); ++g) {
        out.push_back(rank);
        if (g >= m) break;
        const Event e = s.events()[g];
        auto ia = idx.find(e.a), ib = idx.find(e.b);
        if (ia != idx.end() && ib != idx.end()) std::swap(rank[ia->second], rank[ib->second]);
    }
    return out;
}

inline std::vector<Label> collapse_cyclic(const std::vector<Label>& seq) {
    std::vector<Label> out;
    for (Label l : seq)
        if (out.empty() || out.back() != l) out.push_back(l);
    while (out.size() > 1 && out.back() == out.front()) out.pop_back();
    return out;
}

inline std::vector<Label> envelope(const CurveSystem& s, const std::vector<Label>& subset, bool upper) {
    require_labels(s, subset);
    if (subset.empty()) fail(ErrorKind::SubsetTooSmall, "envelope of an empty subset");
    const auto ranks = restricted_ranks(s, subset);
    const int want = upper ? static_cast<int>(subset.size()) - 1 : 0;
    std::vector<Label> tops;
    tops.reserve(ranks.size());
    for (const auto& r : ranks)
        for (std::size_t i = 0; i < subset.size(); ++i)
            if (r[i] == want) {
                tops.push_back(subset[i]);
                break;
            }
    return collapse_cyclic(tops);
}

}  // namespace detail

/// Keeps only the listed curves and the events among them.
inline CurveSystem restrict(const CurveSystem& s, const std::vector<Label>& subset,
                            std::vector<std::size_t>* kept_indices = nullptr) {
    if (subset.size() < 2) fail(ErrorKind::SubsetTooSmall, "restriction needs at least 2 curves");
    detail::require_labels(s, subset);
    std::set<Label> keep(subset.begin(), subset.end());
    Permutation base;
    for (Label l : s.base())
        if (keep.count(l)) base.push_back(l);
    std::vector<Event> events;
    if (kept_indices) kept_indices->clear();
    for (std::size_t k = 0; k < s.event_count(); ++k) {
        const Event e = s.events()[k];
        if (keep.count(e.a) && keep.count(e.b)) {
            events.push_back(e);
            if (kept_indices) kept_indices->push_back(k);
        }
    }
    return CurveSystem(std::move(base), std::move(events));
}

/// Cyclic word of top curves of the restriction, one entry per gap with
/// consecutive repeats collapsed; it is read from gap 0.
inline std::vector<Label> upper_envelope(const CurveSystem& s, const std::vector<Label>& subset) {
    return detail::envelope(s, subset, true);
}

inline std::vector<Label> lower_envelope(const CurveSystem& s, const std::vector<Label>& subset) {
    return detail::envelope(s, subset, false);
}

inline std::vector<Label> upper_envelope(const CurveSystem& s) { return upper_envelope(s, s.labels()); }

inline bool is_convexly_independent(const CurveSystem& s, const std::vector<Label>& subset) {
    if (subset.size() < 3) fail(ErrorKind::SubsetTooSmall, "independence needs at least 3 curves");
    const auto word = upper_envelope(s, subset);
    const std::set<Label> seen(word.begin(), word.end());
    return seen.size() == subset.size();
}

/// Partners met along `curve`, restricted to `others`, in sweep order from angle 0.
inline std::vector<Label> crossing_word(const CurveSystem& s, Label curve, const std::vector<Label>& others) {
    std::vector<Label> all = others;
    all.push_back(curve);
    detail::require_labels(s, all);
    const std::set<Label> keep(others.begin(), others.end());
    std::vector<Label> out;
    for (const auto& e : s.events())
        if (e.involves(curve) && keep.count(e.other(curve))) out.push_back(e.other(curve));
    return out;
}

struct TripleClass {
    bool orientable = false;
    /// Orientable: the envelope order, rotated to start at its smallest label.
    std::array<Label, 3> cyclic{};
    /// Non-orientable: the curve seen twice on the envelope.
    Label top = 0;

    friend bool operator==(const TripleClass&, const TripleClass&) = default;
};

inline std::array<Label, 3> canonical_cycle(Label a, Label b, Label c) {
    std::array<Label, 3> t{a, b, c};
    std::rotate(t.begin(), std::min_element(t.begin(), t.end()), t.end());
    return t;
}

/// +1 if the cycle (a,b,c) agrees with the sorted order up to rotation.
inline int cycle_sign(const std::array<Label, 3>& cycle) {
    const auto c = canonical_cycle(cycle[0], cycle[1], cycle[2]);
    return c[1] < c[2] ? 1 : -1;
}

inline TripleClass classify_triple(const CurveSystem& s, const std::array<Label, 3>& triple) {
    const std::vector<Label> sub{triple[0], triple[1], triple[2]};
    const auto word = upper_envelope(s, sub);
    const std::set<Label> seen(word.begin(), word.end());
    if (seen.size() != 3)
        fail(ErrorKind::TripleNotIndependent, "triple " + triple_name(triple[0], triple[1], triple[2]) +
                                                  " is not convexly independent");
    TripleClass out;
    if (word.size() == 3) {
        out.orientable = true;
        out.cyclic = canonical_cycle(word[0], word[1], word[2]);
        return out;
    }
    std::map<Label, int> freq;
    for (Label l : word) ++freq[l];
    for (const auto& [l, f] : freq)
        if (f > 1) out.top = l;
    return out;
}

/// Whether each curve's crossing word with the other two alternates (true),
/// or is separating (false). Throws InternalInvariant on a mixed pattern.
inline bool crossing_words_alternate(const CurveSystem& s, const std::array<Label, 3>& triple) {
    int alternating = 0;
    for (int i = 0; i < 3; ++i) {
        const Label c = triple[i];
        const auto w = crossing_word(s, c, {triple[(i + 1) % 3], triple[(i + 2) % 3]});
        if (w.size() != 4) fail(ErrorKind::InternalInvariant, "crossing word of length " + std::to_string(w.size()));
        bool alt = true;
        for (std::size_t k = 0; k < 4; ++k)
            if (w[k] == w[(k + 1) % 4]) alt = false;
        alternating += alt ? 1 : 0;
    }
    if (alternating != 0 && alternating != 3)
        fail(ErrorKind::InternalInvariant, "mixed crossing words on " + triple_name(triple[0], triple[1], triple[2]));
    return alternating == 3;
}

/// Every unordered triple of labels, lexicographically.
inline std::vector<std::array<Label, 3>> all_triples(const std::vector<Label>& labels) {
    std::vector<Label> l = labels;
    std::sort(l.begin(), l.end());
    std::vector<std::array<Label, 3>> out;
    for (std::size_t i = 0; i < l.size(); ++i)
        for (std::size_t j = i + 1; j < l.size(); ++j)
            for (std::size_t k = j + 1; k < l.size(); ++k) out.push_back({l[i], l[j], l[k]});
    return out;
}

/// First triple (lexicographically) that is not convexly independent.
inline std::optional<std::array<Label, 3>> find_dependent_triple(const CurveSystem& s) {
    for (const auto& t : all_triples(s.labels()))
        if (!is_convexly_independent(s, {t[0], t[1], t[2]})) return t;
    return std::nullopt;
}

inline std::size_t count_non_orientable(const CurveSystem& s) {
    std::size_t count = 0;
    for (const auto& t : all_triples(s.labels()))
        if (!classify_triple(s, t).orientable) ++count;
    return count;
}

inline bool is_orientable(const CurveSystem& s) { return count_non_orientable(s) == 0; }

/// The switches of `w` followed by the same pairs again: a full period.
inline CurveSystem double_cover(const WiringDiagram& w) {
    require_valid(w);
    std::vector<Event> events;
    events.reserve(2 * w.switches.size());
    for (int round = 0; round < 2; ++round)
        for (const auto& s : w.switches) events.emplace_back(s.below, s.above);
    return CurveSystem(w.base, std::move(events));
}

/// True iff the event sequence is antipodal: event i and event i + m/2 are
/// the same pair and the permutations half a period apart are reverses.
inline bool is_generalized_configuration(const CurveSystem& s) {
    const std::size_t m = s.event_count();
    const std::size_t n = s.curve_count();
    if (m != n * (n - 1) || m == 0) return m == 0;
    const std::size_t half = m / 2;
    for (std::size_t i = 0; i < half; ++i)
        if (!(s.events()[i] == s.events()[i + half])) return false;
    const auto g = s.gaps();
    for (std::size_t i = 0; i < half; ++i) {
        Permutation rev(g[i + half].rbegin(), g[i + half].rend());
        if (g[i] != rev) return false;
    }
    return true;
}

/// Rotates the cyclic event sequence so that `shift` becomes index 0.
inline CurveSystem rotate_events(const CurveSystem& s, std::size_t shift) {
    const std::size_t m = s.event_count();
    if (m == 0) return s;
    shift %= m;
    std::vector<Event> ev(m);
    for (std::size_t i = 0; i < m; ++i) ev[i] = s.events()[(i + shift) % m];
    return CurveSystem(s.gaps()[shift], std::move(ev));
}

/// Reads a wiring diagram off the first half-period of a generalized
/// configuration. Antipodality is invariant under rotation, so no phasing
/// search is needed.
inline std::optional<WiringDiagram> half_period(const CurveSystem& s) {
    if (!is_generalized_configuration(s)) return std::nullopt;
    WiringDiagram w;
    w.base = s.base();
    const auto g = s.gaps();
    for (std::size_t i = 0; i < s.event_count() / 2; ++i) {
        const Event e = s.events()[i];
        const auto& p = g[i];
        const auto ia = std::find(p.begin(), p.end(), e.a) - p.begin();
        const auto ib = std::find(p.begin(), p.end(), e.b) - p.begin();
        w.switches.push_back(ia < ib ? Switch{e.a, e.b} : Switch{e.b, e.a});
    }
    return w;
}

}  // namespace convexpos
