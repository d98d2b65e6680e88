#pragma once

// JSON file formats. Labels are strings in files and small integers in
// memory; a LabelTable maps between them, assigning integers in natural sort
// order so that "a" < "b" and "w2" < "w10".

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "convexpos/chirotope.hpp"
#include "convexpos/curve_system.hpp"
#include "convexpos/error.hpp"
#include "convexpos/es_search.hpp"
#include "convexpos/geometry.hpp"
#include "convexpos/realize.hpp"
#include "convexpos/reduction.hpp"
#include "convexpos/wiring_diagram.hpp"

namespace convexpos::io {

using Json = nlohmann::ordered_json;

/// Compares runs of digits by value and everything else by character.
inline bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const bool da = std::isdigit(static_cast<unsigned char>(a[i])), db = std::isdigit(static_cast<unsigned char>(b[j]));
        if (da && db) {
            std::size_t ei = i, ej = j;
            while (ei < a.size() && std::isdigit(static_cast<unsigned char>(a[ei]))) ++ei;
            while (ej < b.size() && std::isdigit(static_cast<unsigned char>(b[ej]))) ++ej;
            std::string x = a.substr(i, ei - i), y = b.substr(j, ej - j);
            x.erase(0, std::min(x.find_first_not_of('0'), x.size()));
            y.erase(0, std::min(y.find_first_not_of('0'), y.size()));
            if (x.size() != y.size()) return x.size() < y.size();
            if (x != y) return x < y;
            i = ei, j = ej;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i, ++j;
        }
    }
    if (a.size() - i != b.size() - j) return a.size() - i < b.size() - j;
    return a < b;
}

class LabelTable {
public:
    LabelTable() = default;

    /// Distinct names, numbered in natural order.
    explicit LabelTable(std::vector<std::string> names) {
        std::sort(names.begin(), names.end(), natural_less);
        names.erase(std::unique(names.begin(), names.end()), names.end());
        for (const auto& n : names) {
            if (n.empty()) fail(ErrorKind::MalformedInput, "empty label");
            ids_.emplace(n, static_cast<Label>(names_.size()));
            names_.push_back(n);
        }
    }

    /// a..z for up to 26 labels, p0, p1, ... beyond.
    static LabelTable standard(std::size_t n) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i)
            names.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + i)) : "p" + std::to_string(i));
        return LabelTable(names);
    }

    std::size_t size() const { return names_.size(); }

    Label id(const std::string& name) const {
        auto it = ids_.find(name);
        if (it == ids_.end()) fail(ErrorKind::MalformedInput, "unknown label \"" + name + "\"");
        return it->second;
    }

    const std::string& name(Label l) const {
        if (l < 0 || static_cast<std::size_t>(l) >= names_.size())
            fail(ErrorKind::UnknownLabel, "no name for label " + std::to_string(l));
        return names_[static_cast<std::size_t>(l)];
    }

    Json names(const std::vector<Label>& labels) const {
        Json out = Json::array();
        for (Label l : labels) out.push_back(name(l));
        return out;
    }

    friend bool operator==(const LabelTable&, const LabelTable&) = default;

private:
    std::vector<std::string> names_;
    std::map<std::string, Label> ids_;
};

enum class FileKind { Diagram, System, Chirotope, Arrangement, Certificate, Clustering, FlipLog };

inline std::string to_string(FileKind k) {
    switch (k) {
        case FileKind::Diagram: return "diagram";
        case FileKind::System: return "system";
        case FileKind::Chirotope: return "chirotope";
        case FileKind::Arrangement: return "arrangement";
        case FileKind::Certificate: return "certificate";
        case FileKind::Clustering: return "clustering";
        case FileKind::FlipLog: return "flip log";
    }
    return "unknown";
}

inline FileKind detect_kind(const Json& j) {
    if (!j.is_object()) fail(ErrorKind::MalformedInput, "top level is not an object");
    if (j.contains("switches")) return FileKind::Diagram;
    if (j.contains("events")) return FileKind::System;
    if (j.contains("triples")) return FileKind::Chirotope;
    if (j.contains("bodies")) return FileKind::Arrangement;
    if (j.contains("kind") && j.contains("labels")) return FileKind::Certificate;
    if (j.contains("clusters")) return FileKind::Clustering;
    if (j.contains("flips")) return FileKind::FlipLog;
    fail(ErrorKind::MalformedInput, "unrecognised file: no known top-level key");
}

inline Json parse(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        fail(ErrorKind::MalformedInput, std::string("invalid JSON: ") + e.what());
    }
}

inline Json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::MalformedInput, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

namespace detail {

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail(ErrorKind::MalformedInput, std::string("missing \"") + key + "\"");
    return j.at(key);
}

inline const Json& array_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_array()) fail(ErrorKind::MalformedInput, std::string("\"") + key + "\" is not an array");
    return v;
}

inline std::string label_name(const Json& v) {
    if (!v.is_string()) fail(ErrorKind::MalformedInput, "label is not a string: " + v.dump());
    return v.get<std::string>();
}

inline std::vector<std::string> names(const Json& arr) {
    if (!arr.is_array()) fail(ErrorKind::MalformedInput, "expected a label list, got " + arr.dump());
    std::vector<std::string> out;
    for (const auto& v : arr) out.push_back(label_name(v));
    return out;
}

inline std::vector<Label> ids(const LabelTable& t, const Json& arr) {
    std::vector<Label> out;
    for (const auto& n : names(arr)) out.push_back(t.id(n));
    return out;
}

inline std::pair<std::string, std::string> name_pair(const Json& v) {
    const auto n = names(v);
    if (n.size() != 2) fail(ErrorKind::MalformedInput, "expected a label pair, got " + v.dump());
    return {n[0], n[1]};
}

inline double number(const Json& v) {
    if (!v.is_number()) fail(ErrorKind::MalformedInput, "expected a number, got " + v.dump());
    return v.get<double>();
}

inline std::size_t count(const Json& v) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        fail(ErrorKind::MalformedInput, "expected a non-negative integer, got " + v.dump());
    return v.get<std::size_t>();
}

// Library validation errors on input become MalformedInput.
template <class F>
auto checked(F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::MalformedInput) throw;
        fail(ErrorKind::MalformedInput, e.what());
    }
}

}  // namespace detail

template <class T>
struct Labeled {
    T value;
    LabelTable labels;
};

// Wiring diagrams.

inline Json to_json(const WiringDiagram& w, const LabelTable& t) {
    Json sw = Json::array();
    for (const auto& s : w.switches) sw.push_back({t.name(s.below), t.name(s.above)});
    return Json{{"base", t.names(w.base)}, {"switches", sw}};
}

inline Labeled<WiringDiagram> diagram_from_json(const Json& j) {
    LabelTable t(detail::names(detail::array_field(j, "base")));
    WiringDiagram w;
    w.base = detail::ids(t, j.at("base"));
    if (t.size() != w.base.size()) fail(ErrorKind::MalformedInput, "repeated label in base");
    for (const auto& s : detail::array_field(j, "switches")) {
        const auto [x, y] = detail::name_pair(s);
        w.switches.push_back({t.id(x), t.id(y)});
    }
    detail::checked([&] {
        require_valid(w);
        return 0;
    });
    return {w, t};
}

// Curve systems; events are listed from index 1, the first after the base.

inline Json to_json(const CurveSystem& s, const LabelTable& t) {
    Json ev = Json::array();
    for (const auto& e : s.events()) ev.push_back({t.name(e.a), t.name(e.b)});
    return Json{{"base", t.names(s.base())}, {"events", ev}};
}

inline Labeled<CurveSystem> system_from_json(const Json& j) {
    LabelTable t(detail::names(detail::array_field(j, "base")));
    const auto base = detail::ids(t, j.at("base"));
    if (t.size() != base.size()) fail(ErrorKind::MalformedInput, "repeated label in base");
    std::vector<Event> events;
    for (const auto& e : detail::array_field(j, "events")) {
        const auto [x, y] = detail::name_pair(e);
        events.emplace_back(t.id(x), t.id(y));
    }
    return {detail::checked([&] { return CurveSystem(base, events); }), t};
}

// Chirotopes: every triple with its positive cyclic order.

inline Json to_json(const Chirotope& chi, const LabelTable& t) {
    Json triples = Json::array();
    for (const auto& tr : all_triples(chi.labels())) {
        const auto c = chi.cycle(tr[0], tr[1], tr[2]);
        triples.push_back({{"t", t.names({tr[0], tr[1], tr[2]})}, {"cyclic", t.names({c[0], c[1], c[2]})}});
    }
    return Json{{"n", chi.size()}, {"triples", triples}};
}

inline Labeled<Chirotope> chirotope_from_json(const Json& j) {
    const std::size_t n = detail::count(detail::field(j, "n"));
    const Json& triples = detail::array_field(j, "triples");
    std::vector<std::string> all;
    for (const auto& tr : triples)
        for (const auto& name : detail::names(detail::field(tr, "t"))) all.push_back(name);
    LabelTable t(all);
    if (t.size() != n) fail(ErrorKind::MalformedInput, "\"n\" does not match the labels used");
    std::vector<Label> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(static_cast<Label>(i));
    Chirotope chi(labels);
    std::set<std::array<Label, 3>> seen;
    for (const auto& tr : triples) {
        auto key = detail::ids(t, tr.at("t"));
        const auto cyc = detail::ids(t, detail::field(tr, "cyclic"));
        if (key.size() != 3 || cyc.size() != 3) fail(ErrorKind::MalformedInput, "triples have three labels");
        std::sort(key.begin(), key.end());
        auto sorted = cyc;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != key) fail(ErrorKind::MalformedInput, "cyclic order is not a permutation of its triple");
        if (std::adjacent_find(key.begin(), key.end()) != key.end()) fail(ErrorKind::MalformedInput, "repeated label in triple");
        if (!seen.insert({key[0], key[1], key[2]}).second) fail(ErrorKind::MalformedInput, "triple listed twice");
        chi.set_cycle({cyc[0], cyc[1], cyc[2]});
    }
    if (seen.size() != all_triples(labels).size()) fail(ErrorKind::MalformedInput, "chirotope is missing triples");
    return {chi, t};
}

// Arrangements, with the realization's grid and lift when present.

inline Json to_json(const Arrangement& arr, const LabelTable& t) {
    Json bodies = Json::array();
    for (const auto& b : arr) {
        Json v = Json::array();
        for (const auto& p : b.body.vertices()) v.push_back({p.x, p.y});
        bodies.push_back({{"label", t.name(b.label)}, {"vertices", v}});
    }
    return Json{{"bodies", bodies}};
}

inline Json to_json(const RealizedArrangement& r, const LabelTable& t) {
    Json j = to_json(r.bodies, t);
    j["grid"] = r.grid;
    j["lift"] = r.lift;
    return j;
}

struct ArrangementFile {
    Arrangement bodies;
    std::optional<std::size_t> grid;
    std::optional<double> lift;
};

inline Labeled<ArrangementFile> arrangement_from_json(const Json& j) {
    const Json& bodies = detail::array_field(j, "bodies");
    std::vector<std::string> all;
    for (const auto& b : bodies) all.push_back(detail::label_name(detail::field(b, "label")));
    LabelTable t(all);
    if (t.size() != all.size()) fail(ErrorKind::MalformedInput, "repeated body label");
    ArrangementFile out;
    for (const auto& b : bodies) {
        std::vector<Point> v;
        for (const auto& p : detail::array_field(b, "vertices")) {
            if (!p.is_array() || p.size() != 2) fail(ErrorKind::MalformedInput, "vertex is not an [x, y] pair");
            v.push_back({detail::number(p[0]), detail::number(p[1])});
        }
        const Label l = t.id(b.at("label").get<std::string>());
        out.bodies.push_back({l, detail::checked([&] { return ConvexBody(v); })});
    }
    if (j.contains("grid")) out.grid = detail::count(j.at("grid"));
    if (j.contains("lift")) out.lift = detail::number(j.at("lift"));
    return {out, t};
}

// Search certificates.

inline Json to_json(const SearchCertificate& c, const LabelTable& t) {
    return Json{{"kind", to_string(c.kind)}, {"labels", t.names(c.labels)}, {"trace", c.trace}};
}

inline SearchCertificate certificate_from_json(const Json& j, const LabelTable& t) {
    const Json& kind = detail::field(j, "kind");
    if (!kind.is_string()) fail(ErrorKind::MalformedInput, "\"kind\" is not a string");
    SearchCertificate c;
    c.kind = certificate_kind_from_string(kind.get<std::string>());
    c.labels = detail::ids(t, detail::array_field(j, "labels"));
    if (j.contains("trace")) {
        for (const auto& line : detail::array_field(j, "trace")) {
            if (!line.is_string()) fail(ErrorKind::MalformedInput, "trace entries are strings");
            c.trace.push_back(line.get<std::string>());
        }
    }
    return c;
}

// Clusterings.

inline Json to_json(const ConvexClustering& c, const LabelTable& t) {
    Json clusters = Json::array();
    for (const auto& cl : c.clusters) clusters.push_back(t.names(cl));
    return Json{{"clusters", clusters}};
}

inline ConvexClustering clustering_from_json(const Json& j, const LabelTable& t) {
    ConvexClustering c;
    for (const auto& cl : detail::array_field(j, "clusters")) c.clusters.push_back(detail::ids(t, cl));
    return c;
}

// Flip logs; event indices are 1-based like the system file.

inline Json to_json(const std::vector<FlipRecord>& log, const LabelTable& t) {
    Json flips = Json::array();
    for (const auto& f : log) {
        Json before = Json::array(), after = Json::array();
        for (auto v : f.vertices_before) before.push_back(v + 1);
        for (auto v : f.positions_after) after.push_back(v + 1);
        flips.push_back({{"triple", t.names({f.triple[0], f.triple[1], f.triple[2]})},
                         {"top", t.name(f.top)},
                         {"vertex_indices_before", before},
                         {"position_after", after}});
    }
    return Json{{"flips", flips}};
}

inline std::vector<FlipRecord> flip_log_from_json(const Json& j, const LabelTable& t) {
    std::vector<FlipRecord> out;
    for (const auto& f : detail::array_field(j, "flips")) {
        FlipRecord r;
        const auto triple = detail::ids(t, detail::field(f, "triple"));
        if (triple.size() != 3) fail(ErrorKind::MalformedInput, "flip triple needs three labels");
        std::copy(triple.begin(), triple.end(), r.triple.begin());
        r.top = t.id(detail::label_name(detail::field(f, "top")));
        const Json& before = detail::array_field(f, "vertex_indices_before");
        const Json& after = detail::array_field(f, "position_after");
        if (before.size() != 3 || after.size() != 3) fail(ErrorKind::MalformedInput, "flips record three indices");
        for (std::size_t i = 0; i < 3; ++i) {
            const std::size_t b = detail::count(before[i]), a = detail::count(after[i]);
            if (b == 0 || a == 0) fail(ErrorKind::MalformedInput, "event indices start at 1");
            r.vertices_before[i] = b - 1;
            r.positions_after[i] = a - 1;
        }
        out.push_back(r);
    }
    return out;
}

}  // namespace convexpos::io
