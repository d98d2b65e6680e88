#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>

#include "convexpos/generate.hpp"
#include "convexpos/io.hpp"
#include "convexpos/svg.hpp"
#include "support.hpp"

using namespace convexpos;
using namespace fixtures;
using io::Json;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InternalInvariant;
}

std::size_t occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++count;
    return count;
}

Json reparse(const Json& j) { return io::parse(io::dump(j)); }

}  // namespace

TEST(Labels, NaturalOrder) {
    EXPECT_TRUE(io::natural_less("a", "b"));
    EXPECT_TRUE(io::natural_less("w2", "w10"));
    EXPECT_FALSE(io::natural_less("w10", "w2"));
    EXPECT_TRUE(io::natural_less("x", "x1"));
    EXPECT_TRUE(io::natural_less("p007", "p8"));
    EXPECT_FALSE(io::natural_less("b", "b"));
    std::vector<std::string> v{"w10", "w1", "w2", "a"};
    std::sort(v.begin(), v.end(), io::natural_less);
    EXPECT_EQ(v, (std::vector<std::string>{"a", "w1", "w2", "w10"}));
}

TEST(Labels, Table) {
    const io::LabelTable t({"c", "a", "b", "a"});
    EXPECT_EQ(t.size(), 3u);
    EXPECT_EQ(t.id("a"), 0);
    EXPECT_EQ(t.id("c"), 2);
    EXPECT_EQ(t.name(1), "b");
    EXPECT_EQ(kind_of([&] { t.id("z"); }), ErrorKind::MalformedInput);
    EXPECT_EQ(kind_of([&] { t.name(3); }), ErrorKind::UnknownLabel);
    EXPECT_EQ(io::LabelTable::standard(3), io::LabelTable({"a", "b", "c"}));
    EXPECT_EQ(io::LabelTable::standard(30).name(29), "p29");
    EXPECT_EQ(io::LabelTable::standard(30).id("p10"), 10);
}

TEST(Formats, DetectKind) {
    EXPECT_EQ(io::detect_kind(Json{{"base", Json::array()}, {"switches", Json::array()}}), io::FileKind::Diagram);
    EXPECT_EQ(io::detect_kind(Json{{"base", Json::array()}, {"events", Json::array()}}), io::FileKind::System);
    EXPECT_EQ(io::detect_kind(Json{{"n", 3}, {"triples", Json::array()}}), io::FileKind::Chirotope);
    EXPECT_EQ(io::detect_kind(Json{{"bodies", Json::array()}}), io::FileKind::Arrangement);
    EXPECT_EQ(io::detect_kind(Json{{"kind", "cup"}, {"labels", Json::array()}}), io::FileKind::Certificate);
    EXPECT_EQ(io::detect_kind(Json{{"clusters", Json::array()}}), io::FileKind::Clustering);
    EXPECT_EQ(io::detect_kind(Json{{"flips", Json::array()}}), io::FileKind::FlipLog);
    EXPECT_EQ(kind_of([] { io::detect_kind(Json{{"other", 1}}); }), ErrorKind::MalformedInput);
    EXPECT_EQ(kind_of([] { io::detect_kind(Json::array()); }), ErrorKind::MalformedInput);
    EXPECT_EQ(kind_of([] { io::parse("{\"base\": ["); }), ErrorKind::MalformedInput);
}

TEST(Formats, DiagramFile) {
    const auto parsed = io::diagram_from_json(io::parse(R"({"base": ["b","a","d","c"],
        "switches": [["d","c"],["a","c"],["b","c"],["a","d"],["b","d"],["b","a"]]})"));
    EXPECT_EQ(parsed.value.base, four_wire().base);
    EXPECT_EQ(parsed.value.switches, four_wire().switches);
    EXPECT_EQ(io::to_json(parsed.value, parsed.labels)["switches"][0], (Json{"d", "c"}));
}

TEST(Formats, DiagramRoundTrip) {
    auto rng = make_rng(81);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 3 + trial % 30;
        const auto w = random_wiring_diagram(n, rng);
        const auto t = io::LabelTable::standard(n);
        const auto back = io::diagram_from_json(reparse(io::to_json(w, t)));
        EXPECT_EQ(back.value.base, w.base);
        EXPECT_EQ(back.value.switches, w.switches);
        EXPECT_EQ(back.labels, t);
    }
}

TEST(Formats, DiagramErrors) {
    // a and c are not adjacent at the first switch.
    EXPECT_EQ(kind_of([] { io::diagram_from_json(io::parse(R"({"base":["a","b","c"],"switches":[["a","c"]]})")); }),
              ErrorKind::MalformedInput);
    EXPECT_EQ(kind_of([] { io::diagram_from_json(io::parse(R"({"base":["a","b","a"],"switches":[]})")); }),
              ErrorKind::MalformedInput);
    EXPECT_EQ(kind_of([] { io::diagram_from_json(io::parse(R"({"base":["a","b"],"switches":[["a","x"]]})")); }),
              ErrorKind::MalformedInput);
    EXPECT_EQ(kind_of([] { io::diagram_from_json(io::parse(R"({"base":["a",2],"switches":[]})")); }),
              ErrorKind::MalformedInput);
    EXPECT_EQ(kind_of([] { io::diagram_from_json(io::parse(R"({"base":["a","b"],"switches":[["a"]]})")); }),
              ErrorKind::MalformedInput);
    EXPECT_EQ(kind_of([] { io::diagram_from_json(io::parse(R"({"switches":[]})")); }), ErrorKind::MalformedInput);
}

TEST(Formats, SystemFile) {
    const auto s = io::system_from_json(io::parse(R"({"base": ["c","a","b"],
        "events": [["a","b"],["a","b"],["a","c"],["b","c"],["b","c"],["a","c"]]})"));
    EXPECT_EQ(s.value.base(), nx3().base());
    EXPECT_EQ(s.value.events(), nx3().events());
    EXPECT_EQ(kind_of([] { io::system_from_json(io::parse(R"({"base":["a","b","c"],"events":[["a","b"]]})")); }),
              ErrorKind::MalformedInput);
}

TEST(Formats, SystemRoundTrip) {
    auto rng = make_rng(82);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 3 + trial % 9;
        const auto s = random_admissible_system(n, 20, rng);
        const auto t = io::LabelTable::standard(n);
        const auto back = io::system_from_json(reparse(io::to_json(s, t)));
        EXPECT_EQ(back.value.base(), s.base());
        EXPECT_EQ(back.value.events(), s.events());
    }
}

TEST(Formats, ChirotopeRoundTrip) {
    auto rng = make_rng(83);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 3 + trial % 7;
        const auto chi = chirotope_from_system(double_cover(random_wiring_diagram(n, rng)));
        const auto t = io::LabelTable::standard(n);
        const Json j = io::to_json(chi, t);
        EXPECT_EQ(j["n"], n);
        EXPECT_EQ(j["triples"].size(), n * (n - 1) * (n - 2) / 6);
        const auto back = io::chirotope_from_json(reparse(j));
        EXPECT_EQ(back.value, chi);
    }
}

TEST(Formats, ChirotopeErrors) {
    const auto bad = [](const char* text) { return kind_of([&] { io::chirotope_from_json(io::parse(text)); }); };
    EXPECT_EQ(bad(R"({"n":4,"triples":[{"t":["a","b","c"],"cyclic":["a","b","c"]}]})"), ErrorKind::MalformedInput);
    EXPECT_EQ(bad(R"({"n":3,"triples":[{"t":["a","b","c"],"cyclic":["a","b","d"]}]})"), ErrorKind::MalformedInput);
    EXPECT_EQ(bad(R"({"n":3,"triples":[{"t":["a","b","c"],"cyclic":["a","b","c"]},
                                        {"t":["a","c","b"],"cyclic":["a","b","c"]}]})"),
              ErrorKind::MalformedInput);
    EXPECT_EQ(bad(R"({"n":-1,"triples":[]})"), ErrorKind::MalformedInput);
}

TEST(Formats, ArrangementRoundTrip) {
    auto rng = make_rng(84);
    PolygonOptions opt;
    opt.bodies = 5;
    const auto arr = random_polygon_arrangement(opt, rng);
    const auto t = io::LabelTable::standard(arr.size());
    const auto back = io::arrangement_from_json(reparse(io::to_json(arr, t)));
    ASSERT_EQ(back.value.bodies.size(), arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        EXPECT_EQ(back.value.bodies[i].label, arr[i].label);
        EXPECT_EQ(back.value.bodies[i].body, arr[i].body);  // doubles print exactly
    }
    EXPECT_FALSE(back.value.grid.has_value());
    EXPECT_EQ(dualize(back.value.bodies).events(), dualize(arr).events());
}

TEST(Formats, RealizedArrangementKeepsGridAndLift) {
    const auto r = realize_with_escalation(four_wire());
    const auto back = io::arrangement_from_json(reparse(io::to_json(r, io::LabelTable::standard(4))));
    EXPECT_EQ(back.value.grid, r.grid);
    EXPECT_EQ(back.value.lift, r.lift);
}

TEST(Formats, ArrangementErrors) {
    const auto bad = [](const char* text) { return kind_of([&] { io::arrangement_from_json(io::parse(text)); }); };
    EXPECT_EQ(bad(R"({"bodies":[{"label":"a","vertices":[[0,0],[1,1]]}]})"), ErrorKind::MalformedInput);
    EXPECT_EQ(bad(R"({"bodies":[{"label":"a","vertices":[[0,0]]},{"label":"a","vertices":[[1,0]]}]})"),
              ErrorKind::MalformedInput);
    EXPECT_EQ(bad(R"({"bodies":[{"label":"a","vertices":[[0]]}]})"), ErrorKind::MalformedInput);
    EXPECT_EQ(bad(R"({"bodies":[{"label":"a","vertices":[["x",0]]}]})"), ErrorKind::MalformedInput);
    EXPECT_EQ(bad(R"({"bodies":[{"vertices":[[0,0]]}]})"), ErrorKind::MalformedInput);
}

TEST(Formats, CertificateAndClustering) {
    const auto t = io::LabelTable::standard(6);
    const SearchCertificate c{CertificateKind::Cup, {0, 2, 4}, {"step one"}};
    const Json j = io::to_json(c, t);
    EXPECT_EQ(j["kind"], "cup");
    EXPECT_EQ(j["labels"], (Json{"a", "c", "e"}));
    EXPECT_EQ(io::certificate_from_json(reparse(j), t), c);
    EXPECT_EQ(kind_of([&] { io::certificate_from_json(Json{{"kind", "polygon"}, {"labels", Json::array()}}, t); }),
              ErrorKind::MalformedInput);

    const ConvexClustering cl{{{0, 1}, {2, 3}, {4, 5}}};
    const Json k = io::to_json(cl, t);
    EXPECT_EQ(k["clusters"][1], (Json{"c", "d"}));
    EXPECT_EQ(io::clustering_from_json(reparse(k), t), cl);
}

TEST(Formats, FlipLogIsOneBased) {
    const auto red = reduce_to_orientable(nx3());
    ASSERT_EQ(red.log.size(), 1u);
    const auto t = io::LabelTable::standard(3);
    const Json j = io::to_json(red.log, t);
    EXPECT_EQ(j["flips"][0]["top"], "b");
    EXPECT_EQ(j["flips"][0]["vertex_indices_before"][0], red.log[0].vertices_before[0] + 1);
    const auto back = io::flip_log_from_json(reparse(j), t);
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0].triple, red.log[0].triple);
    EXPECT_EQ(back[0].vertices_before, red.log[0].vertices_before);
    EXPECT_EQ(back[0].positions_after, red.log[0].positions_after);
    auto zero = j;
    zero["flips"][0]["position_after"][0] = 0;
    EXPECT_EQ(kind_of([&] { io::flip_log_from_json(zero, t); }), ErrorKind::MalformedInput);
}

TEST(Svg, CrossingsMatchEvents) {
    std::map<Label, std::string> names{{0, "a"}, {1, "b"}, {2, "c"}, {3, "d"}};
    const std::string w = svg::render(four_wire(), names);
    EXPECT_EQ(occurrences(w, "class=\"crossing\""), 6u);
    EXPECT_EQ(occurrences(w, "class=\"wire\""), 4u);
    EXPECT_EQ(occurrences(w, "class=\"seam\""), 0u);
    const std::string s = svg::render(nx3(), names);
    EXPECT_EQ(occurrences(s, "class=\"crossing\""), 6u);
    EXPECT_EQ(occurrences(s, "class=\"seam\""), 2u);
    auto rng = make_rng(85);
    for (int trial = 0; trial < 10; ++trial) {
        const auto d = double_cover(random_wiring_diagram(3 + trial, rng));
        EXPECT_EQ(occurrences(svg::render(d, {}), "class=\"crossing\""), d.event_count());
    }
}

TEST(Svg, CrossingsUseUnitSlopes) {
    // Polyline vertices advance one column at a time and change level by at
    // most one level per column.
    const std::string w = svg::render(four_wire(), {});
    const svg::Style style;
    std::size_t pos = 0;
    int lines = 0;
    while ((pos = w.find("points=\"", pos)) != std::string::npos) {
        pos += 8;
        const std::string pts = w.substr(pos, w.find('"', pos) - pos);
        std::stringstream ss(pts);
        std::string pair;
        double px = 0, py = 0;
        bool first = true;
        while (ss >> pair) {
            const double x = std::stod(pair.substr(0, pair.find(','))), y = std::stod(pair.substr(pair.find(',') + 1));
            if (!first) {
                EXPECT_DOUBLE_EQ(x - px, style.unit);
                EXPECT_TRUE(y == py || std::abs(std::abs(y - py) - style.unit) < 1e-9);
            }
            px = x, py = y, first = false;
        }
        ++lines;
    }
    EXPECT_EQ(lines, 4);
}

TEST(Svg, EscapesNames) { EXPECT_EQ(svg::escape("a<&>\""), "a&lt;&amp;&gt;&quot;"); }
