#pragma once

// The convexpos command-line tool. Exit status 0 on success, 1 when a
// verification fails or an operation cannot complete, 2 on malformed input
// or usage errors. Diagnostics go to the error stream as one JSON object.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "convexpos/chirotope.hpp"
#include "convexpos/es_search.hpp"
#include "convexpos/generate.hpp"
#include "convexpos/io.hpp"
#include "convexpos/realize.hpp"
#include "convexpos/reduction.hpp"
#include "convexpos/svg.hpp"
#include "convexpos/verification.hpp"

namespace convexpos::cli {

struct Limits {
    std::size_t brute_force = kBruteForceLimit;  // curves in exhaustive searches
    std::uint64_t transversals = static_cast<std::uint64_t>(kTransversalCap);
    std::size_t grid = std::size_t{1} << 16;  // largest realization grid
    std::size_t instances = 100000;           // per verify run
};

/// "brute=20,transversals=5000,grid=4096,instances=10"; unknown keys are
/// malformed input.
inline Limits parse_limits(const std::string& spec) {
    Limits out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) fail(ErrorKind::MalformedInput, "limit \"" + item + "\" is not key=value");
        const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
        std::uint64_t v = 0;
        try {
            std::size_t used = 0;
            v = std::stoull(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
            fail(ErrorKind::MalformedInput, "limit \"" + key + "\" needs a non-negative integer");
        }
        if (key == "brute") out.brute_force = v;
        else if (key == "transversals") out.transversals = v;
        else if (key == "grid") out.grid = v;
        else if (key == "instances") out.instances = v;
        else fail(ErrorKind::MalformedInput, "unknown limit \"" + key + "\"");
    }
    return out;
}

struct RunConfig {
    std::uint64_t seed = 0;
    double tolerance = kEpsilon;
    std::size_t grid = 0;
    Limits limits;
};

struct Options {
    std::string in, out, log, against, kind, suite = "all";
    std::optional<std::size_t> n;
    std::size_t size = 1, instances = 20;
    RunConfig config;
};

class Runner {
public:
    Runner(Options opt, std::ostream& out, std::ostream& err) : opt_(std::move(opt)), out_(out), err_(err) {}

    int gen() {
        const std::string kind = opt_.kind;
        auto rng = make_rng(opt_.config.seed);
        io::Json doc;
        std::string what;
        if (kind == "points") {
            const std::size_t n = opt_.n.value_or(6);
            doc = io::to_json(random_point_arrangement(n, rng), io::LabelTable::standard(n));
            what = std::to_string(n) + " point bodies";
        } else if (kind == "polygons") {
            PolygonOptions p;
            p.bodies = opt_.n.value_or(6);
            doc = io::to_json(random_polygon_arrangement(p, rng), io::LabelTable::standard(p.bodies));
            what = std::to_string(p.bodies) + " polygons";
        } else if (kind == "diagram") {
            const std::size_t n = opt_.n.value_or(5);
            doc = io::to_json(random_wiring_diagram(n, rng), io::LabelTable::standard(n));
            what = "a " + std::to_string(n) + "-wire diagram";
        } else if (kind == "lower-bound") {
            const std::size_t n = opt_.n.value_or(5);
            const auto arr = lower_bound_construction(n);
            doc = io::to_json(arr, io::LabelTable::standard(arr.size()));
            what = std::to_string(arr.size()) + " points without " + std::to_string(n) + " in convex position";
        } else {
            fail(ErrorKind::MalformedInput, "gen --kind must be points, polygons, diagram or lower-bound");
        }
        emit(io::dump(doc));
        summary("generated " + what + " (seed " + std::to_string(opt_.config.seed) + ")");
        return 0;
    }

    int dualize_cmd() {
        const auto a = load_arrangement();
        const auto s = dualize(a.value.bodies, grid_or(kDefaultGrid));
        emit(io::dump(io::to_json(s, a.labels)));
        summary("dualized " + std::to_string(a.value.bodies.size()) + " bodies into " +
                std::to_string(s.event_count()) + " events");
        return 0;
    }

    int reduce() {
        const auto s = load_system();
        const auto red = reduce_to_orientable(s.value);
        emit(io::dump(io::to_json(red.system, s.labels)));
        std::string log_path = opt_.log;
        if (log_path.empty() && !opt_.out.empty()) {
            const auto dot = opt_.out.rfind(".json");
            log_path = (dot == std::string::npos ? opt_.out : opt_.out.substr(0, dot)) + ".flips.json";
        }
        if (!log_path.empty()) write_file(log_path, io::dump(io::to_json(red.log, s.labels)));
        summary("reduced " + std::to_string(red.initial_non_orientable) + " non-orientable triples with " +
                std::to_string(red.log.size()) + " flips");
        return 0;
    }

    int chirotope() {
        const auto s = load_system();
        const auto chi = chirotope_from_system(s.value);
        const auto rep = verify_cc_axioms(chi);
        emit(io::dump(io::to_json(chi, s.labels)));
        summary("chirotope on " + std::to_string(chi.size()) + " labels; axioms " +
                (rep.passed ? "pass" : "fail (" + rep.axiom + ")"));
        return 0;
    }

    int search() {
        const auto doc = input();
        if (opt_.kind == "clustering") {
            if (!opt_.n) fail(ErrorKind::MalformedInput, "search --kind clustering needs --n");
            const auto s = as_system(doc);
            const auto c = find_clustering(s.value, *opt_.n, opt_.size, opt_.config.limits.brute_force);
            if (!c) {
                emit(io::dump(io::Json{{"clusters", io::Json::array()}}));
                summary("no clustering found");
                return 0;
            }
            emit(io::dump(io::to_json(*c, s.labels)));
            summary("found " + std::to_string(c->clusters.size()) + " clusters of size " + std::to_string(opt_.size));
            return 0;
        }
        if (!opt_.kind.empty() && opt_.kind != "independent")
            fail(ErrorKind::MalformedInput, "search --kind must be independent or clustering");
        if (io::detect_kind(doc) == io::FileKind::Diagram) {
            if (!opt_.n) fail(ErrorKind::MalformedInput, "search on a diagram needs --n");
            const auto w = io::diagram_from_json(doc);
            const auto c = es_pipeline(w.value, *opt_.n, opt_.config.limits.brute_force);
            emit(io::dump(io::to_json(c, w.labels)));
            summary(to_string(c.kind) + " certificate with " + std::to_string(c.labels.size()) + " labels");
            return 0;
        }
        const auto s = as_system(doc);
        SearchCertificate c;
        c.labels = brute_force_max_independent(s.value, opt_.config.limits.brute_force);
        c.trace.push_back("brute force over " + std::to_string(s.value.labels().size()) + " curves");
        emit(io::dump(io::to_json(c, s.labels)));
        summary("independent set with " + std::to_string(c.labels.size()) + " labels");
        return 0;
    }

    int verify() {
        if (!opt_.in.empty()) return verify_file();
        if (opt_.instances > opt_.config.limits.instances)
            fail(ErrorKind::SizeLimit, std::to_string(opt_.instances) + " instances exceed the limit");
        std::vector<SuiteReport> reports;
        const auto& suite = opt_.suite;
        const std::uint64_t seed = opt_.config.seed;
        bool known = false;
        if (suite == "weakmap" || suite == "all") reports.push_back(weak_map_suite(opt_.instances, seed)), known = true;
        if (suite == "oracle" || suite == "all")
            reports.push_back(oracle_suite(opt_.instances, seed, 5, opt_.config.tolerance)), known = true;
        if (suite == "axioms" || suite == "all") reports.push_back(axioms_suite(opt_.instances, seed)), known = true;
        if (suite == "bound" || suite == "all") reports.push_back(bound_suite(opt_.instances, seed)), known = true;
        if (!known) fail(ErrorKind::MalformedInput, "unknown suite \"" + suite + "\"");
        io::Json doc = io::Json::array();
        bool passed = true;
        for (const auto& r : reports) {
            doc.push_back({{"suite", r.name}, {"instances", r.instances}, {"passed", r.passed()}, {"failures", r.failures}});
            passed = passed && r.passed();
            summary(r.name + ": " + (r.passed() ? "PASS" : "FAIL") + " (" + std::to_string(r.instances) + " instances, " +
                    std::to_string(r.failures.size()) + " failures)");
            for (const auto& f : r.failures) summary("  " + f);
        }
        emit(io::dump(io::Json{{"seed", seed}, {"suites", doc}}));
        return passed ? 0 : 1;
    }

    int realize() {
        const auto doc = input();
        const std::size_t max_grid = opt_.config.limits.grid;
        RealizedArrangement r;
        io::LabelTable labels;
        if (io::detect_kind(doc) == io::FileKind::Diagram) {
            const auto w = io::diagram_from_json(doc);
            r = realize_with_escalation(w.value, opt_.config.grid, max_grid);
            labels = w.labels;
        } else {
            const auto s = as_system(doc);
            r = realize_with_escalation(s.value, opt_.config.grid, max_grid);
            labels = s.labels;
        }
        double margin = std::numeric_limits<double>::infinity();
        for (const auto& h : r.heights) margin = std::min(margin, blaschke_margin(h));
        emit(io::dump(io::to_json(r, labels)));
        std::ostringstream m;
        m << margin;
        summary("realized " + std::to_string(r.bodies.size()) + " bodies at grid " + std::to_string(r.grid) +
                "; smallest curvature margin " + m.str());
        return 0;
    }

    int render() {
        const auto doc = input();
        std::map<Label, std::string> names;
        std::string svg;
        std::size_t wires = 0, crossings = 0;
        if (io::detect_kind(doc) == io::FileKind::Diagram) {
            const auto w = io::diagram_from_json(doc);
            for (Label l : w.value.base) names[l] = w.labels.name(l);
            svg = svg::render(w.value, names);
            wires = w.value.base.size(), crossings = w.value.switches.size();
        } else {
            const auto s = as_system(doc);
            for (Label l : s.value.base()) names[l] = s.labels.name(l);
            svg = svg::render(s.value, names);
            wires = s.value.base().size(), crossings = s.value.event_count();
        }
        emit(svg);
        summary("rendered " + std::to_string(wires) + " wires, " + std::to_string(crossings) + " crossings");
        return 0;
    }

private:
    int verify_file() {
        const auto doc = input();
        const auto kind = io::detect_kind(doc);
        bool passed = false;
        std::string what;
        if (kind == io::FileKind::Chirotope) {
            const auto chi = io::chirotope_from_json(doc);
            const auto rep = verify_cc_axioms(chi.value);
            passed = rep.passed;
            what = passed ? "chirotope satisfies the axioms" : "axiom " + rep.axiom + " fails";
        } else if (kind == io::FileKind::Certificate || kind == io::FileKind::Clustering) {
            if (opt_.against.empty()) fail(ErrorKind::MalformedInput, "verify needs --against for " + io::to_string(kind));
            const auto base = io::read_file(opt_.against);
            if (kind == io::FileKind::Certificate) {
                if (io::detect_kind(base) == io::FileKind::Diagram) {
                    const auto w = io::diagram_from_json(base);
                    passed = validate_certificate(w.value, io::certificate_from_json(doc, w.labels));
                } else {
                    const auto s = as_system(base);
                    passed = validate_certificate(s.value, io::certificate_from_json(doc, s.labels));
                }
                what = passed ? "certificate is valid" : "certificate does not validate";
            } else {
                const auto s = as_system(base);
                const auto rep =
                    verify_clustering(s.value, io::clustering_from_json(doc, s.labels), opt_.config.limits.transversals);
                passed = rep.passed;
                what = passed ? "clustering of size " + std::to_string(rep.size) + " passes (" +
                                    std::to_string(rep.checked) + " transversals)"
                              : "transversal " + to_names(s.labels, rep.witness) + " is not independent";
            }
        } else {
            fail(ErrorKind::MalformedInput, "verify --in takes a chirotope, certificate or clustering");
        }
        emit(io::dump(io::Json{{"passed", passed}, {"detail", what}}));
        summary(std::string(passed ? "PASS: " : "FAIL: ") + what);
        return passed ? 0 : 1;
    }

    static std::string to_names(const io::LabelTable& t, const std::vector<Label>& v) {
        std::string out;
        for (Label l : v) out += (out.empty() ? "" : ",") + t.name(l);
        return "(" + out + ")";
    }

    std::size_t grid_or(std::size_t fallback) const { return opt_.config.grid ? opt_.config.grid : fallback; }

    io::Json input() const {
        if (opt_.in.empty()) fail(ErrorKind::MalformedInput, "--in is required");
        return io::read_file(opt_.in);
    }

    io::Labeled<io::ArrangementFile> load_arrangement() const {
        const auto doc = input();
        if (io::detect_kind(doc) != io::FileKind::Arrangement) fail(ErrorKind::MalformedInput, "expected an arrangement file");
        return io::arrangement_from_json(doc);
    }

    // Systems come from system files, diagrams (double cover) or arrangements.
    io::Labeled<CurveSystem> as_system(const io::Json& doc) const {
        switch (io::detect_kind(doc)) {
            case io::FileKind::System: return io::system_from_json(doc);
            case io::FileKind::Diagram: {
                const auto w = io::diagram_from_json(doc);
                return {double_cover(w.value), w.labels};
            }
            case io::FileKind::Arrangement: {
                const auto a = io::arrangement_from_json(doc);
                return {dualize(a.value.bodies, grid_or(kDefaultGrid)), a.labels};
            }
            default: fail(ErrorKind::MalformedInput, "expected a system, diagram or arrangement file");
        }
    }

    io::Labeled<CurveSystem> load_system() const { return as_system(input()); }

    static void write_file(const std::string& path, const std::string& text) {
        std::ofstream f(path, std::ios::binary);
        if (!f) fail(ErrorKind::InvalidArgument, "cannot write " + path);
        f << text;
    }

    void emit(const std::string& text) {
        if (opt_.out.empty())
            out_ << text;
        else
            write_file(opt_.out, text);
    }

    // With no --out the result owns standard output.
    void summary(const std::string& line) { (opt_.out.empty() ? err_ : out_) << line << "\n"; }

    Options opt_;
    std::ostream& out_;
    std::ostream& err_;
};

inline void diagnose(std::ostream& err, const std::string& kind, const std::string& message) {
    err << io::Json{{"error", kind}, {"message", message}}.dump() << "\n";
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Convex position in arrangements of convex bodies"};
    app.require_subcommand(1);
    Options opt;
    std::string limits;

    auto common = [&](CLI::App* c) {
        c->add_option("--in", opt.in, "input file");
        c->add_option("--out", opt.out, "output file (standard output if omitted)");
        c->add_option("--seed", opt.config.seed, "random seed");
        c->add_option("--n", opt.n, "size parameter");
        c->add_option("--grid", opt.config.grid, "sample grid (0 picks the default)");
        c->add_option("--tolerance", opt.config.tolerance, "numeric tolerance");
    };
    auto* gen = app.add_subcommand("gen", "generate an input file");
    common(gen);
    gen->add_option("--kind", opt.kind, "points, polygons, diagram or lower-bound")->required();
    auto* dualize = app.add_subcommand("dualize", "arrangement to curve system");
    common(dualize);
    auto* reduce = app.add_subcommand("reduce", "flip a system to an orientable one");
    common(reduce);
    reduce->add_option("--log", opt.log, "flip log file");
    auto* chirotope = app.add_subcommand("chirotope", "chirotope of a system, diagram or arrangement");
    common(chirotope);
    auto* search = app.add_subcommand("search", "independent-set or clustering search");
    common(search);
    search->add_option("--kind", opt.kind, "independent (default) or clustering");
    search->add_option("--size", opt.size, "cluster size");
    auto* verify = app.add_subcommand("verify", "property suites, or a file against its input");
    common(verify);
    verify->add_option("--suite", opt.suite, "weakmap, oracle, axioms, bound or all");
    verify->add_option("--instances", opt.instances, "instances per suite");
    verify->add_option("--against", opt.against, "diagram, system or arrangement a certificate refers to");
    auto* realize = app.add_subcommand("realize", "convex polygons for a diagram or system");
    common(realize);
    auto* render = app.add_subcommand("render", "SVG schematic of a diagram or system");
    common(render);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        diagnose(err, "Usage", e.what());
        return 2;
    }

    try {
        if (const char* env = std::getenv("CONVEXPOS_LIMITS")) opt.config.limits = parse_limits(env);
        Runner r(opt, out, err);
        if (*gen) return r.gen();
        if (*dualize) return r.dualize_cmd();
        if (*reduce) return r.reduce();
        if (*chirotope) return r.chirotope();
        if (*search) return r.search();
        if (*verify) return r.verify();
        if (*realize) return r.realize();
        if (*render) return r.render();
    } catch (const Error& e) {
        diagnose(err, std::string(to_string(e.kind())), e.what());
        return e.kind() == ErrorKind::MalformedInput ? 2 : 1;
    }
    return 2;
}

}  // namespace convexpos::cli
