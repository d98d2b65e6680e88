#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "convexpos/io.hpp"

namespace fs = std::filesystem;
using namespace convexpos;

namespace {

struct Result {
    int status = -1;
    std::string out, err;
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("convexpos_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path path(const std::string& name) const { return dir_ / name; }
    static std::string data(const std::string& name) { return std::string(CONVEXPOS_DATA_DIR) + "/" + name; }

    Result run(const std::string& args, const std::string& env = "") const {
        const auto out = path("stdout.txt"), err = path("stderr.txt");
        const std::string cmd =
            env + " " + CONVEXPOS_CLI_PATH + " " + args + " > " + out.string() + " 2> " + err.string();
        const int raw = std::system(cmd.c_str());
        return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out), slurp(err)};
    }

    io::Json json(const std::string& name) const { return io::read_file(path(name).string()); }

    fs::path dir_;
};

std::size_t count_class(const boost::property_tree::ptree& node, const std::string& cls) {
    std::size_t n = 0;
    for (const auto& [tag, child] : node) {
        if (tag == "<xmlattr>") continue;
        if (child.get<std::string>("<xmlattr>.class", "") == cls) ++n;
        n += count_class(child, cls);
    }
    return n;
}

}  // namespace

TEST_F(Cli, GenPointsIsDeterministicAndGeneric) {
    ASSERT_EQ(run("gen --kind points --n 5 --seed 7 --out " + path("a.json").string()).status, 0);
    ASSERT_EQ(run("gen --kind points --n 5 --seed 7 --out " + path("b.json").string()).status, 0);
    EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
    const auto arr = io::arrangement_from_json(json("a.json"));
    EXPECT_EQ(arr.value.bodies.size(), 5u);
    EXPECT_NO_THROW(check_generic(arr.value.bodies));
    ASSERT_EQ(run("gen --kind points --n 5 --seed 8 --out " + path("c.json").string()).status, 0);
    EXPECT_NE(slurp(path("a.json")), slurp(path("c.json")));
}

TEST_F(Cli, GenDiagramAndPolygons) {
    ASSERT_EQ(run("gen --kind diagram --n 4 --seed 1 --out " + path("d.json").string()).status, 0);
    const auto w = io::diagram_from_json(json("d.json"));
    EXPECT_TRUE(validate_wiring_diagram(w.value).valid);
    EXPECT_EQ(w.value.base.size(), 4u);
    ASSERT_EQ(run("gen --kind polygons --n 5 --seed 2 --out " + path("p.json").string()).status, 0);
    const auto arr = io::arrangement_from_json(json("p.json"));
    EXPECT_EQ(arr.value.bodies.size(), 5u);
    EXPECT_NO_THROW(dualize(arr.value.bodies));
}

TEST_F(Cli, LowerBoundWitness) {
    ASSERT_EQ(run("gen --kind lower-bound --n 5 --out " + path("lb.json").string()).status, 0);
    EXPECT_EQ(io::arrangement_from_json(json("lb.json")).value.bodies.size(), 8u);
    ASSERT_EQ(run("search --in " + path("lb.json").string() + " --out " + path("cert.json").string()).status, 0);
    EXPECT_EQ(json("cert.json")["labels"].size(), 4u);
    EXPECT_EQ(json("cert.json")["kind"], "independent-set");
}

TEST_F(Cli, DualizeChirotopeAndVerify) {
    ASSERT_EQ(run("gen --kind points --n 6 --seed 3 --out " + path("p.json").string()).status, 0);
    ASSERT_EQ(run("dualize --in " + path("p.json").string() + " --out " + path("s.json").string()).status, 0);
    const auto s = io::system_from_json(json("s.json"));
    EXPECT_EQ(s.value.event_count(), 30u);
    const auto r = run("chirotope --in " + path("s.json").string() + " --out " + path("c.json").string());
    ASSERT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("axioms pass"), std::string::npos);
    EXPECT_EQ(io::chirotope_from_json(json("c.json")).value, chirotope_from_system(s.value));
    EXPECT_EQ(run("verify --in " + path("c.json").string()).status, 0);
}

TEST_F(Cli, ReduceNx3) {
    const auto r = run("reduce --in " + data("nx3.json") + " --out " + path("r.json").string() + " --log " +
                       path("flips.json").string());
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_TRUE(is_orientable(io::system_from_json(json("r.json")).value));
    const auto log = json("flips.json");
    ASSERT_EQ(log["flips"].size(), 1u);
    EXPECT_EQ(log["flips"][0]["top"], "b");
    EXPECT_EQ(log["flips"][0]["triple"], (io::Json{"a", "b", "c"}));
}

TEST_F(Cli, ReduceDerivesLogPath) {
    ASSERT_EQ(run("reduce --in " + data("nx3.json") + " --out " + path("r.json").string()).status, 0);
    EXPECT_TRUE(fs::exists(path("r.flips.json")));
}

TEST_F(Cli, RenderFourWireDiagramIsValidXml) {
    ASSERT_EQ(run("render --in " + data("four_wire.json") + " --out " + path("w.svg").string()).status, 0);
    boost::property_tree::ptree tree;
    std::ifstream f(path("w.svg"));
    ASSERT_NO_THROW(boost::property_tree::read_xml(f, tree));
    EXPECT_EQ(count_class(tree, "wire"), 4u);
    EXPECT_EQ(count_class(tree, "crossing"), 6u);
}

TEST_F(Cli, RenderCrossingsEqualEvents) {
    for (int seed = 0; seed < 5; ++seed) {
        const auto pts = path("p.json").string(), sys = path("s.json").string(), svg = path("s.svg").string();
        ASSERT_EQ(run("gen --kind points --n " + std::to_string(4 + seed) + " --seed " + std::to_string(seed) +
                      " --out " + pts)
                      .status,
                  0);
        ASSERT_EQ(run("dualize --in " + pts + " --out " + sys).status, 0);
        ASSERT_EQ(run("render --in " + sys + " --out " + svg).status, 0);
        boost::property_tree::ptree tree;
        std::ifstream f(svg);
        ASSERT_NO_THROW(boost::property_tree::read_xml(f, tree));
        EXPECT_EQ(count_class(tree, "crossing"), io::system_from_json(json("s.json")).value.event_count());
        EXPECT_EQ(count_class(tree, "seam"), 2u);
    }
}

TEST_F(Cli, SearchDiagramsAndClusters) {
    ASSERT_EQ(run("search --in " + data("five_cup.json") + " --n 5 --out " + path("c.json").string()).status, 0);
    EXPECT_EQ(json("c.json")["kind"], "cup");
    EXPECT_EQ(json("c.json")["labels"].size(), 5u);
    EXPECT_EQ(run("verify --in " + path("c.json").string() + " --against " + data("five_cup.json")).status, 0);

    ASSERT_EQ(run("search --kind clustering --n 3 --size 2 --in " + data("triangle_clusters.json") + " --out " +
                  path("k.json").string())
                  .status,
              0);
    EXPECT_EQ(json("k.json")["clusters"].size(), 3u);
    EXPECT_EQ(run("verify --in " + path("k.json").string() + " --against " + data("triangle_clusters.json")).status, 0);
    EXPECT_EQ(run("verify --in " + data("triangle_clusters.clusters.json") + " --against " +
                  data("triangle_clusters.json"))
                  .status,
              0);
}

TEST_F(Cli, VerificationFailureExitsOne) {
    // d lies inside the triangle a, b, c.
    std::ofstream(path("bad.json")) << R"({"kind": "independent-set", "labels": ["a", "b", "c", "d"], "trace": []})";
    const auto r = run("verify --in " + path("bad.json").string() + " --against " + data("polygons.json"));
    EXPECT_EQ(r.status, 1);
    EXPECT_NE(r.out.find("\"passed\": false"), std::string::npos);
}

TEST_F(Cli, MalformedInputExitsTwo) {
    std::ofstream(path("broken.json")) << "{\"base\": [";
    const auto r = run("dualize --in " + path("broken.json").string());
    EXPECT_EQ(r.status, 2);
    EXPECT_EQ(io::parse(r.err)["error"], "MalformedInput");
    std::ofstream(path("wrong.json")) << R"({"base": ["a", "b", "c"], "switches": [["a", "c"]]})";
    EXPECT_EQ(run("render --in " + path("wrong.json").string()).status, 2);
    EXPECT_EQ(run("dualize --in " + path("missing.json").string()).status, 2);
    EXPECT_EQ(run("gen --kind shapes").status, 2);
    EXPECT_EQ(run("frobnicate").status, 2);
    EXPECT_EQ(run("verify --suite everything").status, 2);
}

TEST_F(Cli, LimitsFromEnvironment) {
    const auto r = run("search --in " + data("polygons.json"), "CONVEXPOS_LIMITS=brute=3");
    EXPECT_EQ(r.status, 1);
    EXPECT_EQ(io::parse(r.err)["error"], "SizeLimit");
    EXPECT_EQ(run("search --in " + data("polygons.json"), "CONVEXPOS_LIMITS=brute=abc").status, 2);
    EXPECT_EQ(run("search --in " + data("polygons.json"), "CONVEXPOS_LIMITS=speed=3").status, 2);
    EXPECT_EQ(run("verify --suite axioms --instances 5", "CONVEXPOS_LIMITS=instances=4").status, 1);
}

TEST_F(Cli, RealizeRoundTrips) {
    ASSERT_EQ(run("realize --in " + data("four_wire.json") + " --out " + path("r.json").string()).status, 0);
    const auto r = json("r.json");
    EXPECT_TRUE(r.contains("grid"));
    EXPECT_TRUE(r.contains("lift"));
    const auto arr = io::arrangement_from_json(r);
    const auto w = io::diagram_from_json(io::read_file(data("four_wire.json")));
    EXPECT_EQ(chirotope_from_system(dualize(arr.value.bodies)), chirotope_from_system(double_cover(w.value)));
}

TEST_F(Cli, VerifySuitesAreDeterministic) {
    ASSERT_EQ(run("verify --suite all --instances 6 --seed 11 --out " + path("a.json").string()).status, 0);
    ASSERT_EQ(run("verify --suite all --instances 6 --seed 11 --out " + path("b.json").string()).status, 0);
    EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
    EXPECT_EQ(json("a.json")["suites"].size(), 4u);
}

TEST_F(Cli, VerifyWeakMapSuite) {
    const auto r = run("verify --suite weakmap --instances 200 --seed 3");
    EXPECT_EQ(r.status, 0) << r.err;
    EXPECT_NE(r.err.find("weakmap: PASS"), std::string::npos);
}

TEST_F(Cli, Help) {
    const auto r = run("--help");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("render"), std::string::npos);
}
