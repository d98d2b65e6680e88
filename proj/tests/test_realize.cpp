#include <gtest/gtest.h>

#include "convexpos/chirotope.hpp"
#include "convexpos/realize.hpp"
#include "convexpos/reduction.hpp"
#include "support.hpp"

using namespace convexpos;
using namespace fixtures;

namespace {

// Curvature recomputed from the polygons themselves, not the stored heights.
double polygon_blaschke(const RealizedArrangement& r) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : r.bodies) best = std::min(best, blaschke_margin(support_grid(b.body, r.grid)));
    return best;
}

void expect_round_trip(const WiringDiagram& w) {
    const auto r = realize_with_escalation(w);
    EXPECT_EQ(r.bodies.size(), w.base.size());
    EXPECT_EQ(chirotope_from_system(dualize(r.bodies)), chirotope_from_system(double_cover(w)));
    EXPECT_GT(polygon_blaschke(r), kEpsilon);
    for (const auto& h : r.heights) EXPECT_GT(blaschke_margin(h), kEpsilon);
}

}  // namespace

TEST(Realize, FourWireDiagram) {
    const auto w = four_wire();
    const auto r = realize_wiring_diagram(w, minimum_grid(double_cover(w)));
    EXPECT_EQ(r.bodies.size(), 4u);
    EXPECT_GT(r.lift, 0);
    EXPECT_EQ(dualize(r.bodies), double_cover(w));
    expect_round_trip(w);
}

TEST(Realize, ThreeCupIsInConvexPosition) {
    const auto r = realize_with_escalation(three_cup());
    EXPECT_TRUE(is_convexly_independent_geometric(r.bodies, {0, 1, 2}));
}

TEST(Realize, CupBodiesAreIndependent) {
    const auto r = realize_with_escalation(cup_diagram(5));
    EXPECT_TRUE(is_convexly_independent_geometric(r.bodies, {0, 1, 2, 3, 4}));
}

TEST(Realize, RandomDiagramsRoundTrip) {
    auto rng = make_rng(61);
    for (int trial = 0; trial < 30; ++trial) expect_round_trip(random_wiring_diagram(3 + trial % 5, rng));
}

TEST(Realize, TenWireDiagram) {
    auto rng = make_rng(62);
    const auto w = random_wiring_diagram(10, rng);
    const auto r = realize_with_escalation(w);
    EXPECT_EQ(r.bodies.size(), 10u);
    EXPECT_EQ(chirotope_from_system(dualize(r.bodies)), chirotope_from_system(double_cover(w)));
}

TEST(Realize, NonOrientableSystemsAreRealizableByBodies) {
    const auto r = realize_with_escalation(nx3());
    const auto s = dualize(r.bodies);
    EXPECT_FALSE(classify_triple(s, {0, 1, 2}).orientable);
    EXPECT_EQ(upper_envelope(s), upper_envelope(nx3()));
    EXPECT_GT(polygon_blaschke(r), kEpsilon);
}

TEST(Realize, AdmissibleSystemsKeepCrossingWords) {
    auto rng = make_rng(63);
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = random_admissible_system(4 + trial % 3, 40, rng);
        const auto r = realize_with_escalation(s);
        const auto back = dualize(r.bodies);
        EXPECT_EQ(back.base(), s.base());
        for (Label l : s.labels()) {
            std::vector<Label> others;
            for (Label o : s.labels())
                if (o != l) others.push_back(o);
            EXPECT_EQ(crossing_word(back, l, others), crossing_word(s, l, others));
        }
    }
}

TEST(Realize, GridBelowMinimumIsRejected) {
    const auto w = four_wire();
    try {
        realize_wiring_diagram(w, minimum_grid(double_cover(w)) - 1);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
    }
}

TEST(Blaschke, CircleAndPoint) {
    std::vector<double> circle(64, 2.0), sine(64);
    for (std::size_t s = 0; s < 64; ++s) sine[s] = std::cos(kTwoPi * (s + 0.5) / 64);
    EXPECT_NEAR(blaschke_margin(circle), 2.0, 1e-12);
    // A point's support is a sine: h + h'' vanishes up to discretization.
    EXPECT_NEAR(blaschke_margin(sine), 0.0, 1e-3);
}
