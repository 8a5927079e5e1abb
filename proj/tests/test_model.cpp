#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sdvo/model.hpp"
#include "test_support.hpp"

using namespace sdvo;
using sdvo::testing::InstanceBuilder;

namespace {

bool has_violation(const ValidationReport& rep, const std::string& needle) {
    for (const auto& v : rep.violations)
        if (v.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("star topology has two directed links per ECU") {
    auto t = Topology::star(4, 10.0);
    CHECK(t.links.size() == 8);
    for (int e = 0; e < 4; ++e) {
        CHECK(t.links[t.uplink_id(e)].direction == LinkDirection::Uplink);
        CHECK(t.links[t.downlink_id(e)].direction == LinkDirection::Downlink);
        CHECK(t.links[t.uplink_id(e)].endpoint_ecu == e);
    }
}

TEST_CASE("well-formed two-app instance validates") {
    auto inst = sdvo::testing::two_app_example();
    CHECK(validate_instance(inst).ok());
}

TEST_CASE("dependency cycle A^1 -> B^1 -> A^1 is reported") {
    InstanceBuilder b(1);
    int a = b.add_app(0);
    b.add_mode(a, 1.0, 1.0, 1.0);
    int c = b.add_app(0);
    b.add_mode(c, 1.0, 1.0, 1.0);
    b.add_dep(a, 1, c, 1);
    b.add_dep(c, 1, a, 1);
    auto rep = validate_instance(b.build());
    CHECK_FALSE(rep.ok());
    CHECK(has_violation(rep, "G_M cycle"));
}

TEST_CASE("crossing mode edges are reported") {
    InstanceBuilder b(1);
    int a = b.add_app(0);
    b.add_mode(a, 2.0, 2.0, 2.0).add_mode(a, 1.0, 1.0, 1.0);
    int c = b.add_app(0);
    b.add_mode(c, 2.0, 2.0, 2.0).add_mode(c, 1.0, 1.0, 1.0);
    // (1 -> 2) and (2 -> 1) cross
    b.add_dep(a, 1, c, 2);
    b.add_dep(a, 2, c, 1);
    auto rep = validate_instance(b.build());
    CHECK_FALSE(rep.ok());
    CHECK(has_violation(rep, "crossing mode edges"));
}

TEST_CASE("non-monotone AXIL is reported") {
    InstanceBuilder b(1);
    int a = b.add_app(0);
    b.add_mode(a, 1.0, 2.0, 2.0).add_mode(a, 2.0, 1.0, 1.0);
    auto rep = validate_instance(b.build());
    CHECK(has_violation(rep, "AXIL not strictly decreasing"));
}

TEST_CASE("mode_requirements places cpu and mem on the host ECU") {
    InstanceBuilder b(4);
    int a = b.add_app(1);
    b.add_mode(a, 1.0, 5.0, 100.0);
    auto inst = b.build();
    auto r = mode_requirements(inst, a, 1);
    auto space = inst.space();
    CHECK(r[space.cpu(1)] == doctest::Approx(5.0));
    CHECK(r[space.mem(1)] == doctest::Approx(100.0));
    for (const auto& l : inst.topology.links) CHECK(r[space.bw(l.link_id)] == 0.0);
}

TEST_CASE("cross-ECU flow charges uplink of src and downlink of dst") {
    InstanceBuilder b(4);
    int a = b.add_app(0);
    b.add_mode(a, 1.0, 0.0, 0.0);
    int c = b.add_app(1);
    b.add_mode(c, 1.0, 0.0, 0.0);
    b.add_flow(a, 1, c, 1, 2.0);
    auto inst = b.build();
    auto r = mode_requirements(inst, a, 1);
    auto space = inst.space();
    CHECK(r[space.bw(inst.topology.uplink_id(0))] == doctest::Approx(2.0));
    CHECK(r[space.bw(inst.topology.downlink_id(1))] == doctest::Approx(2.0));
    CHECK(r[space.bw(inst.topology.uplink_id(1))] == 0.0);
    CHECK(r[space.bw(inst.topology.downlink_id(0))] == 0.0);
}

TEST_CASE("same-ECU flow contributes no link bandwidth") {
    InstanceBuilder b(4);
    int a = b.add_app(2);
    b.add_mode(a, 1.0, 0.0, 0.0);
    int c = b.add_app(2);
    b.add_mode(c, 1.0, 0.0, 0.0);
    b.add_flow(a, 1, c, 1, 1.5);
    auto inst = b.build();
    auto r = mode_requirements(inst, a, 1);
    auto space = inst.space();
    for (const auto& l : inst.topology.links) CHECK(r[space.bw(l.link_id)] == 0.0);
}

TEST_CASE("flow set is cumulative downward") {
    InstanceBuilder b(4);
    int a = b.add_app(0);
    b.add_mode(a, 2.0, 1.0, 1.0).add_mode(a, 1.0, 1.0, 1.0);
    int c = b.add_app(1);
    b.add_mode(c, 1.0, 0.0, 0.0);
    b.add_flow(a, 2, c, 1, 1.0);  // attached to the degraded level
    auto inst = b.build();
    auto space = inst.space();
    // active at level 1 includes the level-2 flow
    CHECK(mode_requirements(inst, a, 1)[space.bw(inst.topology.uplink_id(0))] ==
          doctest::Approx(1.0));
    CHECK(mode_requirements(inst, a, 2)[space.bw(inst.topology.uplink_id(0))] ==
          doctest::Approx(1.0));
}

TEST_CASE("mode_requirements rejects unknown app or level") {
    auto inst = sdvo::testing::two_app_example();
    CHECK_THROWS(mode_requirements(inst, 7, 1));
    CHECK_THROWS(mode_requirements(inst, 0, 3));
    CHECK_THROWS(mode_requirements(inst, 0, 0));
}

TEST_CASE("assignment_usage sums active modes only") {
    auto inst = sdvo::testing::two_app_example();
    auto space = inst.space();

    Assignment off(2);
    CHECK(assignment_usage(inst, off) == ResourceVector(space.size()));

    Assignment one(2);
    one.levels[0] = 1;
    CHECK(assignment_usage(inst, one) == mode_requirements(inst, 0, 1));

    Assignment both(2);
    both.levels[0] = 1;  // cpu 6
    both.levels[1] = 2;  // cpu 3
    CHECK(assignment_usage(inst, both)[space.cpu(0)] == doctest::Approx(9.0));
}

TEST_CASE("assignment_usage is additive over disjoint app sets") {
    InstanceBuilder b(2);
    int a = b.add_app(0);
    b.add_mode(a, 1.0, 3.0, 10.0);
    int c = b.add_app(1);
    b.add_mode(c, 1.0, 4.0, 20.0);
    auto inst = b.build();

    Assignment only_a(2), only_c(2), both(2);
    only_a.levels[0] = 1;
    only_c.levels[1] = 1;
    both.levels[0] = 1;
    both.levels[1] = 1;
    CHECK(assignment_usage(inst, both) ==
          assignment_usage(inst, only_a) + assignment_usage(inst, only_c));
}

TEST_CASE("dependency satisfaction is at-least-as-capable") {
    InstanceBuilder b(1);
    int a = b.add_app(0);
    b.add_mode(a, 1.0, 1.0, 1.0);
    int c = b.add_app(0);
    b.add_mode(c, 2.0, 2.0, 2.0).add_mode(c, 1.0, 1.0, 1.0);
    b.add_dep(a, 1, c, 2);  // A^1 requires B^2
    auto inst = b.build();

    Assignment sat(2);
    sat.levels[0] = 1;
    sat.levels[1] = 2;
    CHECK(dependencies_satisfied(inst, sat).ok);

    Assignment off(2);
    off.levels[0] = 1;
    auto check = dependencies_satisfied(inst, off);
    CHECK_FALSE(check.ok);
    CHECK(check.violations.size() == 1);

    Assignment capable(2);
    capable.levels[0] = 1;
    capable.levels[1] = 1;  // B more capable than required
    CHECK(dependencies_satisfied(inst, capable).ok);
}
