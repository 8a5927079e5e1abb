#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sdvo/generator.hpp"
#include "sdvo/io.hpp"
#include "sdvo/simulator.hpp"
#include "test_support.hpp"

using namespace sdvo;
using sdvo::testing::InstanceBuilder;

namespace {

Scenario scenario_of(std::vector<ScenarioState> states, std::uint64_t seed = 1) {
    Scenario sc;
    sc.seed = seed;
    sc.states = std::move(states);
    return sc;
}

}  // namespace

TEST_CASE("single idle flow reaches its target") {
    InstanceBuilder b(2);
    int a = b.add_app(0);
    b.add_mode(a, 1.0, 5.0, 10.0);
    int c = b.add_app(1);
    b.add_mode(c, 1.0, 5.0, 10.0);
    b.add_flow(a, 1, c, 1, 2.0);
    auto inst = b.build();

    Assignment active(2);
    active.levels = {1, 1};
    auto rec = step_tick(inst, active, {});
    REQUIRE(rec.flows.size() == 1);
    CHECK(rec.flows[0].observed_mbps == doctest::Approx(2.0));
    CHECK(rec.flows[0].health_pct == doctest::Approx(100.0));
}

TEST_CASE("proportional link sharing: 8 + 4 offered on capacity 10") {
    InstanceBuilder b(2);
    int a = b.add_app(0);
    b.add_mode(a, 1.0, 0.0, 0.0);
    int c = b.add_app(1);
    b.add_mode(c, 1.0, 0.0, 0.0);
    b.add_flow(a, 1, c, 1, 8.0);
    b.add_flow(a, 1, c, 1, 4.0);
    auto inst = b.build();

    Assignment active(2);
    active.levels = {1, 1};
    auto rec = step_tick(inst, active, {});
    REQUIRE(rec.flows.size() == 2);
    CHECK(rec.flows[0].observed_mbps == doctest::Approx(8.0 * 10.0 / 12.0));  // 6.67
    CHECK(rec.flows[1].observed_mbps == doctest::Approx(4.0 * 10.0 / 12.0));  // 3.33
}

TEST_CASE("cpu saturation scales traffic at the source") {
    // demand 200% -> factor 0.5 before the link stage
    InstanceBuilder b(2);
    int a = b.add_app(0);
    b.add_mode(a, 1.0, 200.0, 0.0);
    int c = b.add_app(1);
    b.add_mode(c, 1.0, 0.0, 0.0);
    b.add_flow(a, 1, c, 1, 1.0);
    auto inst = b.build();

    Assignment active(2);
    active.levels = {1, 1};
    auto rec = step_tick(inst, active, {});
    REQUIRE(rec.flows.size() == 1);
    CHECK(rec.flows[0].observed_mbps == doctest::Approx(0.5));
    CHECK(rec.ecus[0].cpu_pct == doctest::Approx(100.0));  // consumption is capped

    // demand 150% -> factor 2/3
    InstanceBuilder b2(2);
    int a2 = b2.add_app(0);
    b2.add_mode(a2, 1.0, 150.0, 0.0);
    int c2 = b2.add_app(1);
    b2.add_mode(c2, 1.0, 0.0, 0.0);
    b2.add_flow(a2, 1, c2, 1, 3.0);
    auto inst2 = b2.build();
    Assignment active2(2);
    active2.levels = {1, 1};
    auto rec2 = step_tick(inst2, active2, {});
    CHECK(rec2.flows[0].observed_mbps == doctest::Approx(2.0));
}

TEST_CASE("same-ECU flow sees no link contention and no link usage") {
    InstanceBuilder b(2);
    int a = b.add_app(0);
    b.add_mode(a, 1.0, 0.0, 0.0);
    int c = b.add_app(0);
    b.add_mode(c, 1.0, 0.0, 0.0);
    b.add_flow(a, 1, c, 1, 50.0);  // way above any link capacity
    auto inst = b.build();

    Assignment active(2);
    active.levels = {1, 1};
    auto rec = step_tick(inst, active, {});
    REQUIRE(rec.flows.size() == 1);
    CHECK(rec.flows[0].health_pct == doctest::Approx(100.0));
}

TEST_CASE("per-link conservation holds under heavy overload") {
    GenParams p = *preset_params("M");
    p.seed = 6;
    Instance inst = gen_instance(p);
    Rng rng(12);
    Scenario sc = gen_scenario(inst, 3, rng);
    sc.seed = 12;

    auto log = run_scenario(inst, sc, Policy::Baseline, {});
    for (const auto& tick : log.ticks) {
        std::vector<double> load(inst.topology.links.size(), 0.0);
        for (const auto& fs : tick.flows) {
            // locate the flow to recover its endpoints
            const Flow* flow = nullptr;
            for (const auto& app : inst.apps)
                for (const auto& m : app.modes)
                    for (const auto& f : m.flows)
                        if (f.flow_id == fs.flow_id) flow = &f;
            REQUIRE(flow != nullptr);
            int src = inst.apps[flow->src.app_id].host_ecu;
            int dst = inst.apps[flow->dst.app_id].host_ecu;
            if (src == dst) continue;
            load[inst.topology.uplink_id(src)] += fs.observed_mbps;
            load[inst.topology.downlink_id(dst)] += fs.observed_mbps;
        }
        for (const auto& l : inst.topology.links)
            CHECK(load[l.link_id] <= l.be_capacity_mbps + 1e-9);
        for (const auto& fs : tick.flows) CHECK(fs.health_pct <= 100.0 + 1e-9);
    }
}

TEST_CASE("optimized policy keeps every steady flow at full health") {
    GenParams p = *preset_params("S");
    p.seed = 14;
    Instance inst = gen_instance(p);
    Rng rng(9);
    Scenario sc = gen_scenario(inst, 4, rng);
    sc.seed = 9;

    auto log = run_scenario(inst, sc, Policy::Optimized, {});
    for (const auto& tick : log.ticks) {
        for (const auto& fs : tick.flows) CHECK(fs.health_pct == doctest::Approx(100.0));
        for (const auto& e : tick.ecus) CHECK(e.cpu_pct <= 100.0 + 1e-9);
    }
}

TEST_CASE("transition accounting: starts and stops per ECU") {
    InstanceBuilder b(2);
    int a = b.add_app(0);
    b.add_mode(a, 1.0, 1.0, 1.0);
    int c = b.add_app(1);
    b.add_mode(c, 1.0, 1.0, 1.0);
    auto inst = b.build();

    // state 0: both apps; state 1: only app 0
    auto sc = scenario_of({{{0, 1}, 10}, {{0}, 10}});
    auto log = run_scenario(inst, sc, Policy::Baseline, {});

    REQUIRE(log.states.size() == 2);
    CHECK(log.states[0].starts == 2);
    CHECK(log.states[0].stops == 0);
    // one start per ECU: max(2s) -> 2 ticks of transition
    CHECK(log.states[0].container_transition_s == doctest::Approx(2.0));
    CHECK(log.states[0].transition_ticks == 2);
    CHECK(log.states[1].starts == 0);
    CHECK(log.states[1].stops == 1);
    CHECK(log.states[1].container_transition_s == doctest::Approx(1.0));

    // first two ticks: no containers up yet
    CHECK(log.ticks[0].transition);
    CHECK(log.ticks[0].flows.empty());
    CHECK(log.ticks[2].transition == false);
}

TEST_CASE("runs are deterministic") {
    GenParams p = *preset_params("S");
    p.seed = 20;
    Instance inst = gen_instance(p);
    Rng rng(21);
    Scenario sc = gen_scenario(inst, 3, rng);
    sc.seed = 21;

    auto a = run_scenario(inst, sc, Policy::Optimized, {});
    auto b = run_scenario(inst, sc, Policy::Optimized, {});
    CHECK(metrics_to_csv(a) == metrics_to_csv(b));
    CHECK(a.config_hash == b.config_hash);

    auto c = run_scenario(inst, sc, Policy::Baseline, {});
    CHECK(c.config_hash == a.config_hash);  // hash binds inputs, not the policy
}

TEST_CASE("mismatched scenario is rejected") {
    auto inst = sdvo::testing::two_app_example();
    auto sc = scenario_of({{{0, 7}, 10}});
    CHECK_THROWS_AS(run_scenario(inst, sc, Policy::Baseline, {}), SimError);
}
