#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

#include "sdvo/generator.hpp"
#include "sdvo/metrics.hpp"

using namespace sdvo;

TEST_CASE("quartiles on tiny hand-computed sets") {
    auto q1 = quartiles({100.0});
    CHECK(q1.q1 == 100.0);
    CHECK(q1.median == 100.0);
    CHECK(q1.q3 == 100.0);

    auto q2 = quartiles({10.0, 20.0});
    CHECK(q2.q1 == doctest::Approx(12.5));
    CHECK(q2.median == doctest::Approx(15.0));
    CHECK(q2.q3 == doctest::Approx(17.5));

    auto q3 = quartiles({100.0, 80.0, 60.0});
    CHECK(q3.q1 == doctest::Approx(70.0));
    CHECK(q3.median == doctest::Approx(80.0));
    CHECK(q3.q3 == doctest::Approx(90.0));

    auto q4 = quartiles({1.0, 2.0, 3.0, 4.0});
    CHECK(q4.q1 == doctest::Approx(1.75));
    CHECK(q4.median == doctest::Approx(2.5));
    CHECK(q4.q3 == doctest::Approx(3.25));
}

TEST_CASE("quartiles are permutation invariant") {
    std::vector<double> samples{5, 1, 9, 3, 7, 2, 8};
    auto base = quartiles(samples);
    std::mt19937 shuffler(3);
    for (int i = 0; i < 20; ++i) {
        std::shuffle(samples.begin(), samples.end(), shuffler);
        auto q = quartiles(samples);
        CHECK(q.q1 == base.q1);
        CHECK(q.median == base.median);
        CHECK(q.q3 == base.q3);
    }
}

TEST_CASE("empty log summarizes to zero samples") {
    MetricsLog log;
    auto sum = summarize_health(log);
    CHECK(sum.n_samples == 0);
    CHECK(sum.per_state.empty());
}

TEST_CASE("all-100 log summarizes to 100 everywhere") {
    MetricsLog log;
    TickRecord tick;
    tick.flows = {{0, 1.0, 1.0, 100.0}, {1, 2.0, 2.0, 100.0}};
    log.states.push_back({});
    log.ticks.push_back(tick);
    auto sum = summarize_health(log);
    CHECK(sum.health.median == 100.0);
    CHECK(sum.health.q1 == 100.0);
    CHECK(sum.health.q3 == 100.0);
    CHECK(sum.n_samples == 2);
}

TEST_CASE("transition gaps are counted as excluded samples") {
    MetricsLog log;
    StateRecord s;
    s.steady_flow_count = 3;
    log.states.push_back(s);
    TickRecord gap;
    gap.transition = true;
    gap.flows = {{0, 1.0, 1.0, 100.0}};  // two of three flows missing
    log.ticks.push_back(gap);
    auto sum = summarize_health(log);
    CHECK(sum.excluded_samples == 2);
}

TEST_CASE("comparing a run with itself yields zero deltas") {
    GenParams p = *preset_params("S");
    p.seed = 33;
    Instance inst = gen_instance(p);
    Rng rng(34);
    Scenario sc = gen_scenario(inst, 3, rng);
    sc.seed = 34;

    auto log = run_scenario(inst, sc, Policy::Baseline, {});
    auto cmp = compare_runs(log, log);
    CHECK(cmp.median_health_delta_pct == 0.0);
    CHECK(cmp.saturated_ticks_delta == 0);
    CHECK(cmp.transition_time_delta_s == 0.0);
}

TEST_CASE("mismatched logs are rejected") {
    GenParams p = *preset_params("XS");
    p.seed = 1;
    Instance inst = gen_instance(p);
    Rng r1(2), r2(3);
    Scenario sc1 = gen_scenario(inst, 2, r1);
    sc1.seed = 2;
    Scenario sc2 = gen_scenario(inst, 2, r2);
    sc2.seed = 3;

    auto a = run_scenario(inst, sc1, Policy::Baseline, {});
    auto b = run_scenario(inst, sc2, Policy::Optimized, {});
    CHECK_THROWS_AS(compare_runs(a, b), MetricsError);
}

TEST_CASE("plot series files are emitted with stable contents") {
    GenParams p = *preset_params("XS");
    p.seed = 44;
    Instance inst = gen_instance(p);
    Rng rng(45);
    Scenario sc = gen_scenario(inst, 6, rng);
    sc.seed = 45;

    auto baseline = run_scenario(inst, sc, Policy::Baseline, {});
    auto optimized = run_scenario(inst, sc, Policy::Optimized, {});

    auto dir = std::filesystem::temp_directory_path() / "sdvo_metrics_test";
    std::filesystem::remove_all(dir);
    emit_plot_series(baseline, optimized, dir);

    auto slurp = [](const std::filesystem::path& f) {
        std::ifstream in(f);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    auto modes = slurp(dir / "mode_choices.csv");
    // one segment per state
    int max_state = -1;
    std::istringstream ss(modes);
    std::string line;
    std::getline(ss, line);  // header
    while (std::getline(ss, line)) max_state = std::max(max_state, std::stoi(line));
    CHECK(max_state == 5);

    emit_plot_series(baseline, optimized, dir);
    CHECK(slurp(dir / "health_baseline.csv") == slurp(dir / "health_baseline.csv"));
    CHECK(modes == slurp(dir / "mode_choices.csv"));
    std::filesystem::remove_all(dir);
}
