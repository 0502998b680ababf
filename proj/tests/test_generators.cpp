#include <doctest.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "emergence/apportion.hpp"
#include "emergence/errors.hpp"
#include "emergence/generators.hpp"
#include "emergence/io.hpp"
#include "oracles.hpp"

using namespace emergence;

#ifndef EMERGENCE_DATA_DIR
#define EMERGENCE_DATA_DIR "data"
#endif

TEST_SUITE_BEGIN("generators");

TEST_CASE("two-node growth is the forced mutual link") {
    GrowthConfig cfg;
    cfg.n_nodes = 2;
    cfg.m = 1;
    Tpm t = grow_pa_tpm(cfg);
    REQUIRE(t.n() == 2);
    CHECK(t.at(0, 1) == 1.0);
    CHECK(t.at(1, 0) == 1.0);
    CHECK(t.at(0, 0) == 0.0);
}

TEST_CASE("grown TPMs are valid and rows mirror node degrees") {
    for (std::uint64_t seed : {1ull, 7ull, 123ull}) {
        GrowthConfig cfg;
        cfg.n_nodes = 40;
        cfg.m = 1;
        cfg.alpha = 1.0;
        cfg.seed = seed;
        Tpm t = grow_pa_tpm(cfg);
        auto adj = grow_pa_adjacency(cfg);
        // validate() re-checks row stochasticity.
        std::vector<std::vector<double>> rows(40, std::vector<double>(40));
        for (int i = 0; i < 40; ++i)
            for (int j = 0; j < 40; ++j) rows[i][j] = t.at(i, j);
        CHECK_NOTHROW(validate_tpm(rows));
        for (int i = 0; i < 40; ++i) {
            int degree = 0;
            int support = 0;
            for (int j = 0; j < 40; ++j) {
                degree += adj[i][j];
                if (t.at(i, j) > 0) ++support;
            }
            CHECK(degree == support);
            if (degree > 0) CHECK(t.at(i, 0) * 0 == 0); // finite entries
        }
    }
}

TEST_CASE("growth is reproducible per seed") {
    GrowthConfig cfg;
    cfg.n_nodes = 30;
    cfg.alpha = 1.3;
    cfg.seed = 99;
    Tpm a = grow_pa_tpm(cfg);
    Tpm b = grow_pa_tpm(cfg);
    CHECK(a.data() == b.data());
    cfg.seed = 100;
    Tpm c = grow_pa_tpm(cfg);
    CHECK(a.data() != c.data());
}

TEST_CASE("superlinear attachment forms a hub") {
    GrowthConfig cfg;
    cfg.n_nodes = 40;
    cfg.alpha = 3.0;
    cfg.seed = 5;
    auto adj = grow_pa_adjacency(cfg);
    int max_degree = 0, leaves = 0;
    for (int i = 0; i < 40; ++i) {
        int d = 0;
        for (int j = 0; j < 40; ++j) d += adj[i][j];
        max_degree = std::max(max_degree, d);
        if (d == 1) ++leaves;
    }
    // Star-like: one node soaks up most attachments and leaves dominate.
    CHECK(max_degree >= 25);
    CHECK(leaves >= 30);
    // Leaf rows are deterministic into their single neighbor.
    Tpm t = grow_pa_tpm(cfg);
    for (int i = 0; i < 40; ++i) {
        int support = 0;
        double top = 0;
        for (int j = 0; j < 40; ++j) {
            if (t.at(i, j) > 0) ++support;
            top = std::max(top, t.at(i, j));
        }
        if (support == 1) CHECK(top == 1.0);
    }
}

TEST_CASE("new-to-old orientation keeps every row alive") {
    GrowthConfig cfg;
    cfg.n_nodes = 25;
    cfg.orientation = EdgeOrientation::NewToOld;
    cfg.seed = 3;
    Tpm t = grow_pa_tpm(cfg);
    for (int i = 0; i < t.n(); ++i) {
        double sum = 0;
        for (int j = 0; j < t.n(); ++j) sum += t.at(i, j);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("degree distribution at alpha=1 has a heavy tail") {
    GrowthConfig cfg;
    cfg.n_nodes = 1000;
    cfg.m = 1;
    cfg.alpha = 1.0;
    cfg.seed = 2024;
    auto adj = grow_pa_adjacency(cfg);
    std::vector<int> degree(cfg.n_nodes, 0);
    double mean = 0.0;
    for (int i = 0; i < cfg.n_nodes; ++i) {
        for (int j = 0; j < cfg.n_nodes; ++j) degree[i] += adj[i][j];
        mean += degree[i];
    }
    mean /= cfg.n_nodes;
    int tail = 0;
    for (int d : degree)
        if (d > 10) ++tail;
    const double empirical_ccdf = double(tail) / cfg.n_nodes;
    const double exponential_fit = std::exp(-10.0 / mean);
    CHECK(empirical_ccdf > exponential_fit);
}

TEST_CASE("growth config validation") {
    GrowthConfig bad;
    bad.n_nodes = 1;
    CHECK_THROWS_AS(bad.validate(), InvalidConfigError);
    bad = {};
    bad.m = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidConfigError);
    bad = {};
    bad.m = 40;
    bad.n_nodes = 40;
    CHECK_THROWS_AS(bad.validate(), InvalidConfigError);
    bad = {};
    bad.alpha = -0.5;
    CHECK_THROWS_AS(bad.validate(), InvalidConfigError);
}

TEST_CASE("pinpoint TPM structure is exact") {
    SUBCASE("single 7-cycle") {
        Tpm t = pinpoint_tpm({{7}});
        REQUIRE(t.n() == 7);
        for (int i = 0; i < 7; ++i) {
            for (int j = 0; j < 7; ++j) {
                const double expected = j == i ? 0.2 : (j == (i + 1) % 7 ? 0.8 : 0.0);
                CHECK(t.at(i, j) == expected);
            }
        }
    }

    SUBCASE("contracting a cycle yields a certain self-loop") {
        PinpointSpec spec;
        spec.cycle_sizes = {4, 3};
        Tpm t = pinpoint_tpm(spec);
        Tpm macro = coarse_grain(t, spec.target_partition());
        REQUIRE(macro.n() == 2);
        CHECK(macro.at(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(macro.at(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
    }

    SUBCASE("zero stay probability gives a permutation with CP 1") {
        PinpointSpec spec;
        spec.cycle_sizes = {3, 3};
        spec.stay_prob = 0.0;
        spec.step_prob = 1.0;
        Tpm t = pinpoint_tpm(spec);
        CHECK(cp(t) == doctest::Approx(1.0).epsilon(1e-12));
        AnalysisResult r = analyze(t);
        CHECK(r.hierarchy.emergent_count() == 0);
    }

    SUBCASE("size-1 cycles are fixed points") {
        Tpm t = pinpoint_tpm({{1, 2}});
        CHECK(t.at(0, 0) == 1.0);
        CHECK(t.at(1, 1) == 0.2);
        CHECK(t.at(1, 2) == 0.8);
    }

    SUBCASE("spec validation") {
        PinpointSpec bad;
        CHECK_THROWS_AS(bad.validate(), InvalidConfigError);
        bad.cycle_sizes = {3};
        bad.stay_prob = 0.3;
        bad.step_prob = 0.8;
        CHECK_THROWS_AS(bad.validate(), InvalidConfigError);
    }
}

TEST_CASE("pinpoint systems isolate a single emergent macroscale") {
    struct Case {
        std::vector<int> cycles;
        int level;
    };
    for (const auto& c : {Case{{6, 1}, 2}, Case{{5, 1, 1}, 3}}) {
        PinpointSpec spec;
        spec.cycle_sizes = c.cycles;
        Tpm t = pinpoint_tpm(spec);
        AnalysisResult r = analyze(t);
        REQUIRE(r.hierarchy.emergent_count() == 1);
        for (const auto& p : r.hierarchy.diagram.nodes()) {
            if (p == r.hierarchy.anchor) continue;
            CHECK(p.block_count() == c.level);
            CHECK(p == spec.target_partition());
        }
    }
}

TEST_CASE("garden examples validate and carry their structural claims") {
    for (const auto& ex : garden_examples()) {
        std::vector<std::vector<double>> rows(ex.tpm.n(), std::vector<double>(ex.tpm.n()));
        for (int i = 0; i < ex.tpm.n(); ++i)
            for (int j = 0; j < ex.tpm.n(); ++j) rows[i][j] = ex.tpm.at(i, j);
        CHECK_NOTHROW(validate_tpm(rows));
    }

    SUBCASE("deterministic but degenerate") {
        Tpm t = garden_example("deterministic-degenerate").tpm;
        CHECK(determinism(t) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(degeneracy(t) > 0.1);
        // Top-heavy: the strongest proper gain sits in the coarser half.
        AnalysisResult r = analyze(t);
        double best = -2;
        int best_level = 8;
        for (const auto& p : r.hierarchy.diagram.nodes()) {
            if (p == r.hierarchy.anchor) continue;
            if (r.hierarchy.delta.at(p) > best) {
                best = r.hierarchy.delta.at(p);
                best_level = p.block_count();
            }
        }
        CHECK(best_level <= 4);
    }

    SUBCASE("twin cycles form a balloon at the separating scale") {
        Tpm t = garden_example("twin-cycles").tpm;
        AnalysisResult r = analyze(t);
        REQUIRE(r.hierarchy.emergent_count() == 1);
        Partition sep = Partition::parse("00001111");
        CHECK(r.hierarchy.diagram.contains(sep));
    }

    SUBCASE("the 5-state fixture pins the source/cycle/sinks scale on top") {
        Tpm t = garden_example("source-cycle-sinks").tpm;
        AnalysisResult r = analyze(t);
        const Partition target = Partition::parse("01122");
        double best = -2;
        Partition argmax;
        for (const auto& p : r.hierarchy.diagram.nodes()) {
            if (p == r.hierarchy.anchor) continue;
            if (r.hierarchy.delta.at(p) > best) {
                best = r.hierarchy.delta.at(p);
                argmax = p;
            }
        }
        CHECK(argmax == target);
        CHECK(r.hierarchy.emergent_count() == 4);
        CHECK(r.hierarchy.reported_member_count(1e-9) == 5);
    }

    SUBCASE("unknown names are rejected") {
        CHECK_THROWS_AS(garden_example("nope"), InvalidConfigError);
    }
}

TEST_CASE("garden fixtures match the committed fixture library") {
    const std::string dir = std::string(EMERGENCE_DATA_DIR) + "/fixtures/";
    for (const auto& ex : garden_examples()) {
        std::ifstream in(dir + ex.name + ".csv");
        REQUIRE_MESSAGE(in.good(), ("missing fixture file for " + ex.name).c_str());
        Tpm committed = read_tpm_csv(in);
        REQUIRE(committed.n() == ex.tpm.n());
        for (int i = 0; i < ex.tpm.n(); ++i)
            for (int j = 0; j < ex.tpm.n(); ++j)
                CHECK(committed.at(i, j) == ex.tpm.at(i, j));
    }
}

TEST_CASE("relabeling a generated fixture leaves the analysis invariant") {
    std::mt19937_64 rng(77);
    Tpm t = garden_example("noisy-pairs").tpm;
    auto sigma = oracle::random_relabeling(6, rng);
    AnalysisResult r1 = analyze(t);
    AnalysisResult r2 = analyze(relabel(t, sigma));
    std::set<std::string> m1, m2;
    for (const auto& p : r1.hierarchy.diagram.nodes()) m1.insert(relabel(p, sigma).to_string());
    for (const auto& p : r2.hierarchy.diagram.nodes()) m2.insert(p.to_string());
    CHECK(m1 == m2);
}

TEST_SUITE_END();
