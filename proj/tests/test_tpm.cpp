#include <doctest.h>

#include <cmath>

#include "emergence/errors.hpp"
#include "emergence/tpm.hpp"
#include "oracles.hpp"

using namespace emergence;

TEST_SUITE_BEGIN("tpm");

TEST_CASE("validate accepts well-formed matrices") {
    Tpm id2 = validate_tpm({{1, 0}, {0, 1}});
    CHECK(id2.n() == 2);
    CHECK(id2.is_microscale());

    Tpm uniform4 = validate_tpm(std::vector<std::vector<double>>(4, std::vector<double>(4, 0.25)));
    CHECK(uniform4.n() == 4);
}

TEST_CASE("validate rejects malformed matrices") {
    CHECK_THROWS_AS(validate_tpm({{0.5, 0.6}, {0.5, 0.5}}), RowSumError);
    CHECK_THROWS_AS(validate_tpm({{1, 0, 0}, {0, 1, 0}}), NonSquareError);
    CHECK_THROWS_AS(validate_tpm({}), NonSquareError);
    CHECK_THROWS_AS(validate_tpm({{1.2, -0.2}, {0.5, 0.5}}), NegativeEntryError);
    const double nan = std::nan("");
    CHECK_THROWS_AS(validate_tpm({{nan, 1.0}, {0.5, 0.5}}), NegativeEntryError);
}

TEST_CASE("validate renormalizes tiny row-sum drift only") {
    Tpm t = validate_tpm({{0.5 + 4e-10, 0.5}, {0.25, 0.75}});
    double sum = t.at(0, 0) + t.at(0, 1);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));

    try {
        validate_tpm({{0.5 + 2e-9, 0.5}, {0.25, 0.75}});
        FAIL("expected RowSumError");
    } catch (const RowSumError& e) {
        CHECK(e.row == 0);
        CHECK(std::abs(e.deviation) > 1e-9);
    }
}

TEST_CASE("determinism of a single cause") {
    Tpm id4 = oracle::identity_tpm(4);
    CHECK(determinism_of_cause(id4, 0) == doctest::Approx(1.0).epsilon(1e-12));

    Tpm u4 = oracle::uniform_tpm(4);
    CHECK(determinism_of_cause(u4, 0) == doctest::Approx(0.0).epsilon(1e-12));

    Tpm half = validate_tpm({{0.5, 0.5, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    CHECK(determinism_of_cause(half, 0) == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(determinism_of_cause(id4, 4), IndexOutOfRangeError);
    CHECK_THROWS_AS(determinism_of_cause(validate_tpm({{1.0}}), 0), SingleStateScaleError);
}

TEST_CASE("system-wide primitives at the anchor cases") {
    std::mt19937_64 rng(7);
    for (int n : {2, 3, 5, 8}) {
        Tpm perm = oracle::random_permutation_tpm(n, rng);
        CHECK(determinism(perm) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(degeneracy(perm) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(specificity(perm) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(cp(perm) == doctest::Approx(1.0).epsilon(1e-12));

        Tpm all1 = oracle::all_to_one_tpm(n);
        CHECK(determinism(all1) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(degeneracy(all1) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(cp(all1) == doctest::Approx(0.0).epsilon(1e-12));

        Tpm uni = oracle::uniform_tpm(n);
        CHECK(determinism(uni) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(degeneracy(uni) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(cp(uni) == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("cp of the single-state scale is 0 by convention") {
    CHECK(cp(validate_tpm({{1.0}})) == 0.0);
    CHECK_THROWS_AS(determinism(validate_tpm({{1.0}})), SingleStateScaleError);
}

TEST_CASE("coarse_grain basics") {
    std::mt19937_64 rng(11);
    Tpm t = oracle::random_tpm(5, rng);

    SUBCASE("identity partition returns the input exactly") {
        Tpm out = coarse_grain(t, Partition::finest(5));
        REQUIRE(out.n() == 5);
        for (int c = 0; c < 5; ++c)
            for (int e = 0; e < 5; ++e) CHECK(out.at(c, e) == t.at(c, e));
    }

    SUBCASE("single block gives the 1x1 total") {
        Tpm out = coarse_grain(t, Partition::coarsest(5));
        REQUIRE(out.n() == 1);
        CHECK(out.at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(out.block_weights()[0] == 5);
    }

    SUBCASE("4-cycle lumped into halves mixes evenly") {
        Tpm cyc = oracle::cycle_tpm(4);
        Tpm out = coarse_grain(cyc, Partition::parse("0011"));
        REQUIRE(out.n() == 2);
        for (int c = 0; c < 2; ++c)
            for (int e = 0; e < 2; ++e) CHECK(out.at(c, e) == doctest::Approx(0.5).epsilon(1e-12));
    }

    SUBCASE("partition size mismatch is rejected") {
        CHECK_THROWS_AS(coarse_grain(t, Partition::finest(4)), InvalidPartitionError);
    }
}

TEST_CASE("merge_blocks equals coarse_grain of the pairing partition") {
    std::mt19937_64 rng(13);
    Tpm id2 = oracle::identity_tpm(2);
    Tpm merged = merge_blocks(id2, 0, 1);
    REQUIRE(merged.n() == 1);
    CHECK(merged.at(0, 0) == 1.0);

    Tpm t3 = oracle::random_tpm(3, rng);
    Tpm a = merge_blocks(t3, 0, 1);
    Tpm b = coarse_grain(t3, Partition::parse("001"));
    for (int c = 0; c < 2; ++c)
        for (int e = 0; e < 2; ++e) CHECK(a.at(c, e) == doctest::Approx(b.at(c, e)).epsilon(1e-15));
    CHECK(cp(a) == doctest::Approx(cp(b)).epsilon(1e-15));

    CHECK_THROWS_AS(merge_blocks(t3, 0, 0), IndexOutOfRangeError);
    CHECK_THROWS_AS(merge_blocks(t3, 0, 3), IndexOutOfRangeError);
}

TEST_CASE("iterated merges equal direct coarse-graining from the microscale") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        Tpm t = oracle::random_tpm(6, rng);
        // merge micro states {0,1}, then blocks 0 and 2 of the result:
        // final blocks {0,1,3}, {2}, {4}, {5}.
        Tpm two_step = merge_blocks(merge_blocks(t, 0, 1), 0, 2);
        Tpm direct = coarse_grain(t, Partition::parse("001023"));
        REQUIRE(two_step.n() == direct.n());
        for (int c = 0; c < direct.n(); ++c)
            for (int e = 0; e < direct.n(); ++e)
                CHECK(two_step.at(c, e) == doctest::Approx(direct.at(c, e)).epsilon(1e-12));
        CHECK(two_step.block_weights() == direct.block_weights());
    }
}

TEST_CASE("composition of coarse-grainings is exact") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        Tpm t = oracle::random_tpm(6, rng);
        Partition p1 = Partition::parse("001122");
        Tpm mid = coarse_grain(t, p1);
        Partition p2_induced = Partition::parse("001"); // merge the first two pair-blocks
        Tpm two_step = coarse_grain(mid, p2_induced);
        Tpm direct = coarse_grain(t, Partition::parse("000011"));
        for (int c = 0; c < direct.n(); ++c)
            for (int e = 0; e < direct.n(); ++e)
                CHECK(std::abs(two_step.at(c, e) - direct.at(c, e)) < 1e-12);
    }
}

TEST_CASE("coarse-graining preserves row-stochasticity") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        Tpm t = oracle::random_tpm(n, rng);
        std::vector<int> assign(n);
        for (int i = 0; i < n; ++i) assign[i] = static_cast<int>(rng() % n);
        Tpm out = coarse_grain(t, Partition(assign));
        for (int c = 0; c < out.n(); ++c) {
            double sum = 0.0;
            for (int e = 0; e < out.n(); ++e) {
                sum += out.at(c, e);
                CHECK(!std::isnan(out.at(c, e)));
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("primitive ordering and the mutual-information identity") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        Tpm t = oracle::random_tpm(n, rng);
        const double det = determinism(t);
        const double deg = degeneracy(t);
        CHECK(deg >= -1e-12);
        CHECK(det >= deg - 1e-12);
        CHECK(det <= 1.0 + 1e-12);
        const double c = cp(t);
        CHECK(c >= -1e-12);
        CHECK(c <= 1.0 + 1e-12);
        const double mi = oracle::mutual_information_bits(t);
        CHECK(std::abs(c * std::log2(double(n)) - mi) < 1e-10);
    }
}

TEST_CASE("primitives are invariant under state relabeling") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        Tpm t = oracle::random_tpm(n, rng);
        auto sigma = oracle::random_relabeling(n, rng);
        Tpm r = relabel(t, sigma);
        CHECK(determinism(t) == doctest::Approx(determinism(r)).epsilon(1e-12));
        CHECK(degeneracy(t) == doctest::Approx(degeneracy(r)).epsilon(1e-12));
        CHECK(cp(t) == doctest::Approx(cp(r)).epsilon(1e-12));
    }
}

TEST_SUITE_END();
