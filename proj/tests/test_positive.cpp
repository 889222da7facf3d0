#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bniep/certificate.hpp"
#include "bniep/positive.hpp"
#include "helpers.hpp"

using namespace bniep;
using bniep_test::random_bisym;
using bniep_test::spectrum_deviation;

TEST_CASE("rank-one lift fixtures") {
    Matrix single(1, 1);
    Matrix r1 = fiedler_perturb(single, 1.0);
    CHECK(r1(0, 0) == 1.0);

    Matrix path(2, 2);
    path(0, 1) = path(1, 0) = 1.0;
    Matrix r2 = fiedler_perturb(path, 2.0);
    CHECK(r2(0, 0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(r2(0, 1) == doctest::Approx(1.0).epsilon(1e-13));

    // two isolated vertices with roots 2 and 0
    Matrix split(2, 2);
    split(0, 0) = 2.0;
    Matrix r3 = fiedler_perturb(split, 1.0);
    CHECK(r3(0, 0) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(r3(1, 1) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(r3(0, 1) == doctest::Approx(std::sqrt(1.25)).epsilon(1e-13));
    Matrix sum = split;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) sum(i, j) += r3(i, j);
    CHECK(spectrum_deviation(sum, {3, 0}) < 1e-12);

    CHECK_THROWS(fiedler_perturb(split, 0.0));
    CHECK_THROWS(fiedler_perturb(split, -1.0));
}

TEST_CASE("rank-one lift moves only the top eigenvalue") {
    std::mt19937 rng(53);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        std::uniform_real_distribution<double> entry(0.0, 4.0);
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        std::uniform_real_distribution<double> eps_d(0.01, 2.0);
        Matrix s(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                s(i, j) = s(j, i) = coin(rng) < 0.5 ? 0.0 : entry(rng);
        const double eps = eps_d(rng);
        Matrix r = fiedler_perturb(s, eps);
        CHECK(r.min_entry() > 0.0);
        CHECK(r.is_symmetric_exact());

        std::vector<double> target = eigenvalues_of(s);
        target[0] += eps;
        Matrix sum = s;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) sum(i, j) += r(i, j);
        CHECK(spectrum_deviation(sum, target) < 1e-8);
    }
}

TEST_CASE("positive lift of bisymmetric matrices") {
    std::mt19937 rng(59);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 10;
        std::uniform_real_distribution<double> eps_d(0.01, 2.0);
        BisymMatrix q = random_bisym(rng, n, trial % 3 == 0 ? 0.7 : 0.2);
        const double eps = eps_d(rng);

        Construction lifted = positify(q, eps);
        CHECK(lifted.matrix.min_entry() > 0.0);
        CHECK(lifted.matrix.matrix().is_symmetric_exact());
        CHECK(lifted.matrix.matrix().is_persymmetric_exact());

        std::vector<double> target = eigenvalues_of(q.matrix());
        target[0] += eps;
        CHECK(spectrum_deviation(lifted.matrix.matrix(), target) < 1e-8);

        if (n >= 2) {
            // the difference-side half block is untouched up to one rounding
            // of the per-entry additions
            CbSplit before = cb_split(q);
            CbSplit after = cb_split(lifted.matrix);
            CHECK(bniep_test::max_entry_diff(before.minus_block, after.minus_block) < 1e-13);
        }
        CHECK(replay(lifted.certificate) == lifted.matrix);
    }
}

TEST_CASE("strict odd-partition construction") {
    Spectrum s{2, -1};
    Construction c = construct_positive_borobia(s, PartitionPlan::make(s, {{-1}}));
    CHECK(c.matrix(0, 0) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(c.matrix(0, 1) == doctest::Approx(1.5).epsilon(1e-13));
    CHECK(spectrum_deviation(c.matrix.matrix(), {2, -1}) < 1e-10);
    CHECK(replay(c.certificate) == c.matrix);

    Spectrum tight{1, -1};  // the sum clause holds with equality: nothing to spend
    CHECK_THROWS_AS(construct_positive_borobia(tight, PartitionPlan::make(tight, {{-1}})),
                    infeasible_error);

    Spectrum big{10, 2, -1, -2, -3, -4};
    PartitionPlan plan = PartitionPlan::make(big, {{-2, -3, -4}, {-1}});
    Construction pos = construct_positive_borobia(big, plan);
    CHECK(pos.matrix.min_entry() > 0.0);
    CHECK(spectrum_deviation(pos.matrix.matrix(), big.values()) < 1e-8);
}
