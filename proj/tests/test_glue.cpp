#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "bniep/core.hpp"
#include "bniep/eigen.hpp"
#include "bniep/glue.hpp"
#include "helpers.hpp"

using namespace bniep;
using bniep_test::random_bisym;
using bniep_test::spectrum_deviation;

namespace {

std::vector<double> tail_of(const BisymMatrix& q) {
    std::vector<double> eig = eigenvalues_of(q.matrix());
    eig.erase(eig.begin());
    return eig;
}

}  // namespace

TEST_CASE("three-block glue spectrum law") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t m = 1 + rng() % 4;
        const std::size_t n = 1 + rng() % 3;
        BisymMatrix a = random_bisym(rng, m);
        BisymMatrix b = random_bisym(rng, n);
        std::uniform_real_distribution<double> nn(0.0, 3.0);
        const double rho = nn(rng);
        const double xi = nn(rng);

        BisymMatrix glued = glue_three(a, b, rho, xi);
        REQUIRE(glued.order() == m + 2 * n);

        const double alpha1 = perron_pair(a).root;
        const double beta1 = perron_pair(b).root;
        Matrix chat(3, 3);
        chat(0, 0) = chat(2, 2) = beta1;
        chat(1, 1) = alpha1;
        chat(0, 1) = chat(1, 0) = chat(1, 2) = chat(2, 1) = rho;
        chat(0, 2) = chat(2, 0) = xi;

        std::vector<double> expected = eigenvalues_of(chat);
        for (double v : tail_of(a)) expected.push_back(v);
        std::vector<double> bt = tail_of(b);
        for (double v : bt) {
            expected.push_back(v);
            expected.push_back(v);
        }
        CHECK(spectrum_deviation(glued.matrix(), expected) < 1e-8);
    }
    CHECK_THROWS(glue_three(pair_matrix(1, 0), pair_matrix(1, 0), -1.0, 0.0));
}

TEST_CASE("parameterized glue replaces three eigenvalues") {
    std::mt19937 rng(37);
    int done = 0;
    while (done < 300) {
        const std::size_t m = 1 + rng() % 4;
        const std::size_t n = 1 + rng() % 3;
        BisymMatrix a = random_bisym(rng, m);
        BisymMatrix b = random_bisym(rng, n);
        const double alpha1 = perron_pair(a).root;
        const double beta1 = perron_pair(b).root;
        if (alpha1 < beta1) continue;
        std::uniform_real_distribution<double> pick(0.0, 1.0);
        const double pa = -3.0 * pick(rng);  // a <= 0 guarantees both preconditions
        const double pb = pa - 2.0 * pick(rng);
        ++done;

        BisymMatrix glued = glue_ab(a, b, pa, pb);
        std::vector<double> expected = {alpha1 - (pa + pb), beta1 + pa, beta1 + pb};
        for (double v : tail_of(a)) expected.push_back(v);
        std::vector<double> bt = tail_of(b);
        for (double v : bt) {
            expected.push_back(v);
            expected.push_back(v);
        }
        CHECK(spectrum_deviation(glued.matrix(), expected) < 1e-8);
    }
    CHECK_THROWS(glue_ab(pair_matrix(1, 0), pair_matrix(1, 0), -1.0, 0.5));  // b > a
    CHECK_THROWS(glue_ab(pair_matrix(1, 0), pair_matrix(1, 0), 1.0, 0.5));   // a + b > 0
}

TEST_CASE("epsilon transfer fixtures") {
    BisymMatrix q1 = pair_matrix(1, -1);
    BisymMatrix q2 = zero_bisym(1);

    BisymMatrix zero_eps = merge_transfer(q1, q2, 0.0);
    REQUIRE(zero_eps.order() == 3);
    CHECK(zero_eps(0, 2) == 1.0);
    CHECK(zero_eps(0, 1) == 0.0);
    CHECK(zero_eps(1, 1) == 0.0);
    CHECK(spectrum_deviation(zero_eps.matrix(), {1, 0, -1}) < 1e-12);

    BisymBuilder ones(2);
    ones.set(0, 0, 1.0);
    ones.set(0, 1, 1.0);
    BisymMatrix lifted = merge_transfer(ones.finish(), zero_bisym(1), 1.0);
    CHECK(spectrum_deviation(lifted.matrix(), {3, 0, -1}) < 1e-10);

    CHECK_THROWS(merge_transfer(zero_bisym(3), zero_bisym(5), 0.5));  // both odd
    CHECK_THROWS(merge_transfer(q1, q2, -0.1));
}

TEST_CASE("epsilon transfer moves mass between the top plus eigenvalues") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n1 = 2 + rng() % 5;
        std::size_t n2 = 2 + rng() % 5;
        if (n1 % 2 == 1 && n2 % 2 == 1) ++n2;
        BisymMatrix a = random_bisym(rng, n1, 0.3);
        BisymMatrix b = random_bisym(rng, n2, 0.3);
        const double atop = eigenvalues_of(cb_split(a).plus_block)[0];
        const double btop = eigenvalues_of(cb_split(b).plus_block)[0];
        if (atop < btop) std::swap(a, b);

        const double alpha0 = std::max(atop, btop);
        const double beta0 = std::min(atop, btop);
        std::uniform_real_distribution<double> eps_d(0.0, 2.0);
        const double eps = eps_d(rng);

        BisymMatrix merged = merge_transfer(a, b, eps);
        REQUIRE(merged.order() == a.order() + b.order());

        std::vector<double> expected = eigenvalues_of(a.matrix());
        for (double v : eigenvalues_of(b.matrix())) expected.push_back(v);
        // replace one copy of each top plus eigenvalue with the shifted pair
        auto drop = [&](double v) {
            auto it = std::min_element(expected.begin(), expected.end(),
                                       [&](double x, double y) {
                                           return std::fabs(x - v) < std::fabs(y - v);
                                       });
            expected.erase(it);
        };
        drop(alpha0);
        drop(beta0);
        expected.push_back(alpha0 + eps);
        expected.push_back(beta0 - eps);
        CHECK(spectrum_deviation(merged.matrix(), expected) < 1e-7);
    }
}

TEST_CASE("rank-S update") {
    // replace the Perron root 2 of a 2x2 with the eigenvalue 3 via B = [3]
    BisymMatrix qhat = pair_matrix(2, -2);
    Matrix x(2, 1);
    x(0, 0) = x(1, 0) = std::sqrt(0.5);
    Matrix b1(1, 1);
    b1(0, 0) = 3.0;
    BisymMatrix updated = rado_update(qhat, x, b1, {2.0});
    CHECK(spectrum_deviation(updated.matrix(), {3, -2}) < 1e-12);

    Matrix skew(2, 1);
    skew(0, 0) = 1.0;
    skew(1, 0) = 0.0;
    CHECK_THROWS(rado_update(qhat, skew, b1, {2.0}));  // not J-symmetric

    Matrix long_x(2, 1);
    long_x(0, 0) = long_x(1, 0) = 1.0;
    CHECK_THROWS(rado_update(qhat, long_x, b1, {2.0}));  // not unit norm
}

TEST_CASE("2x2 diagonal completion") {
    Matrix b = solve_2x2_diag(9, 5, 8, 6);
    CHECK(b(0, 0) == 8.0);
    CHECK(b(1, 1) == 6.0);
    CHECK(b(0, 1) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(spectrum_deviation(b, {9, 5}) < 1e-12);

    Matrix b2 = solve_2x2_diag(5, 1, 3, 3);
    CHECK(b2(0, 1) == doctest::Approx(2.0).epsilon(1e-14));

    CHECK_THROWS(solve_2x2_diag(9, 5, 8, 5));   // trace mismatch
    CHECK_THROWS(solve_2x2_diag(4, 2, 5, 1));   // no real off-diagonal
    CHECK_THROWS(solve_2x2_diag(9, 5, -8, 22)); // negative diagonal
}
