#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bniep/core.hpp"
#include "bniep/eigen.hpp"
#include "helpers.hpp"

using namespace bniep;
using bniep_test::random_bisym;
using bniep_test::spectrum_deviation;

TEST_CASE("matrix primitives") {
    Matrix m(2, 2);
    m(0, 0) = 2;
    m(0, 1) = 1;
    m(1, 0) = 1;
    m(1, 1) = 2;
    CHECK(m.is_symmetric_exact());
    CHECK(m.is_persymmetric_exact());
    CHECK(m.trace() == 4.0);
    CHECK(m.max_abs() == 2.0);
    CHECK(m.min_entry() == 1.0);

    Matrix p(2, 2);
    p(0, 0) = 1;
    p(0, 1) = 2;
    p(1, 0) = 3;
    p(1, 1) = 4;
    CHECK_FALSE(p.is_symmetric_exact());
}

TEST_CASE("bisym builder mirrors the fundamental domain") {
    BisymBuilder b(3);
    b.set(0, 0, 1.0);
    b.set(0, 1, 2.0);
    b.set(0, 2, 3.0);
    b.set(1, 1, 4.0);
    BisymMatrix q = b.finish();
    CHECK(q(2, 2) == 1.0);
    CHECK(q(1, 2) == 2.0);
    CHECK(q(2, 1) == 2.0);
    CHECK(q(2, 0) == 3.0);
    CHECK(q.matrix().is_symmetric_exact());
    CHECK(q.matrix().is_persymmetric_exact());
}

TEST_CASE("from_matrix rejects violations") {
    Matrix bad(2, 2);
    bad(0, 0) = 1;
    bad(0, 1) = 2;
    bad(1, 0) = 2;
    bad(1, 1) = 3;  // symmetric but not persymmetric
    CHECK_THROWS(BisymMatrix::from_matrix(bad));

    Matrix neg(2, 2);
    neg(0, 1) = neg(1, 0) = -1.0;
    CHECK_THROWS(BisymMatrix::from_matrix(neg, 0.0));
    CHECK_NOTHROW(BisymMatrix::from_matrix(neg, 1.0));
}

TEST_CASE("jacobi eigensolver against closed forms") {
    // [[a, b], [b, a]] has eigenvalues a ± b
    Matrix m(2, 2);
    m(0, 0) = m(1, 1) = 3.0;
    m(0, 1) = m(1, 0) = 2.0;
    std::vector<double> e = eigenvalues_of(m);
    CHECK(e[0] == doctest::Approx(5.0).epsilon(1e-13));
    CHECK(e[1] == doctest::Approx(1.0).epsilon(1e-13));

    // eigenvectors are orthonormal and reproduce A = V D V^T
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng() % 9;
        std::uniform_real_distribution<double> entry(-3.0, 3.0);
        Matrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = entry(rng);
        EigenDecomposition d = symmetric_eigen(a);
        for (std::size_t i = 0; i + 1 < n; ++i) CHECK(d.eigenvalues[i] >= d.eigenvalues[i + 1]);
        Matrix diag(n, n);
        for (std::size_t i = 0; i < n; ++i) diag(i, i) = d.eigenvalues[i];
        Matrix rebuilt = d.eigenvectors * diag * d.eigenvectors.transposed();
        CHECK(bniep_test::max_entry_diff(rebuilt, a) < 1e-10);
    }
}

TEST_CASE("cantoni-butler form round-trips") {
    std::mt19937 rng(11);
    for (std::size_t n = 2; n <= 9; ++n) {
        BisymMatrix q = random_bisym(rng, n);
        CantoniButlerForm f = cb_form(q);
        BisymMatrix back = cb_compose(f);
        CHECK(back == q);
    }
}

TEST_CASE("split blocks carry the full spectrum") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng() % 11;  // 2..12
        BisymMatrix q = random_bisym(rng, n);
        CbSplit s = cb_split(q);
        std::vector<double> merged = eigenvalues_of(s.minus_block);
        for (double v : eigenvalues_of(s.plus_block)) merged.push_back(v);
        CHECK(spectrum_deviation(q.matrix(), merged) < 1e-9);
    }
}

TEST_CASE("perron pair") {
    BisymBuilder b(2);
    b.set(0, 0, 0.0);
    b.set(0, 1, 4.0);
    PerronPair p = perron_pair(b.finish());
    CHECK(p.root == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(p.vector[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-13));
    CHECK(p.vector[0] == p.vector[1]);  // bit-exact J-symmetry

    PerronPair z = perron_pair(zero_bisym(4));
    CHECK(z.root == 0.0);
    CHECK(z.vector[0] == doctest::Approx(0.5));

    std::mt19937 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng() % 9;
        BisymMatrix q = random_bisym(rng, n);
        PerronPair pp = perron_pair(q);
        // residual ||Qv - rho v||
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += q(i, j) * pp.vector[j];
            res = std::max(res, std::fabs(acc - pp.root * pp.vector[i]));
        }
        CHECK(res < 1e-8);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(pp.vector[i] >= 0.0);
            CHECK(pp.vector[i] == pp.vector[n - 1 - i]);
        }
    }
}

TEST_CASE("pair, nest and center insert") {
    BisymMatrix p = pair_matrix(3.0, -1.0);
    CHECK(p(0, 0) == 1.0);
    CHECK(p(0, 1) == 2.0);
    CHECK_THROWS(pair_matrix(1.0, -2.0));

    BisymMatrix nested = nest(p, pair_matrix(2.0, 1.0));
    CHECK(nested.order() == 4);
    CHECK(spectrum_deviation(nested.matrix(), {3, 2, 1, -1}) < 1e-12);
    CHECK(nested(0, 1) == 0.0);

    BisymMatrix odd = center_insert(pair_matrix(1.0, -1.0), 0.0);
    CHECK(odd.order() == 3);
    CHECK(odd(1, 1) == 0.0);
    CHECK(odd(0, 2) == 1.0);
    CHECK(spectrum_deviation(odd.matrix(), {1, 0, -1}) < 1e-12);

    std::mt19937 rng(19);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + 2 * (rng() % 4);
        BisymMatrix q = random_bisym(rng, n);
        std::uniform_real_distribution<double> val(0.0, 4.0);
        const double v = val(rng);
        std::vector<double> target = eigenvalues_of(q.matrix());
        target.push_back(v);
        BisymMatrix grown = center_insert(q, v);
        CHECK(spectrum_deviation(grown.matrix(), target) < 1e-9);
    }
}

TEST_CASE("verification report") {
    BisymMatrix q = pair_matrix(3.0, 1.0);
    VerificationReport r = verify_realization(q, Spectrum{3, 1});
    CHECK(r.pass);
    CHECK(r.is_symmetric);
    CHECK(r.is_persymmetric);
    CHECK(r.spectrum_deviation < 1e-12);

    VerificationReport wrong = verify_realization(q, Spectrum{3, 2});
    CHECK_FALSE(wrong.pass);

    Matrix notpersym(2, 2);
    notpersym(0, 0) = 1;
    notpersym(1, 1) = 3;
    notpersym(0, 1) = notpersym(1, 0) = 0;
    VerificationReport np = verify_matrix(notpersym, Spectrum{3, 1});
    CHECK_FALSE(np.pass);
    CHECK(np.is_symmetric);
    CHECK_FALSE(np.is_persymmetric);
}

TEST_CASE("spectrum conservation under composition") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + rng() % 11;
        BisymMatrix q = random_bisym(rng, n, 0.2);
        std::vector<double> eig = eigenvalues_of(q.matrix());
        VerificationReport r = verify_realization(q, Spectrum(eig), 1e-8);
        CHECK(r.pass);
    }
}
