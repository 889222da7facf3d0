#ifndef BNIEP_TEST_HELPERS_HPP
#define BNIEP_TEST_HELPERS_HPP

#include <cmath>
#include <random>
#include <vector>

#include "bniep/core.hpp"
#include "bniep/eigen.hpp"
#include "bniep/matrix.hpp"
#include "bniep/spectrum.hpp"

namespace bniep_test {

/// Random nonnegative bisymmetric matrix; zero_prob controls sparsity (and
/// hence reducibility of the plus block).
inline bniep::BisymMatrix random_bisym(std::mt19937& rng, std::size_t n, double zero_prob = 0.0) {
    std::uniform_real_distribution<double> entry(0.0, 5.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    bniep::BisymBuilder b(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            b.set(i, j, coin(rng) < zero_prob ? 0.0 : entry(rng));
    return b.finish(0.0);
}

/// Max deviation between the matrix spectrum and a target list (both sorted).
inline double spectrum_deviation(const bniep::Matrix& m, const std::vector<double>& target) {
    std::vector<double> eig = bniep::eigenvalues_of(m);
    std::vector<double> want = target;
    std::sort(want.begin(), want.end(), std::greater<double>());
    double dev = 0.0;
    for (std::size_t i = 0; i < eig.size(); ++i)
        dev = std::max(dev, std::fabs(eig[i] - want[i]));
    return dev;
}

inline double max_entry_diff(const bniep::Matrix& a, const bniep::Matrix& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            d = std::max(d, std::fabs(a(i, j) - b(i, j)));
    return d;
}

}  // namespace bniep_test

#endif
