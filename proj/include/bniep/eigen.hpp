#ifndef BNIEP_EIGEN_HPP
#define BNIEP_EIGEN_HPP

#include <stdexcept>
#include <vector>

#include "bniep/matrix.hpp"

namespace bniep {

struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& what, double residual = 0.0)
        : std::runtime_error(what), residual(residual) {}
    double residual;
};

/// Eigenvalues sorted non-increasing with matching orthonormal eigenvector
/// columns.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    Matrix eigenvectors;  // column i pairs with eigenvalues[i]

    std::vector<double> column(std::size_t j) const {
        std::vector<double> v(eigenvectors.rows());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = eigenvectors(i, j);
        return v;
    }
};

/// Cyclic Jacobi with threshold sweeps. Unconditionally convergent on
/// symmetric input; throws numerical_error after the sweep cap.
EigenDecomposition symmetric_eigen(const Matrix& m, double tol = 1e-12);

/// Eigenvalues only, sorted non-increasing.
std::vector<double> eigenvalues_of(const Matrix& m, double tol = 1e-12);

}  // namespace bniep

#endif
