#include "bniep/matrix.hpp"

#include <cmath>
#include <string>

namespace bniep {

BisymMatrix BisymMatrix::from_matrix(const Matrix& m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw std::invalid_argument("BisymMatrix: matrix must be square and nonempty");
    if (!m.is_symmetric_exact())
        throw std::invalid_argument("BisymMatrix: not symmetric");
    if (!m.is_persymmetric_exact())
        throw std::invalid_argument("BisymMatrix: not persymmetric");
    Matrix clamped = m;
    for (double& v : clamped.data()) {
        if (std::isnan(v)) throw std::invalid_argument("BisymMatrix: NaN entry");
        if (v < 0.0) {
            if (v < -tol)
                throw std::invalid_argument("BisymMatrix: negative entry " + std::to_string(v));
            v = 0.0;
        }
    }
    return BisymMatrix(std::move(clamped));
}

BisymMatrix BisymBuilder::finish(double tol) {
    for (double& v : mat_.data()) {
        if (std::isnan(v)) throw std::runtime_error("bisymmetric assembly produced NaN entry");
        if (v < 0.0) {
            if (v < -tol)
                throw std::runtime_error("bisymmetric assembly produced negative entry " +
                                         std::to_string(v));
            v = 0.0;
        }
    }
    return BisymMatrix(std::move(mat_));
}

}  // namespace bniep
