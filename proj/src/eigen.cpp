#include "bniep/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bniep {

namespace {

double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
}

}  // namespace

EigenDecomposition symmetric_eigen(const Matrix& m, double tol) {
    const std::size_t n = m.rows();
    if (n == 0 || m.cols() != n) throw std::invalid_argument("symmetric_eigen: square input required");
    if (!m.is_symmetric_exact()) throw std::invalid_argument("symmetric_eigen: input not symmetric");

    Matrix a = m;
    Matrix v = Matrix::identity(n);

    const double scale = std::max(1.0, m.max_abs());
    const int max_sweeps = 100;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        const double off = off_diagonal_norm(a);
        if (off <= tol * scale) break;
        // threshold keeps early sweeps from chasing negligible entries
        const double threshold = (sweep < 3) ? 0.2 * off * off / double(n * n) : 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                if (std::fabs(apq) <= threshold && sweep < 3) continue;
                const double app = a(p, p);
                const double aqq = a(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                double t;
                if (std::fabs(theta) > 1e18) {
                    t = 1.0 / (2.0 * theta);
                } else {
                    t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i != p && i != q) {
                        const double aip = a(i, p);
                        const double aiq = a(i, q);
                        a(i, p) = aip - s * (aiq + tau * aip);
                        a(p, i) = a(i, p);
                        a(i, q) = aiq + s * (aip - tau * aiq);
                        a(q, i) = a(i, q);
                    }
                    const double vip = v(i, p);
                    const double viq = v(i, q);
                    v(i, p) = vip - s * (viq + tau * vip);
                    v(i, q) = viq + s * (vip - tau * viq);
                }
            }
        }
    }
    if (sweep == max_sweeps) {
        const double off = off_diagonal_norm(a);
        if (off > tol * scale)
            throw numerical_error("Jacobi eigensolver did not converge", off);
    }

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    EigenDecomposition d;
    d.eigenvalues.resize(n);
    d.eigenvectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        d.eigenvalues[j] = a(idx[j], idx[j]);
        for (std::size_t i = 0; i < n; ++i) d.eigenvectors(i, j) = v(i, idx[j]);
    }
    return d;
}

std::vector<double> eigenvalues_of(const Matrix& m, double tol) {
    return symmetric_eigen(m, tol).eigenvalues;
}

}  // namespace bniep
