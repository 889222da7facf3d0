#ifndef BNIEP_MATRIX_HPP
#define BNIEP_MATRIX_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace bniep {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& b) const {
        if (cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
        Matrix c(rows_, b.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const double a = (*this)(i, k);
                if (a == 0.0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a * b(k, j);
            }
        return c;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : data_) {
            const double a = v < 0 ? -v : v;
            if (a > m) m = a;
        }
        return m;
    }

    double min_entry() const {
        if (data_.empty()) return 0.0;
        double m = data_[0];
        for (double v : data_)
            if (v < m) m = v;
        return m;
    }

    double trace() const {
        double t = 0.0;
        for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
        return t;
    }

    bool is_symmetric_exact() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    /// entries[i][j] == entries[n-1-j][n-1-i], i.e. JAJ = A for symmetric input.
    bool is_persymmetric_exact() const {
        if (rows_ != cols_) return false;
        const std::size_t n = rows_;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if ((*this)(i, j) != (*this)(n - 1 - j, n - 1 - i)) return false;
        return true;
    }

private:
    std::size_t rows_, cols_;
    std::vector<double> data_;
};

/// Square matrix with A^T = A and JAJ = A, entrywise nonnegative up to the
/// stated tolerance of the producing operation. Symmetry and persymmetry are
/// structural: builders write a fundamental domain and mirror it, so both
/// invariants hold bit-exactly.
class BisymMatrix {
public:
    std::size_t order() const { return mat_.rows(); }
    double operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }
    const Matrix& matrix() const { return mat_; }

    double min_entry() const { return mat_.min_entry(); }
    double trace() const { return mat_.trace(); }
    bool operator==(const BisymMatrix& o) const { return mat_ == o.mat_; }

    /// Validates an arbitrary matrix against the structural invariants and
    /// wraps it. Symmetry/persymmetry must hold exactly; entries >= -tol.
    static BisymMatrix from_matrix(const Matrix& m, double tol = 0.0);

private:
    explicit BisymMatrix(Matrix m) : mat_(std::move(m)) {}
    Matrix mat_;
    friend class BisymBuilder;
};

/// Writes the fundamental domain (i <= j, i + j <= n-1) and mirrors every
/// entry to its three images, so the result is bisymmetric bit-exactly.
class BisymBuilder {
public:
    explicit BisymBuilder(std::size_t n) : mat_(n, n) {}

    void set(std::size_t i, std::size_t j, double v) {
        const std::size_t n = mat_.rows();
        mat_(i, j) = v;
        mat_(j, i) = v;
        mat_(n - 1 - j, n - 1 - i) = v;
        mat_(n - 1 - i, n - 1 - j) = v;
    }

    double get(std::size_t i, std::size_t j) const { return mat_(i, j); }
    std::size_t order() const { return mat_.rows(); }

    /// Fails on any entry below -tol; entries in [-tol, 0) are clamped to 0.
    BisymMatrix finish(double tol = 0.0);

private:
    Matrix mat_;
};

}  // namespace bniep

#endif
