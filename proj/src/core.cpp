#include "bniep/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bniep {

namespace {

const double kSqrt2 = std::sqrt(2.0);

bool c_block_valid(const Matrix& c) {
    // C^T == JCJ entrywise
    const std::size_t m = c.rows();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (c(j, i) != c(m - 1 - i, m - 1 - j)) return false;
    return true;
}

}  // namespace

CantoniButlerForm cb_form(const BisymMatrix& q) {
    const std::size_t n = q.order();
    const std::size_t m = n / 2;
    CantoniButlerForm f;
    f.odd = (n % 2 != 0);
    f.a = Matrix(m, m);
    f.c = Matrix(m, m);
    const std::size_t lower = f.odd ? m + 1 : m;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            f.a(i, j) = q(i, j);
            f.c(i, j) = q(lower + i, j);
        }
    if (f.odd) {
        f.x.resize(m);
        for (std::size_t i = 0; i < m; ++i) f.x[i] = q(i, m);
        f.p = q(m, m);
    }
    return f;
}

BisymMatrix cb_compose(const CantoniButlerForm& parts) {
    const std::size_t m = parts.a.rows();
    if (parts.a.cols() != m || parts.c.rows() != m || parts.c.cols() != m)
        throw std::invalid_argument("cb_compose: A and C must be square of equal order");
    if (!parts.a.is_symmetric_exact()) throw std::invalid_argument("cb_compose: A not symmetric");
    if (!c_block_valid(parts.c)) throw std::invalid_argument("cb_compose: C^T != JCJ");
    if (parts.odd && parts.x.size() != m)
        throw std::invalid_argument("cb_compose: x size mismatch");

    const std::size_t n = parts.odd ? 2 * m + 1 : 2 * m;
    if (n == 0) throw std::invalid_argument("cb_compose: empty form");
    const std::size_t lower = parts.odd ? m + 1 : m;
    Matrix q(n, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            q(i, j) = parts.a(i, j);                                  // A
            q(lower + i, lower + j) = parts.a(m - 1 - i, m - 1 - j);  // JAJ
            q(lower + i, j) = parts.c(i, j);                          // C
            q(i, lower + j) = parts.c(j, i);                          // C^T (== JCJ)
        }
    if (parts.odd) {
        for (std::size_t i = 0; i < m; ++i) {
            q(i, m) = parts.x[i];
            q(m, i) = parts.x[i];
            q(n - 1 - i, m) = parts.x[i];
            q(m, n - 1 - i) = parts.x[i];
        }
        q(m, m) = parts.p;
    }
    return BisymMatrix::from_matrix(q, 0.0);
}

CbSplit cb_split(const BisymMatrix& q) {
    const CantoniButlerForm f = cb_form(q);
    const std::size_t m = f.a.rows();
    CbSplit s;
    s.minus_block = Matrix(m, m);
    Matrix plus_core(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const double jc = f.c(m - 1 - i, j);  // (JC)(i,j)
            s.minus_block(i, j) = f.a(i, j) - jc;
            plus_core(i, j) = f.a(i, j) + jc;
        }
    if (!f.odd) {
        s.plus_block = std::move(plus_core);
    } else {
        s.plus_block = Matrix(m + 1, m + 1);
        s.plus_block(0, 0) = f.p;
        for (std::size_t i = 0; i < m; ++i) {
            s.plus_block(0, i + 1) = kSqrt2 * f.x[i];
            s.plus_block(i + 1, 0) = kSqrt2 * f.x[i];
            for (std::size_t j = 0; j < m; ++j) s.plus_block(i + 1, j + 1) = plus_core(i, j);
        }
    }
    return s;
}

PerronPair perron_pair(const BisymMatrix& q, double tol) {
    const std::size_t n = q.order();
    PerronPair out;

    if (q.matrix().max_abs() == 0.0) {
        // degenerate: every unit J-symmetric nonnegative vector qualifies
        out.root = 0.0;
        out.vector.assign(n, 1.0 / std::sqrt(double(n)));
        return out;
    }

    const EigenDecomposition d = symmetric_eigen(q.matrix());
    out.root = d.eigenvalues[0];

    const double scale = std::max(1.0, q.matrix().max_abs());
    for (std::size_t cand = 0; cand < n; ++cand) {
        if (d.eigenvalues[cand] < out.root - tol * scale) break;
        std::vector<double> v = d.column(cand);
        // Lemma-style symmetrization (v + Jv)/2; mirrored entries are the
        // same float expression, so Jw = w holds bit-exactly.
        std::vector<double> w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = (v[i] + v[n - 1 - i]) / 2.0;
        double norm2 = 0.0;
        for (double wi : w) norm2 += wi * wi;
        if (norm2 < 1e-12) continue;  // J-antisymmetric candidate; try the next one
        const double norm = std::sqrt(norm2);
        double sum = 0.0;
        for (double wi : w) sum += wi;
        const double sign = (sum < 0.0) ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = sign * w[i] / norm;
            if (w[i] < 0.0) {
                if (w[i] < -tol)
                    throw numerical_error("perron_pair: Perron vector entry below -tol", w[i]);
                w[i] = 0.0;
            }
        }
        // re-mirror after clamping (clamp can fire on one side of a tiny pair)
        for (std::size_t i = 0; i < n / 2; ++i) w[n - 1 - i] = w[i];
        out.vector = std::move(w);
        return out;
    }
    throw numerical_error("perron_pair: no J-symmetric top eigenvector found");
}

VerificationReport verify_matrix(const Matrix& q, const Spectrum& target, double tol) {
    if (q.rows() != target.size())
        throw std::invalid_argument("verify: order differs from spectrum length");
    VerificationReport r;
    r.tol_used = tol;
    r.is_symmetric = q.is_symmetric_exact();
    r.is_persymmetric = q.is_persymmetric_exact();
    r.min_entry = q.min_entry();

    std::vector<double> computed;
    if (r.is_symmetric) {
        computed = eigenvalues_of(q);
    } else {
        // symmetrize just to get a spectrum estimate for the report
        Matrix sym(q.rows(), q.cols());
        for (std::size_t i = 0; i < q.rows(); ++i)
            for (std::size_t j = 0; j < q.cols(); ++j) sym(i, j) = (q(i, j) + q(j, i)) / 2.0;
        computed = eigenvalues_of(sym);
    }
    double dev = 0.0;
    for (std::size_t i = 0; i < computed.size(); ++i)
        dev = std::max(dev, std::fabs(computed[i] - target[i]));
    r.spectrum_deviation = dev;
    r.pass = r.is_symmetric && r.is_persymmetric && r.min_entry >= -tol && dev <= tol;
    return r;
}

VerificationReport verify_realization(const BisymMatrix& q, const Spectrum& target, double tol) {
    return verify_matrix(q.matrix(), target, tol);
}

BisymMatrix nest(const BisymMatrix& outer_even, const BisymMatrix& inner) {
    if (outer_even.order() % 2 != 0)
        throw std::invalid_argument("nest: outer matrix must have even order");
    const std::size_t h = outer_even.order() / 2;
    const std::size_t k = inner.order();
    const std::size_t n = 2 * h + k;
    Matrix q(n, n);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j) {
            q(i, j) = outer_even(i, j);
            q(i, h + k + j) = outer_even(i, h + j);
            q(h + k + i, j) = outer_even(h + i, j);
            q(h + k + i, h + k + j) = outer_even(h + i, h + j);
        }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) q(h + i, h + j) = inner(i, j);
    return BisymMatrix::from_matrix(q, 0.0);
}

BisymMatrix pair_matrix(double hi, double lo) {
    if (hi < lo) std::swap(hi, lo);
    if (hi + lo < 0.0)
        throw std::invalid_argument("pair_matrix: hi + lo must be nonnegative");
    BisymBuilder b(2);
    b.set(0, 0, (hi + lo) / 2.0);
    b.set(0, 1, (hi - lo) / 2.0);
    return b.finish(0.0);
}

BisymMatrix nest_pair(double hi, double lo, const BisymMatrix& inner) {
    return nest(pair_matrix(hi, lo), inner);
}

BisymMatrix center_insert(const BisymMatrix& q, double value) {
    if (value < 0.0) throw std::invalid_argument("center_insert: negative value");
    const std::size_t n = q.order();
    if (n % 2 == 0) {
        CantoniButlerForm f = cb_form(q);
        f.odd = true;
        f.x.assign(n / 2, 0.0);
        f.p = value;
        return cb_compose(f);
    }
    // odd order: recombine half-size blocks so the extra eigenvalue joins the
    // minus side; entries are averages and can in principle go negative,
    // which from_matrix rejects
    const CbSplit s = cb_split(q);
    const std::size_t h = s.plus_block.rows();  // == n/2 + 1
    Matrix minus(h, h);
    for (std::size_t i = 0; i + 1 < h; ++i)
        for (std::size_t j = 0; j + 1 < h; ++j) minus(i, j) = s.minus_block(i, j);
    minus(h - 1, h - 1) = value;

    Matrix a(h, h), c(h, h);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j) {
            a(i, j) = (s.plus_block(i, j) + minus(i, j)) / 2.0;
            // JC = (plus - minus)/2
            c(i, j) = (s.plus_block(h - 1 - i, j) - minus(h - 1 - i, j)) / 2.0;
        }
    CantoniButlerForm f;
    f.odd = false;
    f.a = std::move(a);
    f.c = std::move(c);
    return cb_compose(f);
}

BisymMatrix zero_bisym(std::size_t n) {
    if (n == 0) throw std::invalid_argument("zero_bisym: empty order");
    return BisymMatrix::from_matrix(Matrix(n, n), 0.0);
}

BisymMatrix scalar_bisym(double value) {
    if (value < 0.0) throw std::invalid_argument("scalar_bisym: negative value");
    Matrix m(1, 1);
    m(0, 0) = value;
    return BisymMatrix::from_matrix(m, 0.0);
}

}  // namespace bniep
