#include "bniep/glue.hpp"

#include <algorithm>
#include <cmath>

namespace bniep {

namespace {

const double kSqrt2 = std::sqrt(2.0);

/// Unit nonnegative top eigenvector of a nonnegative symmetric matrix. Scans
/// candidates tied at the top eigenvalue for one that is nonnegative after a
/// sign fix; tiny negative entries are clamped.
std::vector<double> nonneg_top_eigenvector(const Matrix& m, double tol = 1e-9) {
    const std::size_t n = m.rows();
    if (m.max_abs() == 0.0) return std::vector<double>(n, 1.0 / std::sqrt(double(n)));
    const EigenDecomposition d = symmetric_eigen(m);
    const double scale = std::max(1.0, m.max_abs());
    for (std::size_t cand = 0; cand < n; ++cand) {
        if (d.eigenvalues[cand] < d.eigenvalues[0] - tol * scale) break;
        std::vector<double> v = d.column(cand);
        double sum = 0.0;
        for (double x : v) sum += x;
        const double sign = (sum < 0.0) ? -1.0 : 1.0;
        bool ok = true;
        for (double& x : v) {
            x *= sign;
            if (x < -tol) {
                ok = false;
                break;
            }
            if (x < 0.0) x = 0.0;
        }
        if (ok) return v;
    }
    throw numerical_error("no nonnegative top eigenvector found");
}

struct MergeHalf {
    bool odd = false;
    Matrix a;                 // nonnegative half block
    Matrix jc;                // (JC), nonnegative
    std::vector<double> x;    // odd only: border
    double p = 0.0;           // odd only: center
    Matrix plus;              // full plus block (bordered when odd)
    std::vector<double> phi;  // unit nonnegative top eigenvector of plus
};

MergeHalf decompose_for_merge(const BisymMatrix& q) {
    MergeHalf h;
    const CantoniButlerForm f = cb_form(q);
    const CbSplit s = cb_split(q);
    const std::size_t m = f.a.rows();
    h.odd = f.odd;
    h.a = f.a;
    h.jc = Matrix(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) h.jc(i, j) = f.c(m - 1 - i, j);
    h.x = f.x;
    h.p = f.p;
    h.plus = s.plus_block;
    h.phi = nonneg_top_eigenvector(h.plus);
    return h;
}

}  // namespace

BisymMatrix glue_three(const BisymMatrix& a, const BisymMatrix& b, double rho, double xi) {
    if (rho < 0.0 || xi < 0.0) throw std::invalid_argument("glue_three: rho and xi must be >= 0");
    const std::size_t m = a.order();
    const std::size_t n = b.order();
    const std::vector<double> u1 = perron_pair(a).vector;
    const std::vector<double> v1 = perron_pair(b).vector;

    const std::size_t N = m + 2 * n;
    BisymBuilder builder(N);
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = i; j < N; ++j) {
            double val;
            if (j < n) {
                val = b(i, j);
            } else if (j < n + m) {
                val = (i < n) ? rho * v1[i] * u1[j - n] : a(i - n, j - n);
            } else {
                if (i < n)
                    val = xi * v1[i] * v1[j - n - m];
                else if (i < n + m)
                    val = rho * u1[i - n] * v1[j - n - m];
                else
                    val = b(i - n - m, j - n - m);
            }
            builder.set(i, j, val);
        }
    }
    return builder.finish(0.0);
}

BisymMatrix glue_ab(const BisymMatrix& a, const BisymMatrix& b, double pa, double pb) {
    if (pa < pb) throw std::invalid_argument("glue_ab: requires a >= b");
    if (pa + pb > 0.0) throw std::invalid_argument("glue_ab: requires a + b <= 0");
    const double alpha1 = perron_pair(a).root;
    const double beta1 = perron_pair(b).root;
    const double gap = alpha1 - beta1 - pa;
    double radicand = -gap * (pa + pb) / 2.0;
    if (radicand < 0.0) {
        const double scale = std::max({1.0, std::fabs(alpha1), std::fabs(beta1)});
        if (radicand < -1e-12 * scale)
            throw std::invalid_argument("glue_ab: requires alpha1 - beta1 >= a");
        radicand = 0.0;
    }
    return glue_three(a, b, std::sqrt(radicand), -pb);
}

BisymMatrix merge_transfer(const BisymMatrix& q1, const BisymMatrix& q2, double epsilon) {
    if (epsilon < 0.0) throw std::invalid_argument("merge_transfer: epsilon must be >= 0");
    if (q1.order() % 2 != 0 && q2.order() % 2 != 0)
        throw std::invalid_argument("merge_transfer: at least one order must be even");

    MergeHalf h1 = decompose_for_merge(q1);
    MergeHalf h2 = decompose_for_merge(q2);
    const double alpha0 = symmetric_eigen(h1.plus).eigenvalues[0];
    const double beta0 = symmetric_eigen(h2.plus).eigenvalues[0];
    const double scale = std::max({1.0, std::fabs(alpha0), std::fabs(beta0)});
    if (alpha0 < beta0 - 1e-9 * scale)
        throw std::invalid_argument("merge_transfer: requires Perron(q1) >= Perron(q2)");
    const double rho = std::sqrt(epsilon * std::max(0.0, alpha0 - beta0 + epsilon));

    if (!h1.odd && !h2.odd) {
        // even + even: couple the plus blocks along their Perron vectors
        const std::size_t m1 = h1.a.rows(), m2 = h2.a.rows();
        const std::size_t m = m1 + m2;
        CantoniButlerForm f;
        f.odd = false;
        f.a = Matrix(m, m);
        Matrix jc(m, m);
        for (std::size_t i = 0; i < m1; ++i)
            for (std::size_t j = 0; j < m1; ++j) {
                f.a(i, j) = h1.a(i, j);
                jc(i, j) = h1.jc(i, j);
            }
        for (std::size_t i = 0; i < m2; ++i)
            for (std::size_t j = 0; j < m2; ++j) {
                f.a(m1 + i, m1 + j) = h2.a(i, j);
                jc(m1 + i, m1 + j) = h2.jc(i, j);
            }
        for (std::size_t i = 0; i < m1; ++i)
            for (std::size_t j = 0; j < m2; ++j) {
                const double k = rho * h1.phi[i] * h2.phi[j] / 2.0;
                f.a(i, m1 + j) = k;
                f.a(m1 + j, i) = k;
                jc(i, m1 + j) = k;
                jc(m1 + j, i) = k;
            }
        f.c = Matrix(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) f.c(i, j) = jc(m - 1 - i, j);
        return cb_compose(f);
    }

    // one odd, one even: the odd one contributes the center entry and border;
    // its Perron vector of the bordered plus block splits as (c; psi)
    const MergeHalf& e = h1.odd ? h2 : h1;
    const MergeHalf& o = h1.odd ? h1 : h2;
    const std::size_t me = e.a.rows(), mo = o.a.rows();
    const double c0 = o.phi[0];
    const std::vector<double> psi(o.phi.begin() + 1, o.phi.end());

    const std::size_t m = me + mo;
    CantoniButlerForm f;
    f.odd = true;
    f.p = o.p;
    f.a = Matrix(m, m);
    Matrix jc(m, m);
    f.x.assign(m, 0.0);
    // half-block order: even part first, odd part second
    for (std::size_t i = 0; i < me; ++i) {
        f.x[i] = rho * c0 * e.phi[i] / kSqrt2;
        for (std::size_t j = 0; j < me; ++j) {
            f.a(i, j) = e.a(i, j);
            jc(i, j) = e.jc(i, j);
        }
    }
    for (std::size_t i = 0; i < mo; ++i) {
        f.x[me + i] = o.x[i];
        for (std::size_t j = 0; j < mo; ++j) {
            f.a(me + i, me + j) = o.a(i, j);
            jc(me + i, me + j) = o.jc(i, j);
        }
    }
    for (std::size_t i = 0; i < me; ++i)
        for (std::size_t j = 0; j < mo; ++j) {
            const double k = rho * e.phi[i] * psi[j] / 2.0;
            f.a(i, me + j) = k;
            f.a(me + j, i) = k;
            jc(i, me + j) = k;
            jc(me + j, i) = k;
        }
    f.c = Matrix(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) f.c(i, j) = jc(m - 1 - i, j);
    return cb_compose(f);
}

BisymMatrix rado_update(const BisymMatrix& qhat, const Matrix& x, const Matrix& b,
                        const std::vector<double>& omega, double tol) {
    const std::size_t n = qhat.order();
    const std::size_t s = omega.size();
    if (x.rows() != n || x.cols() != s)
        throw std::invalid_argument("rado_update: X must be order x S");
    if (b.rows() != s || b.cols() != s || !b.is_symmetric_exact())
        throw std::invalid_argument("rado_update: B must be S x S symmetric");
    for (std::size_t k = 0; k < s; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (std::fabs(x(i, k) - x(n - 1 - i, k)) > tol)
                throw std::invalid_argument("rado_update: X columns must be J-symmetric");
    for (std::size_t k = 0; k < s; ++k)
        for (std::size_t l = k; l < s; ++l) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += x(i, k) * x(i, l);
            if (std::fabs(dot - (k == l ? 1.0 : 0.0)) > 1e-6)
                throw std::invalid_argument("rado_update: X columns must be orthonormal");
        }

    Matrix delta = b;  // B - Omega
    for (std::size_t k = 0; k < s; ++k) delta(k, k) -= omega[k];

    BisymBuilder builder(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double v = qhat(i, j);
            for (std::size_t k = 0; k < s; ++k)
                for (std::size_t l = 0; l < s; ++l) v += x(i, k) * delta(k, l) * x(j, l);
            builder.set(i, j, v);
        }
    return builder.finish(tol);
}

Matrix solve_2x2_diag(double lam1, double lam2, double w1, double w2, double tol) {
    if (w1 < 0.0 || w2 < 0.0)
        throw std::invalid_argument("solve_2x2_diag: diagonal must be nonnegative");
    const double scale = std::max({1.0, std::fabs(lam1), std::fabs(lam2)});
    if (std::fabs((w1 + w2) - (lam1 + lam2)) > tol * scale)
        throw std::invalid_argument("solve_2x2_diag: trace mismatch");
    double c2 = w1 * w2 - lam1 * lam2;
    if (c2 < 0.0) {
        if (c2 < -tol * scale * scale)
            throw std::invalid_argument("solve_2x2_diag: no nonnegative off-diagonal exists");
        c2 = 0.0;
    }
    Matrix m(2, 2);
    m(0, 0) = w1;
    m(1, 1) = w2;
    m(0, 1) = m(1, 0) = std::sqrt(c2);
    return m;
}

}  // namespace bniep
