#include "bniep/diagonal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bniep/glue.hpp"

namespace bniep {

namespace {

constexpr double kTol = 1e-12;

double clamp_radicand(double r, double scale) {
    if (r >= 0.0) return r;
    if (r < -kTol * scale * scale) throw numerical_error("diagonal: negative radicand", r);
    return 0.0;
}

/// Wraps a ring (value `ring` on the outer diagonal, `corner` in the outer
/// anti-diagonal corners, coupling rho along the inner Perron vector).
BisymMatrix ring_wrap(const BisymMatrix& inner, double ring, double corner, double rho) {
    return glue_three(inner, scalar_bisym(ring), rho, std::max(0.0, corner));
}

/// The recursion builds rings outermost-first from a_1, so the raw result has
/// a_1 on the outside; the prescription reads center-outward. Reversing the
/// ring order is a permutation similarity that commutes with J, so symmetry,
/// persymmetry and the spectrum survive bit-exactly.
BisymMatrix reverse_rings(const BisymMatrix& q, std::size_t m) {
    if (m <= 1) return q;
    const std::size_t n = q.order();
    std::vector<std::size_t> pi(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i < m)
            pi[i] = m - 1 - i;
        else if (i <= n - 1 - m)
            pi[i] = i;
        else
            pi[i] = n - 1 - (m - 1 - (n - 1 - i));
    }
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = q(pi[i], pi[j]);
    return BisymMatrix::from_matrix(out, 0.0);
}

struct OddWitness {
    std::vector<std::size_t> j;  // j_k per level, 1-based into the lambda list
};

ConditionVerdict check_odd(const std::vector<double>& lam, const std::vector<double>& a,
                           OddWitness& w) {
    ConditionVerdict v;
    v.name = "diagonal-odd";
    const std::size_t m = a.size() - 1;
    const double scale = std::max(1.0, std::fabs(lam[0]));
    const double slack = kTol * scale;

    for (double ai : a)
        if (ai < 0.0) {
            v.detail = "diagonal entry negative";
            return v;
        }

    double lam_prefix = lam[0];  // sum of lam[0..2(k-1)] as k advances
    double a_prefix = 0.0;       // sum of a[1..k]
    for (std::size_t k = 1; k <= m; ++k) {
        a_prefix += a[k];
        bool found = false;
        for (std::size_t jk = 2 * k - 1; jk <= 2 * k; ++jk) {
            if (a[k] + slack < lam[jk]) continue;
            if (lam_prefix + lam[jk] + slack < 2.0 * a_prefix) continue;
            w.j.push_back(jk);
            found = true;
            break;
        }
        if (!found) {
            std::ostringstream os;
            os << "first condition fails at k=" << k;
            v.detail = os.str();
            return v;
        }
        if (2.0 * a[k] + slack < lam[2 * k - 1] + lam[2 * k]) {
            std::ostringstream os;
            os << "second condition fails at k=" << k;
            v.detail = os.str();
            return v;
        }
        lam_prefix += lam[2 * k - 1] + lam[2 * k];
    }
    double trace = a[0];
    for (std::size_t k = 1; k <= m; ++k) trace += 2.0 * a[k];
    double lam_sum = 0.0;
    for (double x : lam) lam_sum += x;
    if (std::fabs(lam_sum - trace) > slack) {
        std::ostringstream os;
        os << "trace law fails (spectrum sum " << lam_sum << ", diagonal sum " << trace << ")";
        v.detail = os.str();
        return v;
    }
    v.holds = true;
    return v;
}

ConditionVerdict check_even(const std::vector<double>& lam, const std::vector<double>& a) {
    ConditionVerdict v;
    v.name = "diagonal-even";
    const std::size_t m = a.size() - 1;
    const double scale = std::max(1.0, std::fabs(lam[0]));
    const double slack = kTol * scale;

    for (double ai : a)
        if (ai < 0.0) {
            v.detail = "diagonal entry negative";
            return v;
        }
    for (std::size_t i = 1; i + 1 <= m; ++i)
        if (a[i] + slack < a[i + 1]) {
            v.detail = "prescription not non-increasing in a_1..a_m";
            return v;
        }
    for (std::size_t i = 1; i <= m; ++i)
        if (a[i] + slack < lam[2 * i - 1]) {
            std::ostringstream os;
            os << "first condition fails at i=" << i;
            v.detail = os.str();
            return v;
        }
    double lam_prefix = lam[0];
    for (std::size_t k = 1; k + 1 <= 2 * m; ++k) {  // k = 1..2m-1
        lam_prefix += lam[k];
        double rhs = 0.0;
        for (std::size_t i = 1; i <= (k + 2) / 2; ++i) rhs += a[i];
        for (std::size_t i = 1; i <= (k + 1) / 2; ++i) rhs += a[i];
        if (lam_prefix + slack < rhs) {
            std::ostringstream os;
            os << "second condition fails at k=" << k;
            v.detail = os.str();
            return v;
        }
    }
    double trace = 0.0;
    for (double ai : a) trace += 2.0 * ai;
    double lam_sum = 0.0;
    for (double x : lam) lam_sum += x;
    if (std::fabs(lam_sum - trace) > slack) {
        std::ostringstream os;
        os << "trace law fails (spectrum sum " << lam_sum << ", diagonal sum " << trace << ")";
        v.detail = os.str();
        return v;
    }
    v.holds = true;
    return v;
}

BisymMatrix build_odd(const std::vector<double>& lam, const std::vector<double>& a,
                      const std::vector<std::size_t>& j) {
    const std::size_t m = a.size() - 1;
    const double scale = std::max(1.0, std::fabs(lam[0]));
    if (m == 0) return scalar_bisym(a[0]);
    if (m == 1) return construct_diag3(lam[0], lam[1], lam[2], a[0], a[1]);

    const double folded = lam[0] + lam[1] + lam[2] - 2.0 * a[1];
    if (folded < lam[3] - kTol * scale)
        throw numerical_error("diagonal: recursion lost dominance", lam[3] - folded);
    std::vector<double> lam2 = {folded};
    lam2.insert(lam2.end(), lam.begin() + 3, lam.end());
    std::vector<double> a2 = {a[0]};
    a2.insert(a2.end(), a.begin() + 2, a.end());
    std::vector<std::size_t> j2;
    for (std::size_t t = 1; t < j.size(); ++t) j2.push_back(j[t] - 2);
    BisymMatrix inner = build_odd(lam2, a2, j2);

    const double rho = std::sqrt(
        clamp_radicand((2.0 * a[1] - lam[1] - lam[2]) * (lam[0] + lam[j[0]] - 2.0 * a[1]) / 2.0,
                       scale));
    return ring_wrap(inner, a[1], a[1] - lam[j[0]], rho);
}

BisymMatrix build_even(const std::vector<double>& lam, const std::vector<double>& a) {
    const std::size_t m = a.size() - 1;
    const double scale = std::max(1.0, std::fabs(lam[0]));
    if (m == 1) {
        const double rho = std::sqrt(clamp_radicand(
                               (lam[0] - 2.0 * a[0] + lam[3]) * (lam[0] + lam[1] - 2.0 * a[1]),
                               scale)) /
                           2.0;
        BisymBuilder b(4);
        b.set(0, 0, a[1]);
        b.set(0, 1, rho);
        b.set(0, 2, rho);
        b.set(0, 3, std::max(0.0, a[1] - lam[1]));
        b.set(1, 1, a[0]);
        b.set(1, 2, std::max(0.0, a[0] - lam[3]));
        return b.finish(0.0);
    }

    const double folded = lam[0] + lam[1] + lam[2] - 2.0 * a[1];
    if (folded < lam[3] - kTol * scale)
        throw numerical_error("diagonal: recursion lost dominance", lam[3] - folded);
    std::vector<double> lam2 = {folded};
    lam2.insert(lam2.end(), lam.begin() + 3, lam.end());
    std::vector<double> a2 = {a[0]};
    a2.insert(a2.end(), a.begin() + 2, a.end());
    BisymMatrix inner = build_even(lam2, a2);

    const double rho = std::sqrt(clamp_radicand(
        (2.0 * a[1] - lam[1] - lam[2]) * (lam[0] + lam[1] - 2.0 * a[1]) / 2.0, scale));
    return ring_wrap(inner, a[1], a[1] - lam[1], rho);
}

Certificate diag_cert(const DiagonalSpec& spec) {
    Certificate c;
    c.kind = "diagonal";
    c.values = spec.spectrum.values();
    c.aux = spec.diag_half;
    return c;
}

}  // namespace

ConditionVerdict check_diag3(double alpha0, double alpha1, double alpha2, double a0, double a1,
                             double tol) {
    ConditionVerdict v;
    v.name = "diagonal-3";
    const double scale = std::max(1.0, std::fabs(alpha0));
    const double slack = tol * scale;
    if (a0 < 0.0 || a1 < 0.0) {
        v.detail = "diagonal entry negative";
        return v;
    }
    if (alpha1 + alpha2 > 2.0 * a1 + slack) {
        v.detail = "third clause fails (alpha_1 + alpha_2 > 2 a_1)";
        return v;
    }
    if (std::fabs(alpha0 + alpha1 + alpha2 - (a0 + 2.0 * a1)) > slack) {
        v.detail = "trace law fails";
        return v;
    }
    for (int j = 1; j <= 2; ++j) {
        const double aj = (j == 1) ? alpha1 : alpha2;
        if (a1 + slack >= aj && alpha0 + aj + slack >= 2.0 * a1) {
            v.holds = true;
            v.detail = (j == 1) ? "j=1" : "j=2";
            return v;
        }
    }
    v.detail = "no j in {1,2} satisfies the first two clauses";
    return v;
}

BisymMatrix construct_diag3(double alpha0, double alpha1, double alpha2, double a0, double a1) {
    ConditionVerdict v = check_diag3(alpha0, alpha1, alpha2, a0, a1);
    if (!v.holds)
        throw infeasible_error("3x3 diagonal realization infeasible: " + v.detail, {v});
    const double aj = (v.detail == "j=1") ? alpha1 : alpha2;
    const double scale = std::max(1.0, std::fabs(alpha0));
    const double rho =
        std::sqrt(clamp_radicand((alpha0 - a0) * (alpha0 + aj - 2.0 * a1) / 2.0, scale));
    BisymBuilder b(3);
    b.set(0, 0, a1);
    b.set(0, 1, rho);
    b.set(0, 2, std::max(0.0, a1 - aj));
    b.set(1, 1, a0);
    return b.finish(0.0);
}

Construction construct_diag_odd(const DiagonalSpec& spec) {
    const std::size_t n = spec.order();
    if (n % 2 != 1) throw std::invalid_argument("construct_diag_odd: order must be odd");
    if (spec.diag_half.size() != n / 2 + 1)
        throw std::invalid_argument("construct_diag_odd: prescription must have (n+1)/2 entries");

    OddWitness w;
    ConditionVerdict v = check_odd(spec.spectrum.values(), spec.diag_half, w);
    if (!v.holds)
        throw infeasible_error("odd diagonal realization infeasible: " + v.detail, {v});

    BisymMatrix raw = build_odd(spec.spectrum.values(), spec.diag_half, w.j);
    BisymMatrix m = reverse_rings(raw, spec.diag_half.size() - 1);
    return {std::move(m), diag_cert(spec)};
}

Construction construct_diag_even(const DiagonalSpec& spec) {
    const std::size_t n = spec.order();
    if (n % 2 != 0 || n < 4)
        throw std::invalid_argument("construct_diag_even: order must be even and >= 4");
    if (spec.diag_half.size() != n / 2)
        throw std::invalid_argument("construct_diag_even: prescription must have n/2 entries");

    ConditionVerdict v = check_even(spec.spectrum.values(), spec.diag_half);
    if (!v.holds)
        throw infeasible_error("even diagonal realization infeasible: " + v.detail, {v});

    BisymMatrix raw = build_even(spec.spectrum.values(), spec.diag_half);
    BisymMatrix m = reverse_rings(raw, spec.diag_half.size() - 1);
    return {std::move(m), diag_cert(spec)};
}

}  // namespace bniep
