#include "bniep/positive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bniep/core.hpp"
#include "bniep/eigen.hpp"

namespace bniep {

namespace {

const double kSqrt2 = std::sqrt(2.0);

struct Component {
    std::vector<std::size_t> index;  // rows of the full matrix, ascending
    double root = 0.0;
    std::vector<double> vector;  // strictly positive Perron vector, unit norm
};

/// Connected components of the nonzero pattern, each with its Perron pair.
std::vector<Component> components_of(const Matrix& s) {
    const std::size_t n = s.rows();
    std::vector<int> label(n, -1);
    std::vector<Component> comps;
    for (std::size_t start = 0; start < n; ++start) {
        if (label[start] != -1) continue;
        const int id = int(comps.size());
        std::vector<std::size_t> stack = {start};
        label[start] = id;
        Component c;
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            c.index.push_back(i);
            for (std::size_t j = 0; j < n; ++j)
                if (label[j] == -1 && s(i, j) != 0.0) {
                    label[j] = id;
                    stack.push_back(j);
                }
        }
        std::sort(c.index.begin(), c.index.end());
        comps.push_back(std::move(c));
    }
    for (Component& c : comps) {
        const std::size_t k = c.index.size();
        if (k == 1) {
            c.root = s(c.index[0], c.index[0]);
            c.vector = {1.0};
            continue;
        }
        Matrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub(i, j) = s(c.index[i], c.index[j]);
        const EigenDecomposition d = symmetric_eigen(sub);
        c.root = d.eigenvalues[0];
        c.vector = d.column(0);
        double sum = 0.0;
        for (double x : c.vector) sum += x;
        if (sum < 0.0)
            for (double& x : c.vector) x = -x;
        for (double x : c.vector)
            if (x <= 0.0)
                throw numerical_error("fiedler_perturb: Perron vector entry not positive", x);
    }
    std::sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
        if (a.root != b.root) return a.root > b.root;
        return a.index[0] < b.index[0];
    });
    return comps;
}

}  // namespace

Matrix fiedler_perturb(const Matrix& s, double epsilon) {
    const std::size_t n = s.rows();
    if (n == 0 || s.cols() != n)
        throw std::invalid_argument("fiedler_perturb: square input required");
    if (!s.is_symmetric_exact())
        throw std::invalid_argument("fiedler_perturb: input not symmetric");
    if (s.min_entry() < 0.0)
        throw std::invalid_argument("fiedler_perturb: input not nonnegative");
    if (epsilon <= 0.0) throw std::invalid_argument("fiedler_perturb: epsilon must be positive");

    std::vector<Component> comps = components_of(s);
    const std::size_t k = comps.size();
    Matrix r(n, n);

    // full-length running top eigenvector of s + r, supported on merged rows
    std::vector<double> u(n, 0.0);
    for (std::size_t i = 0; i < comps[0].index.size(); ++i)
        u[comps[0].index[i]] = comps[0].vector[i];
    double mu = comps[0].root;

    if (k == 1) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) r(i, j) = epsilon * (u[i] * u[j]);
        return r;
    }

    const double step = epsilon / double(k - 1);
    const double delta = step / 2.0;
    for (std::size_t t = 1; t < k; ++t) {
        std::vector<double> v(n, 0.0);
        for (std::size_t i = 0; i < comps[t].index.size(); ++i)
            v[comps[t].index[i]] = comps[t].vector[i];
        const double mu2 = comps[t].root;
        const double d = mu + step - mu2 - delta;  // >= step - delta = delta > 0
        const double rho = std::sqrt(delta * d);
        const double eps1 = step - delta;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                // parenthesized so the transposed entry is the same float
                // expression (products commute bit-exactly; chains don't)
                r(i, j) += eps1 * (u[i] * u[j]) + delta * (v[i] * v[j]) +
                           rho * (u[i] * v[j] + v[i] * u[j]);
        // top eigenvector of the merged pair in the (u, v) plane
        const double norm = std::sqrt(d * d + rho * rho);
        for (std::size_t i = 0; i < n; ++i) u[i] = (d * u[i] + rho * v[i]) / norm;
        mu += step;
    }
    if (r.min_entry() <= 0.0)
        throw numerical_error("fiedler_perturb: perturbation not strictly positive",
                              r.min_entry());
    return r;
}

Construction positify(const BisymMatrix& q, double epsilon) {
    const std::size_t n = q.order();
    Certificate cert;
    cert.kind = "positive";
    cert.params["epsilon"] = epsilon;
    Certificate input;
    input.kind = "user-block";
    input.mat = q.matrix();
    cert.children.push_back(std::move(input));

    if (n == 1) {
        if (epsilon <= 0.0) throw std::invalid_argument("positify: epsilon must be positive");
        return {scalar_bisym(q(0, 0) + epsilon), std::move(cert)};
    }

    const CbSplit split = cb_split(q);
    CantoniButlerForm f = cb_form(q);
    const std::size_t m = f.a.rows();
    const Matrix r = fiedler_perturb(split.plus_block, epsilon);

    Matrix jc(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) jc(i, j) = f.c(m - 1 - i, j);

    if (!f.odd) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                f.a(i, j) += r(i, j) / 2.0;
                jc(i, j) += r(i, j) / 2.0;
            }
    } else {
        // r is on the bordered plus block: r = [[c, y^T], [y, r1]]
        f.p += r(0, 0);
        for (std::size_t i = 0; i < m; ++i) f.x[i] += r(0, i + 1) / kSqrt2;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                f.a(i, j) += r(i + 1, j + 1) / 2.0;
                jc(i, j) += r(i + 1, j + 1) / 2.0;
            }
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) f.c(i, j) = jc(m - 1 - i, j);

    BisymMatrix out = cb_compose(f);
    if (out.min_entry() <= 0.0)
        throw numerical_error("positify: result not strictly positive", out.min_entry());
    return {std::move(out), std::move(cert)};
}

Construction construct_positive_borobia(const Spectrum& s, const PartitionPlan& p) {
    ConditionVerdict v = check_borobia_bisym(s, p);
    if (!v.holds)
        throw infeasible_error("spectrum/partition fail the odd-partition condition: " + v.detail,
                               {v});
    const PartitionPlan& plan = *v.witness;
    const std::size_t M = plan.m;
    const std::size_t S = plan.block_count();

    // strict margins of the two clause families; epsilon is their minimum
    double margin = std::numeric_limits<double>::infinity();
    double running = s[0];
    for (std::size_t k : plan.k_set) {
        margin = std::min(margin, running + plan.sums[k - 1]);
        running += s[k] + plan.sums[k - 1];
    }
    double second = running;
    if (M <= S)
        for (std::size_t j = M + 1; j <= S; ++j) second += plan.sums[j - 1];
    margin = std::min(margin, second);
    if (margin <= 0.0) {
        ConditionVerdict strict{"borobia-bisym-strict", false, std::nullopt,
                                "a clause holds with equality; no strict margin to spend"};
        throw infeasible_error("strict inequalities required for the positive construction",
                               {strict});
    }

    std::vector<double> shifted = s.values();
    shifted[0] -= margin;
    Construction base = construct_borobia(Spectrum(shifted), plan);
    Construction lifted = positify(base.matrix, margin);

    Certificate cert;
    cert.kind = "positive";
    cert.params["epsilon"] = margin;
    cert.children.push_back(std::move(base.certificate));
    return {std::move(lifted.matrix), std::move(cert)};
}

}  // namespace bniep
