#include "bniep/constructors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bniep/eigen.hpp"
#include "bniep/glue.hpp"

namespace bniep {

namespace {

Certificate leaf(std::string kind) {
    Certificate c;
    c.kind = std::move(kind);
    return c;
}

Certificate zero_cert(std::size_t n) {
    Certificate c = leaf("zero");
    c.params["order"] = double(n);
    return c;
}

Certificate scalar_cert(double v) {
    Certificate c = leaf("scalar");
    c.params["value"] = v;
    return c;
}

Certificate pair_cert(double hi, double lo) {
    Certificate c = leaf("pair");
    c.params["hi"] = hi;
    c.params["lo"] = lo;
    return c;
}

Construction glue_ab_step(const char* kind, Construction inner, double a, double b) {
    Certificate c = leaf(kind);
    c.params["a"] = a;
    c.params["b"] = b;
    c.children.push_back(std::move(inner.certificate));
    if (std::string(kind) == "glue-ab") c.children.push_back(zero_cert(1));
    BisymMatrix m = glue_ab(inner.matrix, zero_bisym(1), a, b);
    return {std::move(m), std::move(c)};
}

Construction nest_pair_step(double hi, double lo, Construction inner) {
    Certificate c = leaf("diag-pad");
    c.params["hi"] = hi;
    c.params["lo"] = lo;
    c.children.push_back(std::move(inner.certificate));
    BisymMatrix m = nest_pair(hi, lo, inner.matrix);
    return {std::move(m), std::move(c)};
}

Construction nest_step(Construction outer, Construction inner) {
    Certificate c = leaf("nest");
    c.children.push_back(std::move(outer.certificate));
    c.children.push_back(std::move(inner.certificate));
    BisymMatrix m = nest(outer.matrix, inner.matrix);
    return {std::move(m), std::move(c)};
}

Construction center_insert_step(Construction inner, double value) {
    Certificate c = leaf("center-insert");
    c.params["value"] = value;
    c.children.push_back(std::move(inner.certificate));
    BisymMatrix m = center_insert(inner.matrix, value);
    return {std::move(m), std::move(c)};
}

Construction merge_step(Construction q1, Construction q2, double epsilon, double alternative) {
    // the dominance rule guarantees epsilon >= 0, but it is a difference of
    // rounded sums and can land a few ulps below zero
    if (epsilon < 0.0 && epsilon >= -1e-9) epsilon = 0.0;
    Certificate c = leaf("merge-transfer");
    c.params["epsilon"] = epsilon;
    c.params["epsilon_alternative"] = alternative;
    c.children.push_back(std::move(q1.certificate));
    c.children.push_back(std::move(q2.certificate));
    BisymMatrix m = merge_transfer(q1.matrix, q2.matrix, epsilon);
    return {std::move(m), std::move(c)};
}

/// All-nonnegative list: nested 2x2 shells pairing extremes, scalar center if
/// the count is odd.
Construction realize_nonneg(const std::vector<double>& sorted_desc) {
    const std::size_t n = sorted_desc.size();
    std::size_t lo = 0, hi = n;  // [lo, hi) still unplaced
    Construction out = (n % 2 == 1)
                           ? Construction{scalar_bisym(sorted_desc[n / 2]),
                                          scalar_cert(sorted_desc[n / 2])}
                           : Construction{pair_matrix(sorted_desc[n / 2 - 1], sorted_desc[n / 2]),
                                          pair_cert(sorted_desc[n / 2 - 1], sorted_desc[n / 2])};
    std::size_t placed = (n % 2 == 1) ? 1 : 2;
    while (placed < n) {
        const std::size_t k = (n - placed) / 2;  // shells remaining on each side
        out = nest_pair_step(sorted_desc[k - 1 + lo], sorted_desc[hi - k], std::move(out));
        placed += 2;
    }
    return out;
}

std::vector<double> concat_values(double head, const std::vector<std::vector<double>>& blocks,
                                  std::size_t skip = std::size_t(-1)) {
    std::vector<double> v{head};
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        if (j == skip) continue;
        v.insert(v.end(), blocks[j].begin(), blocks[j].end());
    }
    return v;
}

double vec_sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

/// The recursion's sub-lists are dominated by theorem, but folded heads and
/// block sums round differently from the gate's sequential sum, so a
/// mathematically zero total can land a few ulps below zero. Cancel that on
/// the head before the gated call; genuinely negative sums still fail there.
Construction sul_sub(std::vector<double> vals) {
    // sort first so the clamp sees the same sequential sum as the gate
    std::sort(vals.begin(), vals.end(), std::greater<double>());
    const double scale = std::max(1.0, std::fabs(vals[0]));
    for (int pass = 0; pass < 64; ++pass) {
        const double total = vec_sum(vals);
        if (total >= 0.0 || total < -1e-9 * scale) break;
        const double bumped = vals[0] - total;
        // the deficit can be below one ulp of the head; still move one ulp
        vals[0] = (bumped > vals[0])
                      ? bumped
                      : std::nextafter(vals[0], std::numeric_limits<double>::infinity());
    }
    return construct_suleimanova(Spectrum(std::move(vals)));
}

Construction borobia_recurse(const std::vector<double>& head,
                             const std::vector<std::vector<double>>& blocks);

/// head = nonneg entries lambda_0..lambda_M sorted desc; blocks already
/// sorted by sum ascending (T_1 smallest). Regime M <= S.
Construction borobia_le(const std::vector<double>& head,
                        const std::vector<std::vector<double>>& blocks) {
    const std::size_t M = head.size() - 1;
    const std::size_t S = blocks.size();
    std::vector<double> sums(S);
    for (std::size_t j = 0; j < S; ++j) sums[j] = vec_sum(blocks[j]);

    if (M == 0) {
        std::vector<double> all = concat_values(head[0], blocks);
        return sul_sub(all);
    }

    if (M == 1) {
        // peel lambda_1 off with one odd block whose sum it can absorb,
        // leaving a plain dominated list for lambda_0
        for (std::size_t k = S; k-- > 0;) {
            if (blocks[k].size() % 2 == 0) continue;
            if (head[1] + sums[k] < 0.0) continue;
            double rest = head[0];
            for (std::size_t j = 0; j < S; ++j)
                if (j != k) rest += sums[j];
            if (rest < 0.0) continue;
            std::vector<double> shell_vals = {head[1]};
            shell_vals.insert(shell_vals.end(), blocks[k].begin(), blocks[k].end());
            Construction shell = sul_sub(shell_vals);
            Construction core =
                sul_sub(concat_values(head[0], blocks, k));
            return nest_step(std::move(shell), std::move(core));
        }
        if (S == 1) {
            // lambda_0 + T_1 >= 0 is guaranteed by the first clause here
            Construction core =
                sul_sub(concat_values(head[0], blocks));
            return center_insert_step(std::move(core), head[1]);
        }
        // transfer: fold lambda_0, lambda_1 and T_1 into one Perron root
        const double folded = head[0] + head[1] + sums[0];
        Construction q1 =
            sul_sub(concat_values(folded, blocks, 0));
        std::vector<double> other = {-sums[0]};
        other.insert(other.end(), blocks[0].begin(), blocks[0].end());
        Construction q2 = sul_sub(other);
        const double eps_main = -(head[1] + sums[0]);
        const double eps_alt = head[0] + sums[0];
        if (folded >= -sums[0])
            return merge_step(std::move(q1), std::move(q2), eps_main, eps_alt);
        return merge_step(std::move(q2), std::move(q1), eps_alt, eps_main);
    }

    // M >= 2: extract a (lambda_j, Lambda_j) pair with nonnegative joint sum
    for (std::size_t j = 1; j <= M; ++j) {
        if (head[j] + sums[j - 1] < 0.0) continue;
        std::vector<double> shell_vals = {head[j]};
        shell_vals.insert(shell_vals.end(), blocks[j - 1].begin(), blocks[j - 1].end());
        Construction shell = sul_sub(shell_vals);
        std::vector<double> head2 = head;
        head2.erase(head2.begin() + std::ptrdiff_t(j));
        std::vector<std::vector<double>> blocks2 = blocks;
        blocks2.erase(blocks2.begin() + std::ptrdiff_t(j - 1));
        Construction core = borobia_recurse(head2, blocks2);
        return nest_step(std::move(shell), std::move(core));
    }
    // every pair is deficient: fold the first and transfer back
    const double folded = head[0] + head[1] + sums[0];
    std::vector<double> head2 = {folded};
    head2.insert(head2.end(), head.begin() + 2, head.end());
    std::sort(head2.begin(), head2.end(), std::greater<double>());
    std::vector<std::vector<double>> blocks2(blocks.begin() + 1, blocks.end());
    Construction q1 = borobia_recurse(head2, blocks2);
    std::vector<double> other = {-sums[0]};
    other.insert(other.end(), blocks[0].begin(), blocks[0].end());
    Construction q2 = sul_sub(other);
    const double eps_main = -(head[1] + sums[0]);
    const double eps_alt = head[0] + sums[0];
    if (folded >= -sums[0]) return merge_step(std::move(q1), std::move(q2), eps_main, eps_alt);
    return merge_step(std::move(q2), std::move(q1), eps_alt, eps_main);
}

/// Regime M == S + 1.
Construction borobia_eq1(const std::vector<double>& head,
                         const std::vector<std::vector<double>>& blocks) {
    const std::size_t M = head.size() - 1;
    const std::size_t S = blocks.size();
    std::vector<double> sums(S);
    for (std::size_t j = 0; j < S; ++j) sums[j] = vec_sum(blocks[j]);

    if (M <= 1) return realize_nonneg(head);  // S == 0: nothing negative left

    if (M == 2) {
        Construction core = sul_sub(concat_values(head[0], blocks));
        return nest_pair_step(head[1], head[2], std::move(core));
    }

    for (std::size_t j = 1; j <= M - 1; ++j) {
        if (head[j] + sums[j - 1] < 0.0) continue;
        std::vector<double> shell_vals = {head[j]};
        shell_vals.insert(shell_vals.end(), blocks[j - 1].begin(), blocks[j - 1].end());
        Construction shell = sul_sub(shell_vals);
        std::vector<double> head2 = head;
        head2.erase(head2.begin() + std::ptrdiff_t(j));
        std::vector<std::vector<double>> blocks2 = blocks;
        blocks2.erase(blocks2.begin() + std::ptrdiff_t(j - 1));
        Construction core = borobia_recurse(head2, blocks2);
        return nest_step(std::move(shell), std::move(core));
    }
    const double folded = head[0] + head[1] + sums[0];
    std::vector<double> head2 = {folded};
    head2.insert(head2.end(), head.begin() + 2, head.end());
    std::sort(head2.begin(), head2.end(), std::greater<double>());
    std::vector<std::vector<double>> blocks2(blocks.begin() + 1, blocks.end());
    Construction q1 = borobia_recurse(head2, blocks2);
    std::vector<double> other = {-sums[0]};
    other.insert(other.end(), blocks[0].begin(), blocks[0].end());
    Construction q2 = sul_sub(other);
    const double eps_main = -(head[1] + sums[0]);
    const double eps_alt = head[0] + sums[0];
    if (folded >= -sums[0]) return merge_step(std::move(q1), std::move(q2), eps_main, eps_alt);
    return merge_step(std::move(q2), std::move(q1), eps_alt, eps_main);
}

Construction borobia_recurse(const std::vector<double>& head,
                             const std::vector<std::vector<double>>& blocks) {
    const std::size_t M = head.size() - 1;
    const std::size_t S = blocks.size();
    if (M <= S) return borobia_le(head, blocks);
    if (M == S + 1) return borobia_eq1(head, blocks);

    // M > S + 1: strip the surplus nonnegative entries into 2x2 shells
    const std::size_t keep = (M - S) % 2 == 0 ? S : S + 1;
    std::vector<double> core_head(head.begin(), head.begin() + std::ptrdiff_t(keep + 1));
    Construction q = borobia_recurse(core_head, blocks);
    for (std::size_t i = keep + 1; i + 1 <= M; i += 2)
        q = nest_pair_step(head[i], head[i + 1], std::move(q));
    return q;
}

}  // namespace

Construction construct_small(const Spectrum& s) {
    const std::size_t n = s.size();
    if (n > 4) throw std::invalid_argument("construct_small: order must be <= 4");
    const double l1 = s[0], ln = s[n - 1];
    std::vector<ConditionVerdict> verdicts;
    if (l1 + ln < 0.0) {
        ConditionVerdict v{"necessary", false, std::nullopt,
                           "leading entry smaller than |trailing entry|"};
        throw infeasible_error("spectrum fails the necessary condition lambda_1 >= |lambda_n|",
                               {v});
    }
    if (s.sum() < 0.0) {
        ConditionVerdict v{"necessary", false, std::nullopt, "negative total sum"};
        throw infeasible_error("spectrum fails the necessary condition sum >= 0", {v});
    }

    switch (n) {
        case 1:
            return {scalar_bisym(s[0]), scalar_cert(s[0])};
        case 2:
            return {pair_matrix(s[0], s[1]), pair_cert(s[0], s[1])};
        case 3: {
            if (s[1] >= 0.0) {
                Construction inner{pair_matrix(s[0], s[2]), pair_cert(s[0], s[2])};
                return center_insert_step(std::move(inner), s[1]);
            }
            const double folded = s[0] + s[1] + s[2];
            Construction inner{scalar_bisym(folded), scalar_cert(folded)};
            return glue_ab_step("glue-ab", std::move(inner), s[1], s[2]);
        }
        default: {
            if (s[1] + s[2] >= 0.0) {
                Construction inner{pair_matrix(s[1], s[2]), pair_cert(s[1], s[2])};
                return nest_pair_step(s[0], s[3], std::move(inner));
            }
            const double folded = s[0] + s[1] + s[2];
            Construction inner{pair_matrix(folded, s[3]), pair_cert(folded, s[3])};
            return glue_ab_step("glue-ab", std::move(inner), s[1], s[2]);
        }
    }
}

Construction construct_suleimanova(const Spectrum& s) {
    ConditionVerdict v = check_suleimanova(s);
    if (!v.holds)
        throw infeasible_error("spectrum does not satisfy the dominated-tail condition: " +
                                   v.detail,
                               {v});
    const std::size_t n = s.size();
    if (s.head() == 0.0) return {zero_bisym(n), zero_cert(n)};
    if (n <= 4) return construct_small(s);

    std::vector<double> folded = {s[0] + s[1] + s[2]};
    for (std::size_t i = 3; i < n; ++i) folded.push_back(s[i]);
    Construction inner = construct_suleimanova(Spectrum(folded));
    return glue_ab_step("suleimanova-step", std::move(inner), s[1], s[2]);
}

Construction construct_borobia(const Spectrum& s, const PartitionPlan& p) {
    ConditionVerdict v = check_borobia_bisym(s, p);
    if (!v.holds)
        throw infeasible_error("spectrum/partition fail the odd-partition condition: " + v.detail,
                               {v});
    const PartitionPlan& plan = *v.witness;
    const std::size_t M = plan.m;
    const std::size_t S = plan.block_count();

    std::vector<double> head(s.values().begin(), s.values().begin() + std::ptrdiff_t(M + 1));
    Construction built = borobia_recurse(head, plan.blocks);

    const char* regime = (M <= S) ? "borobia-3.4" : (M == S + 1 ? "borobia-3.5" : "borobia-3.6");
    Certificate cert = leaf(regime);
    cert.values = s.values();
    cert.children.push_back(std::move(built.certificate));
    return {std::move(built.matrix), std::move(cert)};
}

SotoResult construct_soto(const Spectrum& s, const std::vector<SotoBlock>& blocks,
                          const std::optional<Matrix>& b) {
    const std::size_t S = blocks.size();
    if (S == 0) throw std::invalid_argument("construct_soto: needs at least one block");

    // validate the partition of the full list
    std::vector<double> pooled;
    std::size_t odd_count = 0;
    for (const auto& blk : blocks) {
        if (blk.values.empty()) throw std::invalid_argument("construct_soto: empty block");
        std::vector<double> sorted = blk.values;
        std::sort(sorted.begin(), sorted.end(), std::greater<double>());
        if (sorted != blk.values)
            throw std::invalid_argument("construct_soto: block values must be sorted");
        if (sorted[0] < 0.0)
            throw std::invalid_argument("construct_soto: block leader must be nonnegative");
        if (blk.omega < 0.0 || blk.omega > s.head())
            throw std::invalid_argument("construct_soto: omega out of [0, lambda_1]");
        if (blk.values.size() % 2 == 1) ++odd_count;
        pooled.insert(pooled.end(), blk.values.begin(), blk.values.end());
    }
    if (odd_count > 1)
        throw std::invalid_argument("construct_soto: at most one block may have odd size");
    std::sort(pooled.begin(), pooled.end(), std::greater<double>());
    if (pooled != s.values())
        throw std::invalid_argument("construct_soto: blocks do not partition the spectrum");
    if (blocks[0].values[0] != s.head())
        throw std::invalid_argument("construct_soto: first block must lead with lambda_1");

    // trace law: sum of omegas and tails must match the target spectrum
    double gamma_sum = 0.0;
    for (const auto& blk : blocks) {
        gamma_sum += blk.omega;
        for (std::size_t i = 1; i < blk.values.size(); ++i) gamma_sum += blk.values[i];
    }
    const double scale = std::max(1.0, std::fabs(s.head()));
    if (std::fabs(gamma_sum - s.sum()) > 1e-9 * scale)
        throw infeasible_error("construct_soto: omega list violates the trace law");

    // realize each Gamma_j
    std::vector<BisymMatrix> q;
    std::vector<Certificate> block_certs;
    for (const auto& blk : blocks) {
        std::vector<double> gamma = {blk.omega};
        for (std::size_t i = 1; i < blk.values.size(); ++i) gamma.push_back(blk.values[i]);
        Spectrum g(gamma);
        if (g.head() != blk.omega)
            throw infeasible_error("construct_soto: omega is not the dominant entry of its block");
        Certificate bc = leaf("soto-block");
        bc.values = blk.values;
        bc.params["omega"] = blk.omega;
        if (blk.supplied) {
            VerificationReport r = verify_realization(*blk.supplied, g, 1e-9);
            if (!r.pass)
                throw std::invalid_argument(
                    "construct_soto: supplied block does not realize its target list");
            q.push_back(*blk.supplied);
            Certificate ub = leaf("user-block");
            ub.mat = blk.supplied->matrix();
            bc.children.push_back(std::move(ub));
        } else {
            Construction built = construct_auto(g);
            q.push_back(built.matrix);
            bc.children.push_back(std::move(built.certificate));
        }
        block_certs.push_back(std::move(bc));
    }

    // solve or validate B
    Matrix bmat(0, 0);
    if (b) {
        bmat = *b;
        if (bmat.rows() != S || bmat.cols() != S || !bmat.is_symmetric_exact())
            throw std::invalid_argument("construct_soto: B must be S x S symmetric");
        if (bmat.min_entry() < 0.0)
            throw std::invalid_argument("construct_soto: B must be nonnegative");
        for (std::size_t j = 0; j < S; ++j)
            if (std::fabs(bmat(j, j) - blocks[j].omega) > 1e-9 * scale)
                throw std::invalid_argument("construct_soto: diag(B) must equal the omega list");
        std::vector<double> eig = eigenvalues_of(bmat);
        std::vector<double> leaders;
        for (const auto& blk : blocks) leaders.push_back(blk.values[0]);
        std::sort(leaders.begin(), leaders.end(), std::greater<double>());
        for (std::size_t j = 0; j < S; ++j)
            if (std::fabs(eig[j] - leaders[j]) > 1e-8 * scale)
                throw std::invalid_argument(
                    "construct_soto: B's eigenvalues must be the block leaders");
    } else if (S == 1) {
        if (std::fabs(blocks[0].omega - blocks[0].values[0]) > 1e-12 * scale)
            throw infeasible_error("construct_soto: S=1 requires omega_1 = lambda_1");
        bmat = Matrix(1, 1);
        bmat(0, 0) = blocks[0].omega;
    } else if (S == 2) {
        bmat = solve_2x2_diag(blocks[0].values[0], blocks[1].values[0], blocks[0].omega,
                              blocks[1].omega);
    } else {
        throw capacity_error("construct_soto: supply B explicitly when S > 2");
    }

    // anti-diagonal nesting: the odd block (or block 1) at the center, the
    // remaining blocks wrapped outward in index order
    std::size_t center = 0;
    for (std::size_t j = 0; j < S; ++j)
        if (blocks[j].values.size() % 2 == 1) center = j;
    std::vector<std::size_t> order = {center};  // inner to outer
    for (std::size_t j = 0; j < S; ++j)
        if (j != center) order.push_back(j);

    BisymMatrix qhat = q[order[0]];
    for (std::size_t t = 1; t < order.size(); ++t) qhat = nest(q[order[t]], qhat);

    // offsets of each block inside qhat (front part; the mirrored half is
    // implied). Blocks wrapped later sit further out.
    const std::size_t n = qhat.order();
    std::vector<std::size_t> offset(S, 0);
    {
        std::size_t shell = 0;  // width consumed on the left, walking outside-in
        for (std::size_t t = order.size(); t-- > 1;) {
            offset[order[t]] = shell;
            shell += q[order[t]].order() / 2;
        }
        offset[order[0]] = shell;
    }

    Matrix x(n, S);
    std::vector<double> omega;
    for (std::size_t j = 0; j < S; ++j) {
        omega.push_back(blocks[j].omega);
        const PerronPair pp = perron_pair(q[j]);
        const std::size_t pj = q[j].order();
        if (j == order[0]) {
            for (std::size_t i = 0; i < pj; ++i) x(offset[j] + i, j) = pp.vector[i];
        } else {
            // split halves: front half at offset, back half mirrored
            for (std::size_t i = 0; i < pj / 2; ++i) {
                x(offset[j] + i, j) = pp.vector[i];
                x(n - 1 - offset[j] - i, j) = pp.vector[i];
            }
        }
    }

    BisymMatrix result = rado_update(qhat, x, bmat, omega);

    Certificate cert = leaf("soto-3.8");
    cert.values = s.values();
    cert.aux = omega;
    cert.mat = bmat;
    cert.children = std::move(block_certs);
    return {std::move(result), std::move(cert), std::move(qhat), std::move(x), std::move(bmat)};
}

Construction construct_auto(const Spectrum& s) {
    std::vector<ConditionVerdict> verdicts;

    ConditionVerdict sul = check_suleimanova(s);
    verdicts.push_back(sul);
    if (sul.holds) return construct_suleimanova(s);

    if (s.size() <= 4) {
        if (s[0] + s[s.size() - 1] >= 0.0 && s.sum() >= 0.0) return construct_small(s);
        ConditionVerdict v{"necessary", false, std::nullopt,
                           "small-order necessary conditions fail"};
        verdicts.push_back(v);
        throw infeasible_error("no applicable condition holds", verdicts);
    }

    verdicts.push_back(check_kellogg(s));

    std::optional<PartitionPlan> plan = search_partition(s);
    if (plan) return construct_borobia(s, *plan);
    ConditionVerdict v{"borobia-bisym", false, std::nullopt,
                       "no partition of the negative tail passes the odd-partition condition"};
    verdicts.push_back(v);
    throw infeasible_error("no applicable condition holds", verdicts);
}

}  // namespace bniep
