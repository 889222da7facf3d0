#include "bniep/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bniep {

namespace {

std::string list_to_string(const std::vector<double>& v) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    os << "}";
    return os.str();
}

/// Kellogg's inequalities on a non-increasing list v[0..N-1] with the paper's
/// indices lambda_0..lambda_n (n = N-1). Returns (holds, failed-clause text).
std::pair<bool, std::string> kellogg_clauses(const std::vector<double>& v) {
    const std::size_t N = v.size();
    const std::size_t n = N - 1;
    std::size_t M = 0;
    while (M + 1 <= n && v[M + 1] >= 0.0) ++M;
    const std::size_t top = std::min(M, n - M);

    std::vector<std::size_t> K;
    for (std::size_t i = 1; i <= top; ++i)
        if (v[i] + v[n - i + 1] < 0.0) K.push_back(i);

    double running = v[0];
    for (std::size_t k : K) {
        if (running + v[n - k + 1] < 0.0) {
            std::ostringstream os;
            os << "first clause fails at k=" << k << " (value "
               << running + v[n - k + 1] << ")";
            return {false, os.str()};
        }
        running += v[k] + v[n - k + 1];
    }
    double second = running;
    for (std::size_t j = M + 1; j + M <= n; ++j) second += v[j];
    if (second < 0.0) {
        std::ostringstream os;
        os << "second clause fails (value " << second << ")";
        return {false, os.str()};
    }
    return {true, ""};
}

}  // namespace

PartitionPlan PartitionPlan::make(const Spectrum& s, std::vector<std::vector<double>> blocks) {
    for (auto& b : blocks) {
        if (b.empty()) throw std::invalid_argument("PartitionPlan: empty block");
        std::sort(b.begin(), b.end(), std::greater<double>());
        for (double v : b)
            if (!(v < 0.0)) throw std::invalid_argument("PartitionPlan: block entry not negative");
    }

    std::vector<double> pooled;
    for (const auto& b : blocks) pooled.insert(pooled.end(), b.begin(), b.end());
    std::sort(pooled.begin(), pooled.end(), std::greater<double>());
    if (pooled != s.negative_tail())
        throw std::invalid_argument("PartitionPlan: blocks do not partition the negative tail");

    auto block_sum = [](const std::vector<double>& b) {
        double t = 0.0;
        for (double v : b) t += v;
        return t;
    };
    std::sort(blocks.begin(), blocks.end(),
              [&](const std::vector<double>& x, const std::vector<double>& y) {
                  const double tx = block_sum(x), ty = block_sum(y);
                  if (tx != ty) return tx < ty;
                  return x < y;
              });

    PartitionPlan p;
    p.blocks = std::move(blocks);
    for (const auto& b : p.blocks) p.sums.push_back(block_sum(b));
    p.m = s.nonneg_after_head();
    const std::size_t top = std::min(p.m, p.blocks.size());
    for (std::size_t i = 1; i <= top; ++i)
        if (s[i] + p.sums[i - 1] < 0.0) p.k_set.push_back(i);
    return p;
}

ConditionVerdict check_suleimanova(const Spectrum& s) {
    ConditionVerdict v;
    v.name = "suleimanova";
    if (s.head() < 0.0) {
        v.detail = "leading entry negative";
        return v;
    }
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] > 0.0) {
            v.detail = "more than one positive entry";
            return v;
        }
    if (s.sum() < 0.0) {
        std::ostringstream os;
        os << "sum " << s.sum() << " < 0";
        v.detail = os.str();
        return v;
    }
    v.holds = true;
    return v;
}

ConditionVerdict check_kellogg(const Spectrum& s) {
    ConditionVerdict v;
    v.name = "kellogg";
    if (s.head() < 0.0) {
        v.detail = "leading entry negative";
        return v;
    }
    auto [ok, why] = kellogg_clauses(s.values());
    v.holds = ok;
    v.detail = why;
    return v;
}

ConditionVerdict check_borobia_reference(const Spectrum& s, std::size_t max_negatives) {
    ConditionVerdict v;
    v.name = "borobia-reference";
    if (s.head() < 0.0) {
        v.detail = "leading entry negative";
        return v;
    }
    const std::vector<double> tail = s.negative_tail();
    if (tail.size() > max_negatives)
        throw capacity_error("check_borobia_reference: too many negative entries; "
                             "raise max_negatives or supply a partition");

    std::vector<double> prefix;
    for (double x : s.values())
        if (x >= 0.0) prefix.push_back(x);

    bool found = false;
    std::vector<std::vector<double>> witness_blocks;
    for_each_set_partition(tail.size(), [&](const std::vector<std::size_t>& rgs) {
        std::size_t nblocks = 0;
        for (std::size_t g : rgs) nblocks = std::max(nblocks, g + 1);
        std::vector<double> sums(nblocks, 0.0);
        for (std::size_t i = 0; i < tail.size(); ++i) sums[rgs[i]] += tail[i];

        std::vector<double> merged = prefix;
        std::sort(sums.begin(), sums.end(), std::greater<double>());
        merged.insert(merged.end(), sums.begin(), sums.end());
        if (kellogg_clauses(merged).first) {
            found = true;
            witness_blocks.assign(nblocks, {});
            for (std::size_t i = 0; i < tail.size(); ++i) witness_blocks[rgs[i]].push_back(tail[i]);
            return false;
        }
        return true;
    });
    v.holds = found;
    if (found && !tail.empty()) v.witness = PartitionPlan::make(s, witness_blocks);
    if (found && tail.empty()) v.witness = PartitionPlan::make(s, {});
    if (!found) v.detail = "no partition of the negative tail passes Kellogg on the merged list";
    return v;
}

ConditionVerdict check_borobia_bisym(const Spectrum& s, const PartitionPlan& p) {
    // re-canonicalize to validate consistency with s
    PartitionPlan plan = PartitionPlan::make(s, p.blocks);

    ConditionVerdict v;
    v.name = "borobia-bisym";
    if (s.head() < 0.0) {
        v.detail = "leading entry negative";
        return v;
    }
    const std::size_t M = plan.m;
    const std::size_t S = plan.block_count();
    const std::size_t top = std::min(M, S);

    const char* regime = (M <= S) ? "3.4" : (M == S + 1 ? "3.5" : "3.6");
    v.detail = std::string("regime ") + regime;

    for (std::size_t j = 1; j <= top; ++j)
        if (plan.blocks[j - 1].size() % 2 == 0) {
            std::ostringstream os;
            os << "regime " << regime << ": block " << list_to_string(plan.blocks[j - 1])
               << " has even size (position " << j << " <= min{M,S})";
            v.detail = os.str();
            return v;
        }

    double running = s[0];
    for (std::size_t k : plan.k_set) {
        if (running + plan.sums[k - 1] < 0.0) {
            std::ostringstream os;
            os << "regime " << regime << ": first clause fails at k=" << k << " (value "
               << running + plan.sums[k - 1] << ")";
            v.detail = os.str();
            return v;
        }
        running += s[k] + plan.sums[k - 1];
    }
    double second = running;
    if (M <= S)
        for (std::size_t j = M + 1; j <= S; ++j) second += plan.sums[j - 1];
    if (second < 0.0) {
        std::ostringstream os;
        os << "regime " << regime << ": second clause fails (value " << second << ")";
        v.detail = os.str();
        return v;
    }
    v.holds = true;
    v.witness = std::move(plan);
    return v;
}

std::optional<PartitionPlan> search_partition(const Spectrum& s, std::size_t max_negatives) {
    const std::vector<double> tail = s.negative_tail();
    if (tail.size() > max_negatives)
        throw capacity_error("search_partition: too many negative entries; "
                             "raise max_negatives or supply a partition");

    std::optional<PartitionPlan> found;
    for_each_set_partition(tail.size(), [&](const std::vector<std::size_t>& rgs) {
        std::size_t nblocks = 0;
        for (std::size_t g : rgs) nblocks = std::max(nblocks, g + 1);
        std::vector<std::vector<double>> blocks(nblocks);
        for (std::size_t i = 0; i < tail.size(); ++i) blocks[rgs[i]].push_back(tail[i]);
        PartitionPlan candidate = PartitionPlan::make(s, std::move(blocks));
        ConditionVerdict v = check_borobia_bisym(s, candidate);
        if (v.holds) {
            found = std::move(*v.witness);
            return false;
        }
        return true;
    });
    return found;
}

void for_each_set_partition(std::size_t n,
                            const std::function<bool(const std::vector<std::size_t>&)>& visit) {
    if (n == 0) {
        visit({});
        return;
    }
    // restricted growth strings: a[0] = 0, a[i] <= 1 + max(a[0..i-1])
    std::vector<std::size_t> a(n, 0);
    std::vector<std::size_t> pre(n, 0);  // pre[i] = max(a[0..i-1])
    for (;;) {
        if (!visit(a)) return;
        for (std::size_t j = 1; j < n; ++j) pre[j] = std::max(pre[j - 1], a[j - 1]);
        bool moved = false;
        for (std::size_t i = n; i-- > 1;) {
            if (a[i] <= pre[i]) {
                ++a[i];
                std::fill(a.begin() + i + 1, a.end(), 0);
                moved = true;
                break;
            }
        }
        if (!moved) return;
    }
}

}  // namespace bniep
