#ifndef BNIEP_CONDITIONS_HPP
#define BNIEP_CONDITIONS_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bniep/spectrum.hpp"

namespace bniep {

/// Ordered partition of the negative tail. Blocks are indexed so that the
/// block sums satisfy T_S >= ... >= T_1 (Λ_1 has the smallest sum).
struct PartitionPlan {
    std::vector<std::vector<double>> blocks;  // Λ_1..Λ_S, each sorted non-increasing
    std::vector<double> sums;                 // T_1..T_S
    std::size_t m = 0;                        // nonnegative entries after the head
    std::vector<std::size_t> k_set;           // 1-based indices with λ_i + T_i < 0

    std::size_t block_count() const { return blocks.size(); }

    /// Canonicalizes (sorts blocks by sum ascending, ties by contents) and
    /// validates against the spectrum's negative tail.
    static PartitionPlan make(const Spectrum& s, std::vector<std::vector<double>> blocks);
};

struct ConditionVerdict {
    std::string name;
    bool holds = false;
    std::optional<PartitionPlan> witness;
    std::string detail;  // failed clause or sub-regime note
};

struct infeasible_error : std::runtime_error {
    explicit infeasible_error(const std::string& what, std::vector<ConditionVerdict> verdicts = {})
        : std::runtime_error(what), verdicts(std::move(verdicts)) {}
    std::vector<ConditionVerdict> verdicts;
};

struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One dominant entry over a nonpositive tail with nonnegative total sum.
ConditionVerdict check_suleimanova(const Spectrum& s);

ConditionVerdict check_kellogg(const Spectrum& s);

/// Reference checker for the merged-list condition feeding Kellogg. Reported
/// only; it does not transfer to the bisymmetric construction.
ConditionVerdict check_borobia_reference(const Spectrum& s, std::size_t max_negatives = 12);

/// The odd-partition condition: |Λ_j| odd for j <= min{M,S} plus the two
/// displayed inequalities; the verdict names the applicable sub-regime
/// (3.4 for M <= S, 3.5 for M = S+1, 3.6 for M > S+1).
ConditionVerdict check_borobia_bisym(const Spectrum& s, const PartitionPlan& p);

/// First partition (canonical order) passing check_borobia_bisym, or absent.
std::optional<PartitionPlan> search_partition(const Spectrum& s, std::size_t max_negatives = 12);

/// Restricted-growth-string enumeration; visit returns false to stop early.
void for_each_set_partition(std::size_t n,
                            const std::function<bool(const std::vector<std::size_t>&)>& visit);

}  // namespace bniep

#endif
