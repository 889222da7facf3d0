#ifndef BNIEP_CONSTRUCTORS_HPP
#define BNIEP_CONSTRUCTORS_HPP

#include <optional>
#include <vector>

#include "bniep/certificate.hpp"
#include "bniep/conditions.hpp"
#include "bniep/core.hpp"
#include "bniep/spectrum.hpp"

namespace bniep {

struct Construction {
    BisymMatrix matrix;
    Certificate certificate;
};

/// Explicit n <= 4 constructions under the necessary conditions
/// λ_1 >= |λ_n| and Σλ >= 0.
Construction construct_small(const Spectrum& s);

/// Recursion for one dominant entry over a nonpositive tail: fold the top
/// three entries, recurse, then glue with a = λ1, b = λ2.
Construction construct_suleimanova(const Spectrum& s);

/// Odd-partition family: dispatches on M vs S, recursing through block
/// extraction, center insertion, ε-transfer merges and shell padding.
Construction construct_borobia(const Spectrum& s, const PartitionPlan& p);

/// One block of the rank-S update construction: the sub-list Λ_j, the
/// prescribed Perron root ω_j and, optionally, a user-supplied realization
/// of Γ_j = {ω_j} ∪ tail(Λ_j).
struct SotoBlock {
    std::vector<double> values;  // Λ_j, sorted non-increasing, values[0] = λ_j1
    double omega = 0.0;
    std::optional<BisymMatrix> supplied;
};

struct SotoResult {
    BisymMatrix matrix;
    Certificate certificate;
    BisymMatrix qhat;
    Matrix x;
    Matrix b;
};

/// Rank-S construction: realizes each Γ_j, nests the blocks anti-diagonally
/// (the odd-order block, if any, at the center), and applies the rank-S
/// update with B. B is auto-solved for S <= 2, otherwise it must be given.
SotoResult construct_soto(const Spectrum& s, const std::vector<SotoBlock>& blocks,
                          const std::optional<Matrix>& b = std::nullopt);

/// Strategy cascade: small-n, then Suleimanova, then Borobia partition
/// search. Throws infeasible_error carrying every evaluated verdict.
Construction construct_auto(const Spectrum& s);

}  // namespace bniep

#endif
