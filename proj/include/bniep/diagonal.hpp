#ifndef BNIEP_DIAGONAL_HPP
#define BNIEP_DIAGONAL_HPP

#include "bniep/conditions.hpp"
#include "bniep/constructors.hpp"
#include "bniep/spectrum.hpp"

namespace bniep {

/// Realization target with a palindromic diagonal prescription read
/// center-outward: a_m, ..., a_1, a_0 [, a_0], a_1, ..., a_m.
struct DiagonalSpec {
    Spectrum spectrum;
    std::vector<double> diag_half;  // a_0, a_1, ..., a_m

    std::size_t order() const { return spectrum.size(); }
};

/// Four-clause iff test for the 3x3 case; witness is the smallest feasible
/// j in {1, 2}.
ConditionVerdict check_diag3(double alpha0, double alpha1, double alpha2, double a0, double a1,
                             double tol = 1e-12);

/// [[a1, ρ, a1-α_j], [ρ, a0, ρ], [a1-α_j, ρ, a1]] with
/// ρ = sqrt((α0-a0)(α0+α_j-2a1)/2).
BisymMatrix construct_diag3(double alpha0, double alpha1, double alpha2, double a0, double a1);

Construction construct_diag_odd(const DiagonalSpec& spec);
Construction construct_diag_even(const DiagonalSpec& spec);

}  // namespace bniep

#endif
