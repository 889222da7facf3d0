#ifndef BNIEP_POSITIVE_HPP
#define BNIEP_POSITIVE_HPP

#include "bniep/conditions.hpp"
#include "bniep/constructors.hpp"
#include "bniep/matrix.hpp"

namespace bniep {

/// Strictly positive symmetric R with eig(S + R) = {λ0 + ε} ∪ tail(S).
/// Built by merging the irreducible components of S with rank-one couplings
/// along their strictly positive Perron vectors.
Matrix fiedler_perturb(const Matrix& s, double epsilon);

/// Lifts a nonnegative bisymmetric Q to a strictly positive one with the top
/// eigenvalue raised by ε; the half-size minus block is preserved entrywise.
Construction positify(const BisymMatrix& q, double epsilon);

/// Strict-inequality Borobia family: ε = min over the strict clauses, then
/// the nonnegative construction on (λ0 - ε, ...) followed by positify.
Construction construct_positive_borobia(const Spectrum& s, const PartitionPlan& p);

}  // namespace bniep

#endif
