#ifndef BNIEP_GLUE_HPP
#define BNIEP_GLUE_HPP

#include "bniep/core.hpp"
#include "bniep/matrix.hpp"

namespace bniep {

/// Three-block bordered assembly around A using two copies of B:
/// [[B, ρ v1 u1^T, ξ v1 v1^T], [ρ u1 v1^T, A, ρ u1 v1^T], [ξ v1 v1^T, ρ v1 u1^T, B]]
/// with u1, v1 the J-symmetric Perron unit vectors of A and B. The spectrum is
/// eig([[β1,ρ,ξ],[ρ,α1,ρ],[ξ,ρ,β1]]) plus both tails (B's twice).
BisymMatrix glue_three(const BisymMatrix& a, const BisymMatrix& b, double rho, double xi);

/// (a,b)-parametrized glue: ρ = sqrt(-(α1-β1-a)(a+b)/2), ξ = -b, giving the
/// explicit spectrum {α1-(a+b), β1+a, β1+b} plus tails. Requires
/// α1 - β1 >= a >= b and a + b <= 0.
BisymMatrix glue_ab(const BisymMatrix& a, const BisymMatrix& b, double pa, double pb);

/// Moves ε of spectral mass between the Perron roots of two realizations:
/// spectrum {α0+ε, β0-ε} plus both tails, where α0 = Perron(q1) >= β0 =
/// Perron(q2). At least one order must be even; both odd is rejected.
BisymMatrix merge_transfer(const BisymMatrix& q1, const BisymMatrix& q2, double epsilon);

/// Qhat + X(B - Ω)X^T with orthonormal J-symmetric eigenvector columns X;
/// replaces diag(Ω) in the spectrum by eig(B).
BisymMatrix rado_update(const BisymMatrix& qhat, const Matrix& x, const Matrix& b,
                        const std::vector<double>& omega, double tol = 1e-9);

/// 2x2 symmetric nonnegative matrix with eigenvalues {lam1, lam2} and
/// diagonal (w1, w2): off-diagonal c = sqrt(w1 w2 - lam1 lam2).
Matrix solve_2x2_diag(double lam1, double lam2, double w1, double w2, double tol = 1e-9);

}  // namespace bniep

#endif
