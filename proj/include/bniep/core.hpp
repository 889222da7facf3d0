#ifndef BNIEP_CORE_HPP
#define BNIEP_CORE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "bniep/eigen.hpp"
#include "bniep/matrix.hpp"
#include "bniep/spectrum.hpp"

namespace bniep {

/// Block decomposition of a bisymmetric matrix of order n = 2m (even) or
/// n = 2m+1 (odd): A symmetric, C^T = JCJ, plus center column x and scalar p
/// in the odd case.
struct CantoniButlerForm {
    bool odd = false;
    Matrix a;                // m x m, symmetric
    Matrix c;                // m x m, C^T = JCJ
    std::vector<double> x;   // odd only
    double p = 0.0;          // odd only

    std::size_t order() const { return odd ? 2 * a.rows() + 1 : 2 * a.rows(); }
};

CantoniButlerForm cb_form(const BisymMatrix& q);
BisymMatrix cb_compose(const CantoniButlerForm& parts);

/// Half-size reduction: Q is orthogonally similar to diag(minus, plus) where
/// minus = A - JC and plus = A + JC, bordered by (p, sqrt(2) x) in the odd
/// case. plus carries the Perron root.
struct CbSplit {
    Matrix minus_block;
    Matrix plus_block;
};

CbSplit cb_split(const BisymMatrix& q);

/// Perron root with a unit eigenvector satisfying Jv = v exactly and v >= 0.
struct PerronPair {
    double root;
    std::vector<double> vector;
};

PerronPair perron_pair(const BisymMatrix& q, double tol = 1e-9);

struct VerificationReport {
    bool is_symmetric = false;
    bool is_persymmetric = false;
    double min_entry = 0.0;
    double spectrum_deviation = 0.0;
    bool pass = false;
    double tol_used = 0.0;
};

VerificationReport verify_realization(const BisymMatrix& q, const Spectrum& target, double tol = 1e-9);

/// Same report for a plain matrix, so structurally invalid inputs can be
/// inspected rather than rejected up front.
VerificationReport verify_matrix(const Matrix& q, const Spectrum& target, double tol = 1e-9);

/// [[A, 0, JCJ], [0, Q, 0], [C, 0, JAJ]]: wraps an even-order bisymmetric
/// shell around an inner bisymmetric matrix; spectrum is the disjoint union.
BisymMatrix nest(const BisymMatrix& outer_even, const BisymMatrix& inner);

/// Shell carrying the pair {hi, lo}: entries (hi+lo)/2 and (hi-lo)/2.
BisymMatrix nest_pair(double hi, double lo, const BisymMatrix& inner);

/// 2x2 bisymmetric matrix with eigenvalues {hi, lo}; needs hi + lo >= 0.
BisymMatrix pair_matrix(double hi, double lo);

/// Inserts a scalar eigenvalue at the center of an even-order matrix; for an
/// odd-order matrix recombines the half-size blocks, which can fail
/// nonnegativity and then throws.
BisymMatrix center_insert(const BisymMatrix& q, double value);

BisymMatrix zero_bisym(std::size_t n);
BisymMatrix scalar_bisym(double value);

}  // namespace bniep

#endif
