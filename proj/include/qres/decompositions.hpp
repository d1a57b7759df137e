#ifndef QRES_DECOMPOSITIONS_HPP
#define QRES_DECOMPOSITIONS_HPP

#include <vector>

#include "qres/matrix.hpp"

namespace qres {

// a == u * diag(sigma) * dagger(v); u is rows x rows, v is cols x cols,
// sigma holds min(rows, cols) non-increasing non-negative values.
struct SvdResult {
  ComplexMatrix u;
  std::vector<double> sigma;
  ComplexMatrix v;
};

// values non-increasing and real; columns of vectors are the matching
// orthonormal eigenvectors.
struct EigResult {
  std::vector<double> values;
  ComplexMatrix vectors;
};

// One-sided Jacobi: rotates column pairs until mutually orthogonal,
// accumulating the rotations into v; u comes from normalizing the rotated
// columns.  Suited to the small dense matrices this library works with.
SvdResult svd(const ComplexMatrix& a);

// Cyclic Jacobi with complex plane rotations.  Input must be Hermitian
// within 1e-10 * max(1, ||a||_max).
EigResult eig_hermitian(const ComplexMatrix& a);

// Count of singular values above rel_tol * sigma_max; the numerical rank.
std::size_t numerical_rank(const std::vector<double>& sigma,
                           double rel_tol = 1e-12);

}  // namespace qres

#endif  // QRES_DECOMPOSITIONS_HPP
