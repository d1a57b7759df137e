#ifndef QRES_SCHMIDT_HPP
#define QRES_SCHMIDT_HPP

#include <cstddef>
#include <vector>

#include "qres/matrix.hpp"
#include "qres/reorderings.hpp"

namespace qres {

enum class SchmidtKind { Vector, Operator };

// Sum-of-tensor-products form: input == sum_i coefficients[i] *
// kron(left_factors[i], right_factors[i]).  Coefficients are strictly
// positive and non-increasing; factors are orthonormal (Euclidean inner
// product for columns, tr(X†Y) for matrices).
struct SchmidtResult {
  std::vector<double> coefficients;
  std::vector<ComplexMatrix> left_factors;
  std::vector<ComplexMatrix> right_factors;
  SchmidtKind kind = SchmidtKind::Vector;

  std::size_t rank() const { return coefficients.size(); }
  // Rebuilds the decomposed object from the triples.
  ComplexMatrix reconstruct() const;
};

// Decomposes a length m*n column into column factors of lengths m and n.
// The input must have positive norm.
SchmidtResult schmidt_vector(const ComplexMatrix& psi, DimPair dims);

// Decomposes a square matrix of side m*n into tensor products of an m x m
// and an n x n factor, orthonormal in the Hilbert-Schmidt inner product.
SchmidtResult schmidt_operator(const ComplexMatrix& a, DimPair dims);

// Number of coefficients exceeding tol * (largest coefficient).
std::size_t schmidt_number(const ComplexMatrix& psi, DimPair dims, double tol = 1e-10);

// True iff the column factors into a single tensor product.
bool is_separable_pure(const ComplexMatrix& psi, DimPair dims, double tol = 1e-10);

}  // namespace qres

#endif  // QRES_SCHMIDT_HPP
