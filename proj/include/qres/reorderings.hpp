#ifndef QRES_REORDERINGS_HPP
#define QRES_REORDERINGS_HPP

#include <cstddef>

#include "qres/matrix.hpp"

namespace qres {

// Bipartite split (m, n): first factor dimension m, second n.
struct DimPair {
  std::size_t m;
  std::size_t n;
  std::size_t product() const { return m * n; }
};

// Row-major flattening into an (rows*cols) x 1 column vector.
ComplexMatrix res(const ComplexMatrix& a);
// Column-major flattening.
ComplexMatrix vec(const ComplexMatrix& a);
// Inverse of res: refill an m x n matrix row by row.
ComplexMatrix unres(const ComplexMatrix& v, DimPair dims);
// Inverse of vec: refill column by column.
ComplexMatrix unvec(const ComplexMatrix& v, DimPair dims);

// Reshuffle of a square matrix of side m*n over the split (m, n): entry
// (i, j) of the m^2 x n^2 result is the coefficient of a on the basis
// element eps_i (x) eps_j, with both factor bases enumerated in res order.
// Equivalently B[(a,b),(c,d)] = A[(a,c),(b,d)].
ComplexMatrix reshuffle(const ComplexMatrix& a, DimPair dims);
// Variant with both factor bases enumerated in transposed (vec) order;
// the result is n^2 x m^2 and satisfies B' = (S B S)^T against the standard
// reshuffle for symmetric splits.
ComplexMatrix reshuffle_alt(const ComplexMatrix& a, DimPair dims);

// Permutation matrix carrying res(A) to res of the reshuffled A, where the
// row space of A splits as dims_out and the column space as dims_in.  For a
// superoperator those are the output and input operator-space splits; the
// plain reshuffle of a square matrix over (m, n) corresponds to
// reshuffle_permutation((m, n), (m, n)).  The inverse permutation is
// reshuffle_permutation((r.m, c.m), (r.n, c.n)) for input (r, c).
ComplexMatrix reshuffle_permutation(DimPair dims_out, DimPair dims_in);

// P(m, n): permutation with res(transpose(A)) = P(m, n) * res(A) for every
// m x n matrix A.  P(2, 2) is the two-qubit SWAP.
ComplexMatrix transpose_permutation(DimPair dims);

// Swap of two k-dimensional tensor factors; d must equal k^2.
// S * (x (x) y) = y (x) x; S = P(k, k).
ComplexMatrix swap_matrix(std::size_t d);

}  // namespace qres

#endif  // QRES_REORDERINGS_HPP
