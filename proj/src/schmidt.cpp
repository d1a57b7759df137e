#include "qres/schmidt.hpp"

#include <cstddef>
#include <string>

#include "qres/decompositions.hpp"
#include "qres/errors.hpp"

namespace qres {

namespace {

// Relative cutoff below which singular values count as numerical zeros.
constexpr double kTruncation = 1e-12;

ComplexMatrix matrix_column(const ComplexMatrix& a, std::size_t j) {
  ComplexMatrix out(a.rows(), 1);
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = a(i, j);
  return out;
}

// Shared core: SVD of the rearranged coefficient matrix c, keeping triples
// (sigma_l, column l of U, conjugated column l of V) above the cutoff.
SchmidtResult from_coefficient_matrix(const ComplexMatrix& c, SchmidtKind kind) {
  const SvdResult s = svd(c);
  const double largest = s.sigma.empty() ? 0.0 : s.sigma.front();
  SchmidtResult out;
  out.kind = kind;
  for (std::size_t l = 0; l < s.sigma.size(); ++l) {
    if (s.sigma[l] <= kTruncation * largest) break;
    out.coefficients.push_back(s.sigma[l]);
    out.left_factors.push_back(matrix_column(s.u, l));
    out.right_factors.push_back(conjugate(matrix_column(s.v, l)));
  }
  return out;
}

}  // namespace

ComplexMatrix SchmidtResult::reconstruct() const {
  if (coefficients.empty()) {
    throw ContractViolation("reconstruct: empty decomposition has no defined shape");
  }
  ComplexMatrix out = kron(left_factors[0], right_factors[0]);
  ComplexMatrix acc = coefficients[0] * out;
  for (std::size_t l = 1; l < coefficients.size(); ++l) {
    acc = acc + coefficients[l] * kron(left_factors[l], right_factors[l]);
  }
  return acc;
}

SchmidtResult schmidt_vector(const ComplexMatrix& psi, DimPair dims) {
  if (!psi.is_column() || psi.rows() != dims.product()) {
    throw ContractViolation("schmidt_vector: need a " + std::to_string(dims.product()) +
                            "-entry column, got " + std::to_string(psi.rows()) + "x" +
                            std::to_string(psi.cols()));
  }
  if (max_abs(psi) == 0.0) {
    throw ContractViolation("schmidt_vector: zero vector has no decomposition");
  }
  return from_coefficient_matrix(unres(psi, dims), SchmidtKind::Vector);
}

SchmidtResult schmidt_operator(const ComplexMatrix& a, DimPair dims) {
  if (!a.is_square() || a.rows() != dims.product()) {
    throw ContractViolation("schmidt_operator: matrix must be square of side " +
                            std::to_string(dims.product()) + ", got " + std::to_string(a.rows()) +
                            "x" + std::to_string(a.cols()));
  }
  SchmidtResult out = from_coefficient_matrix(reshuffle(a, dims), SchmidtKind::Operator);
  for (std::size_t l = 0; l < out.rank(); ++l) {
    out.left_factors[l] = unres(out.left_factors[l], {dims.m, dims.m});
    out.right_factors[l] = unres(out.right_factors[l], {dims.n, dims.n});
  }
  return out;
}

std::size_t schmidt_number(const ComplexMatrix& psi, DimPair dims, double tol) {
  if (tol < 0.0) {
    throw ContractViolation("schmidt_number: tolerance must be non-negative");
  }
  if (!psi.is_column() || psi.rows() != dims.product()) {
    throw ContractViolation("schmidt_number: need a " + std::to_string(dims.product()) +
                            "-entry column, got " + std::to_string(psi.rows()) + "x" +
                            std::to_string(psi.cols()));
  }
  if (max_abs(psi) == 0.0) {
    throw ContractViolation("schmidt_number: zero vector has no decomposition");
  }
  const SvdResult s = svd(unres(psi, dims));
  const double largest = s.sigma.front();
  std::size_t count = 0;
  for (double sv : s.sigma) {
    if (sv > tol * largest) ++count;
  }
  return count;
}

bool is_separable_pure(const ComplexMatrix& psi, DimPair dims, double tol) {
  return schmidt_number(psi, dims, tol) == 1;
}

}  // namespace qres
