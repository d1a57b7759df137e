#include "qres/channels.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>

#include "qres/decompositions.hpp"
#include "qres/errors.hpp"

namespace qres {

namespace {

constexpr double kDistributionTol = 1e-12;
constexpr double kUnitaryTol = 1e-10;

std::size_t square_side(const ComplexMatrix& m, const char* where) {
  if (!m.is_square()) {
    throw ContractViolation(std::string(where) + ": matrix must be square, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  const auto k = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(m.rows()))));
  if (m.rows() == 0 || k * k != m.rows()) {
    throw ContractViolation(std::string(where) + ": side " + std::to_string(m.rows()) +
                            " is not a perfect square");
  }
  return k;
}

std::size_t require_square_channel(const ChannelRep& c, const char* where) {
  const std::size_t in = channel_dim_in(c);
  const std::size_t out = channel_dim_out(c);
  if (in != out) {
    throw ContractViolation(std::string(where) + ": need a square channel, got " +
                            std::to_string(in) + " -> " + std::to_string(out));
  }
  return in;
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  return 0.5 * (a + dagger(a));
}

double min_eigenvalue(const ComplexMatrix& hermitian) {
  const EigResult e = eig_hermitian(hermitian);
  return e.values.back();
}

void check_distribution(const std::vector<double>& probs, const char* where) {
  double sum = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0) {
      throw ContractViolation(std::string(where) + ": probabilities must be non-negative");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kDistributionTol) {
    throw ContractViolation(std::string(where) + ": probabilities sum to " + std::to_string(sum) +
                            ", not 1");
  }
}

}  // namespace

KrausSet::KrausSet(std::vector<ComplexMatrix> ops) : operators(std::move(ops)) {
  if (operators.empty()) {
    throw ContractViolation("KrausSet: need at least one operator");
  }
  dim_out = operators.front().rows();
  dim_in = operators.front().cols();
  if (dim_out == 0 || dim_in == 0) {
    throw ContractViolation("KrausSet: operators must be non-empty matrices");
  }
  for (const ComplexMatrix& k : operators) {
    if (k.rows() != dim_out || k.cols() != dim_in) {
      throw ContractViolation("KrausSet: mixed operator shapes " + std::to_string(dim_out) + "x" +
                              std::to_string(dim_in) + " vs " + std::to_string(k.rows()) + "x" +
                              std::to_string(k.cols()));
    }
  }
}

Superoperator::Superoperator(ComplexMatrix m, std::size_t in, std::size_t out)
    : matrix(std::move(m)), dim_in(in), dim_out(out) {
  if (in == 0 || out == 0 || matrix.rows() != out * out || matrix.cols() != in * in) {
    throw ContractViolation("Superoperator: need a " + std::to_string(out * out) + "x" +
                            std::to_string(in * in) + " matrix for dims " + std::to_string(in) +
                            " -> " + std::to_string(out) + ", got " + std::to_string(matrix.rows()) +
                            "x" + std::to_string(matrix.cols()));
  }
}

Superoperator::Superoperator(ComplexMatrix m) : matrix(std::move(m)) {
  dim_in = dim_out = square_side(matrix, "Superoperator");
}

DynamicalMatrix::DynamicalMatrix(ComplexMatrix m, std::size_t in, std::size_t out)
    : matrix(std::move(m)), dim_in(in), dim_out(out) {
  if (in == 0 || out == 0 || !matrix.is_square() || matrix.rows() != in * out) {
    throw ContractViolation("DynamicalMatrix: need a square matrix of side " +
                            std::to_string(in * out) + ", got " + std::to_string(matrix.rows()) +
                            "x" + std::to_string(matrix.cols()));
  }
}

DynamicalMatrix::DynamicalMatrix(ComplexMatrix m) : matrix(std::move(m)) {
  dim_in = dim_out = square_side(matrix, "DynamicalMatrix");
}

ComplexMatrix apply_kraus(const KrausSet& k, const ComplexMatrix& rho) {
  if (!rho.is_square() || rho.rows() != k.dim_in) {
    throw ContractViolation("apply_kraus: state must be square of side " +
                            std::to_string(k.dim_in) + ", got " + std::to_string(rho.rows()) + "x" +
                            std::to_string(rho.cols()));
  }
  ComplexMatrix acc(k.dim_out, k.dim_out);
  for (const ComplexMatrix& op : k.operators) {
    acc = acc + matmul(matmul(op, rho), dagger(op));
  }
  return acc;
}

ComplexMatrix apply_superoperator(const Superoperator& s, const ComplexMatrix& rho) {
  if (!rho.is_square() || rho.rows() != s.dim_in) {
    throw ContractViolation("apply_superoperator: state must be square of side " +
                            std::to_string(s.dim_in) + ", got " + std::to_string(rho.rows()) + "x" +
                            std::to_string(rho.cols()));
  }
  return unres(matmul(s.matrix, res(rho)), {s.dim_out, s.dim_out});
}

Superoperator superop_from_kraus(const KrausSet& k) {
  ComplexMatrix acc(k.dim_out * k.dim_out, k.dim_in * k.dim_in);
  for (const ComplexMatrix& op : k.operators) {
    acc = acc + kron(op, conjugate(op));
  }
  return {std::move(acc), k.dim_in, k.dim_out};
}

Superoperator superop_from_function(const std::function<ComplexMatrix(const ComplexMatrix&)>& f,
                                    std::size_t n) {
  if (n == 0) {
    throw ContractViolation("superop_from_function: dimension must be positive");
  }
  ComplexMatrix m(n * n, n * n);
  for (std::size_t l = 0; l < n * n; ++l) {
    const ComplexMatrix image = f(ComplexMatrix::basis(n, n, l));
    if (image.rows() != n || image.cols() != n) {
      throw ContractViolation("superop_from_function: map returned " +
                              std::to_string(image.rows()) + "x" + std::to_string(image.cols()) +
                              ", expected " + std::to_string(n) + "x" + std::to_string(n));
    }
    for (std::size_t i = 0; i < n * n; ++i) m(i, l) = image[i];
  }
  return {std::move(m), n, n};
}

DynamicalMatrix dynamical_from_superop(const Superoperator& s) {
  if (s.dim_in != s.dim_out) {
    throw ContractViolation("dynamical_from_superop: need a square channel, got " +
                            std::to_string(s.dim_in) + " -> " + std::to_string(s.dim_out));
  }
  return {reshuffle(s.matrix, {s.dim_in, s.dim_in}), s.dim_in, s.dim_out};
}

KrausSet kraus_from_dynamical(const DynamicalMatrix& d) {
  const double scale = std::max(1.0, max_abs(d.matrix));
  if (hermiticity_defect(d.matrix) > kVerdictTol * scale) {
    throw ContractViolation("kraus_from_dynamical: dynamical matrix is not Hermitian");
  }
  const EigResult e = eig_hermitian(hermitian_part(d.matrix));
  const double largest = e.values.front();
  std::vector<ComplexMatrix> ops;
  for (std::size_t i = 0; i < e.values.size(); ++i) {
    double lambda = e.values[i];
    if (lambda < -kVerdictTol) {
      throw NotCompletelyPositive("kraus_from_dynamical: dynamical matrix has eigenvalue " +
                                      std::to_string(lambda),
                                  lambda);
    }
    if (lambda < 0.0) lambda = 0.0;
    if (lambda <= 1e-12 * largest) continue;
    ComplexMatrix column(d.matrix.rows(), 1);
    for (std::size_t r = 0; r < d.matrix.rows(); ++r) column[r] = e.vectors(r, i);
    ops.push_back(std::sqrt(lambda) * unres(column, {d.dim_out, d.dim_in}));
  }
  if (ops.empty()) ops.emplace_back(d.dim_out, d.dim_in);
  return KrausSet(std::move(ops));
}

ComplexMatrix jamiolkowski_state(const DynamicalMatrix& d) {
  const auto n = static_cast<double>(d.dim_in);
  const cplx tr = trace(d.matrix);
  if (std::abs(tr - cplx(n, 0.0)) > kVerdictTol) {
    throw NotTracePreserving("jamiolkowski_state: dynamical matrix has trace " +
                                 std::to_string(tr.real()) + ", expected " + std::to_string(n),
                             tr.real());
  }
  return cplx(1.0 / n, 0.0) * d.matrix;
}

Superoperator to_superoperator(const ChannelRep& c) {
  if (const auto* k = std::get_if<KrausSet>(&c)) return superop_from_kraus(*k);
  if (const auto* s = std::get_if<Superoperator>(&c)) return *s;
  const auto& d = std::get<DynamicalMatrix>(c);
  if (d.dim_in != d.dim_out) {
    throw ContractViolation("to_superoperator: need a square channel, got " +
                            std::to_string(d.dim_in) + " -> " + std::to_string(d.dim_out));
  }
  return {reshuffle(d.matrix, {d.dim_in, d.dim_in}), d.dim_in, d.dim_out};
}

DynamicalMatrix to_dynamical(const ChannelRep& c) {
  if (const auto* d = std::get_if<DynamicalMatrix>(&c)) return *d;
  return dynamical_from_superop(to_superoperator(c));
}

std::size_t channel_dim_in(const ChannelRep& c) {
  return std::visit([](const auto& rep) { return rep.dim_in; }, c);
}

std::size_t channel_dim_out(const ChannelRep& c) {
  return std::visit([](const auto& rep) { return rep.dim_out; }, c);
}

bool is_completely_positive(const ChannelRep& c, double tol) {
  require_square_channel(c, "is_completely_positive");
  const DynamicalMatrix d = to_dynamical(c);
  if (hermiticity_defect(d.matrix) > tol) return false;
  return min_eigenvalue(hermitian_part(d.matrix)) >= -tol;
}

bool is_trace_preserving(const KrausSet& k, double tol) {
  ComplexMatrix acc(k.dim_in, k.dim_in);
  for (const ComplexMatrix& op : k.operators) {
    acc = acc + matmul(dagger(op), op);
  }
  return max_abs_diff(acc, ComplexMatrix::identity(k.dim_in)) <= tol;
}

bool is_unital(const ChannelRep& c, double tol) {
  require_square_channel(c, "is_unital");
  const Superoperator s = to_superoperator(c);
  const ComplexMatrix image = apply_superoperator(s, ComplexMatrix::identity(s.dim_in));
  return max_abs_diff(image, ComplexMatrix::identity(s.dim_out)) <= tol;
}

ChannelRep depolarizing_channel(std::size_t n, double p) {
  if (n == 0) {
    throw ContractViolation("depolarizing_channel: dimension must be positive");
  }
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
    throw ContractViolation("depolarizing_channel: parameter must lie in [0, 1]");
  }
  const auto f = [n, p](const ComplexMatrix& rho) {
    const cplx mixing = trace(rho) * cplx((1.0 - p) / static_cast<double>(n), 0.0);
    return cplx(p, 0.0) * rho + mixing * ComplexMatrix::identity(n);
  };
  return superop_from_function(f, n);
}

KrausSet generalized_pauli_channel(std::size_t d, const ComplexMatrix& probs) {
  if (d == 0) {
    throw ContractViolation("generalized_pauli_channel: dimension must be positive");
  }
  if (probs.rows() != d || probs.cols() != d) {
    throw ContractViolation("generalized_pauli_channel: need a " + std::to_string(d) + "x" +
                            std::to_string(d) + " probability matrix, got " +
                            std::to_string(probs.rows()) + "x" + std::to_string(probs.cols()));
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    const cplx p = probs[k];
    if (std::abs(p.imag()) > kDistributionTol || p.real() < 0.0 || p.real() > 1.0) {
      throw ContractViolation("generalized_pauli_channel: probabilities must be reals in [0, 1]");
    }
    sum += p.real();
  }
  if (std::abs(sum - 1.0) > kDistributionTol) {
    throw ContractViolation("generalized_pauli_channel: probabilities sum to " +
                            std::to_string(sum) + ", not 1");
  }

  // Cyclic shift |j> -> |j-1 mod d| and the diagonal of d-th roots of unity.
  ComplexMatrix shift(d, d);
  ComplexMatrix phase(d, d);
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  for (std::size_t j = 0; j < d; ++j) {
    shift((j + d - 1) % d, j) = 1.0;
    phase(j, j) = std::polar(1.0, kTwoPi * static_cast<double>(j) / static_cast<double>(d));
  }

  std::vector<ComplexMatrix> shift_powers{ComplexMatrix::identity(d)};
  std::vector<ComplexMatrix> phase_powers{ComplexMatrix::identity(d)};
  for (std::size_t i = 1; i < d; ++i) {
    shift_powers.push_back(matmul(shift_powers.back(), shift));
    phase_powers.push_back(matmul(phase_powers.back(), phase));
  }

  std::vector<ComplexMatrix> ops;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double p = probs(i, j).real();
      if (p == 0.0) continue;
      ops.push_back(std::sqrt(p) * matmul(shift_powers[i], phase_powers[j]));
    }
  }
  return KrausSet(std::move(ops));
}

KrausSet random_unitary_channel(const std::vector<ComplexMatrix>& unitaries,
                                const std::vector<double>& probs) {
  if (unitaries.empty() || unitaries.size() != probs.size()) {
    throw ContractViolation("random_unitary_channel: need equally many unitaries and weights");
  }
  check_distribution(probs, "random_unitary_channel");
  const std::size_t dim = unitaries.front().rows();
  std::vector<ComplexMatrix> ops;
  for (std::size_t i = 0; i < unitaries.size(); ++i) {
    const ComplexMatrix& u = unitaries[i];
    if (!u.is_square() || u.rows() != dim) {
      throw ContractViolation("random_unitary_channel: mixed dimensions");
    }
    if (max_abs_diff(matmul(dagger(u), u), ComplexMatrix::identity(dim)) > kUnitaryTol) {
      throw ContractViolation("random_unitary_channel: member " + std::to_string(i) +
                              " is not unitary");
    }
    ops.push_back(std::sqrt(probs[i]) * u);
  }
  return KrausSet(std::move(ops));
}

Superoperator compose_channels(const ChannelRep& phi, const ChannelRep& psi) {
  const std::size_t a = require_square_channel(phi, "compose_channels");
  const std::size_t b = require_square_channel(psi, "compose_channels");
  const Superoperator sa = to_superoperator(phi);
  const Superoperator sb = to_superoperator(psi);
  // Forward: product-basis flattening -> factor-by-factor flattening; the
  // inverse permutation swaps the inner pair of the four-index split.
  const ComplexMatrix forward = reshuffle_permutation({a, b}, {a, b});
  const ComplexMatrix backward = reshuffle_permutation({a, a}, {b, b});
  ComplexMatrix m = matmul(backward, matmul(kron(sa.matrix, sb.matrix), forward));
  return {std::move(m), a * b, a * b};
}

Superoperator extend_channel(const ChannelRep& phi, std::size_t m, Side side) {
  require_square_channel(phi, "extend_channel");
  if (m == 0) {
    throw ContractViolation("extend_channel: dimension must be positive");
  }
  const ChannelRep id{Superoperator(ComplexMatrix::identity(m * m), m, m)};
  return side == Side::Left ? compose_channels(phi, id) : compose_channels(id, phi);
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, DimPair dims, Factor which) {
  if (dims.m == 0 || dims.n == 0 || !rho.is_square() || rho.rows() != dims.product()) {
    throw ContractViolation("partial_transpose: matrix must be square of side " +
                            std::to_string(dims.product()) + ", got " + std::to_string(rho.rows()) +
                            "x" + std::to_string(rho.cols()));
  }
  const std::size_t m = dims.m, n = dims.n;
  ComplexMatrix out(m * n, m * n);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d)
          out(a * n + c, b * n + d) = which == Factor::First ? rho(b * n + c, a * n + d)
                                                             : rho(a * n + d, b * n + c);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, DimPair dims, Factor which) {
  if (dims.m == 0 || dims.n == 0 || !rho.is_square() || rho.rows() != dims.product()) {
    throw ContractViolation("partial_trace: matrix must be square of side " +
                            std::to_string(dims.product()) + ", got " + std::to_string(rho.rows()) +
                            "x" + std::to_string(rho.cols()));
  }
  const std::size_t m = dims.m, n = dims.n;
  if (which == Factor::First) {
    ComplexMatrix out(n, n);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t d = 0; d < n; ++d)
        for (std::size_t a = 0; a < m; ++a) out(c, d) += rho(a * n + c, a * n + d);
    return out;
  }
  ComplexMatrix out(m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < n; ++c) out(a, b) += rho(a * n + c, b * n + c);
  return out;
}

bool is_ppt(const ComplexMatrix& rho, DimPair dims, double tol) {
  if (dims.m == 0 || dims.n == 0 || !rho.is_square() || rho.rows() != dims.product()) {
    throw ContractViolation("is_ppt: matrix must be square of side " +
                            std::to_string(dims.product()) + ", got " + std::to_string(rho.rows()) +
                            "x" + std::to_string(rho.cols()));
  }
  if (hermiticity_defect(rho) > tol) {
    throw ContractViolation("is_ppt: input is not Hermitian within tolerance");
  }
  const ComplexMatrix pt = partial_transpose(rho, dims, Factor::First);
  return min_eigenvalue(hermitian_part(pt)) >= -tol;
}

}  // namespace qres
