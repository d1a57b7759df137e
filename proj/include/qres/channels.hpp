#ifndef QRES_CHANNELS_HPP
#define QRES_CHANNELS_HPP

#include <cstddef>
#include <functional>
#include <variant>
#include <vector>

#include "qres/matrix.hpp"
#include "qres/reorderings.hpp"

namespace qres {

// Channel as a set of operators K_i acting by rho -> sum_i K_i rho K_i†.
struct KrausSet {
  std::vector<ComplexMatrix> operators;
  std::size_t dim_in = 0;
  std::size_t dim_out = 0;

  // Validates: non-empty, identical shapes; derives dim_out x dim_in.
  explicit KrausSet(std::vector<ComplexMatrix> ops);
};

// Channel as the matrix acting on row-major-flattened operators:
// res(rho_out) = matrix * res(rho_in).
struct Superoperator {
  ComplexMatrix matrix;
  std::size_t dim_in = 0;
  std::size_t dim_out = 0;

  Superoperator(ComplexMatrix m, std::size_t in, std::size_t out);
  // Square channel: infers the side from the matrix, which must be
  // k^2 x k^2.
  explicit Superoperator(ComplexMatrix m);
};

// Channel as the reshuffled superoperator (unnormalized): positive
// semidefinite exactly for completely positive maps.
struct DynamicalMatrix {
  ComplexMatrix matrix;
  std::size_t dim_in = 0;
  std::size_t dim_out = 0;

  DynamicalMatrix(ComplexMatrix m, std::size_t in, std::size_t out);
  // Square channel: infers the side from the matrix, which must be
  // k^2 x k^2.
  explicit DynamicalMatrix(ComplexMatrix m);
};

using ChannelRep = std::variant<KrausSet, Superoperator, DynamicalMatrix>;

enum class Side { Left, Right };
enum class Factor { First, Second };

// Default threshold for the boolean verdicts below.
inline constexpr double kVerdictTol = 1e-8;

// sum_i K_i rho K_i†; rho must be square of side dim_in.
ComplexMatrix apply_kraus(const KrausSet& k, const ComplexMatrix& rho);

// unres(matrix * res(rho)); rho must be square of side dim_in.
ComplexMatrix apply_superoperator(const Superoperator& s, const ComplexMatrix& rho);

// M = sum_i K_i (x) conj(K_i).
Superoperator superop_from_kraus(const KrausSet& k);

// Matrix of an arbitrary linear map on n x n matrices: column l is the
// flattened image of the l-th canonical basis matrix.
Superoperator superop_from_function(const std::function<ComplexMatrix(const ComplexMatrix&)>& f,
                                    std::size_t n);

// D = reshuffle(M, (n, n)); requires a square channel.
DynamicalMatrix dynamical_from_superop(const Superoperator& s);

// Canonical operators sqrt(lambda_i) * unres(v_i) from the
// eigendecomposition of the dynamical matrix.  Eigenvalues in [-1e-8, 0)
// are clamped to zero; anything lower raises NotCompletelyPositive.
KrausSet kraus_from_dynamical(const DynamicalMatrix& d);

// D / dim_in: a density matrix when the channel is CPTP.  Raises
// NotTracePreserving when tr(D) strays from dim_in by more than 1e-8.
ComplexMatrix jamiolkowski_state(const DynamicalMatrix& d);

// Representation conversions (square channel where a reshuffle is involved).
Superoperator to_superoperator(const ChannelRep& c);
DynamicalMatrix to_dynamical(const ChannelRep& c);

std::size_t channel_dim_in(const ChannelRep& c);
std::size_t channel_dim_out(const ChannelRep& c);

// True iff the dynamical matrix is Hermitian within tol with all
// eigenvalues >= -tol.
bool is_completely_positive(const ChannelRep& c, double tol = kVerdictTol);

// True iff ||sum_i K_i† K_i - identity||_max <= tol.
bool is_trace_preserving(const KrausSet& k, double tol = kVerdictTol);

// True iff the channel fixes the identity operator within tol.
bool is_unital(const ChannelRep& c, double tol = kVerdictTol);

// rho -> p*rho + (1-p)*(tr rho)*identity/n, built from its action.
ChannelRep depolarizing_channel(std::size_t n, double p);

// Kraus set {sqrt(p_ij) * X^i * Z^j} over the cyclic shift X and phase
// matrix Z in dimension d; zero-probability terms are omitted.
KrausSet generalized_pauli_channel(std::size_t d, const ComplexMatrix& probs);

// Kraus set {sqrt(p_i) * U_i} from a probability mixture of unitaries.
KrausSet random_unitary_channel(const std::vector<ComplexMatrix>& unitaries,
                                const std::vector<double>& probs);

// Superoperator of the product channel acting on the tensor-product
// system, via the base-change permutations between the flattened product
// order and the factor-by-factor order.
Superoperator compose_channels(const ChannelRep& phi, const ChannelRep& psi);

// Tensor the channel with the identity on an m-dimensional system; Left
// keeps the channel on the first factor.
Superoperator extend_channel(const ChannelRep& phi, std::size_t m, Side side);

// Transpose one tensor factor of a square matrix over the (m, n) split.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, DimPair dims, Factor which);

// Contract the indices of one tensor factor; preserves the trace.
ComplexMatrix partial_trace(const ComplexMatrix& rho, DimPair dims, Factor which);

// True iff the partial transpose over the first factor has minimum
// eigenvalue >= -tol; input must be Hermitian within tol.
bool is_ppt(const ComplexMatrix& rho, DimPair dims, double tol = kVerdictTol);

}  // namespace qres

#endif  // QRES_CHANNELS_HPP
