#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <random>
#include <utility>
#include <vector>

#include "qres/channels.hpp"
#include "qres/decompositions.hpp"
#include "qres/errors.hpp"
#include "qres/matrix.hpp"
#include "qres/reorderings.hpp"
#include "test_support.hpp"

using namespace qres;
namespace ts = test_support;

namespace {

ChannelRep transpose_channel(std::size_t n) {
  return superop_from_function([](const ComplexMatrix& rho) { return transpose(rho); }, n);
}

KrausSet amplitude_damping(double gamma) {
  ComplexMatrix k0{{1.0, 0.0}, {0.0, std::sqrt(1.0 - gamma)}};
  ComplexMatrix k1{{0.0, std::sqrt(gamma)}, {0.0, 0.0}};
  return KrausSet({k0, k1});
}

ComplexMatrix depolarized(const ComplexMatrix& rho, double p) {
  const std::size_t n = rho.rows();
  return cplx(p, 0.0) * rho +
         (trace(rho) * cplx((1.0 - p) / static_cast<double>(n), 0.0)) *
             ComplexMatrix::identity(n);
}

}  // namespace

TEST_CASE("representation containers validate their input") {
  CHECK_THROWS_AS(KrausSet({}), ContractViolation);
  CHECK_THROWS_AS(KrausSet({ComplexMatrix(2, 2), ComplexMatrix(3, 2)}), ContractViolation);
  const KrausSet rect({ComplexMatrix(3, 2)});
  CHECK(rect.dim_in == 2);
  CHECK(rect.dim_out == 3);

  CHECK_THROWS_AS(Superoperator(ComplexMatrix(4, 4), 3, 2), ContractViolation);
  CHECK_THROWS_AS(Superoperator(ComplexMatrix(5, 5)), ContractViolation);
  CHECK_THROWS_AS(Superoperator(ComplexMatrix(9, 4)), ContractViolation);
  const Superoperator rectangular(ComplexMatrix(9, 4), 2, 3);
  CHECK(rectangular.dim_in == 2);
  CHECK(rectangular.dim_out == 3);
  CHECK(Superoperator(ComplexMatrix(9, 9)).dim_in == 3);
  CHECK_THROWS_AS(DynamicalMatrix(ComplexMatrix(4, 9)), ContractViolation);
  CHECK(DynamicalMatrix(ComplexMatrix(4, 4)).dim_out == 2);
  CHECK(DynamicalMatrix(ComplexMatrix(6, 6), 2, 3).dim_out == 3);
}

TEST_CASE("kraus action and its flattened form agree") {
  std::mt19937 rng(51);
  for (std::size_t n : {2, 3}) {
    const KrausSet k = ts::random_cptp_kraus(rng, n, 3);
    const Superoperator m = superop_from_kraus(k);
    const DynamicalMatrix d = to_dynamical(m);
    for (int rep = 0; rep < 5; ++rep) {
      const ComplexMatrix rho = ts::random_density(rng, n);
      const ComplexMatrix direct = apply_kraus(k, rho);
      CHECK(max_abs_diff(direct, apply_superoperator(m, rho)) <= 1e-12);
      // Dynamical route: rho_out = partial-trace contraction of D against rho^T.
      const ComplexMatrix back = apply_superoperator(to_superoperator(d), rho);
      CHECK(max_abs_diff(direct, back) <= 1e-12);
      CHECK(trace(direct).real() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  const KrausSet ident({ComplexMatrix::identity(3)});
  const ComplexMatrix rho = ts::random_density(rng, 3);
  CHECK(max_abs_diff(apply_kraus(ident, rho), rho) == 0.0);
  CHECK_THROWS_AS(apply_kraus(ident, ComplexMatrix(2, 2)), ContractViolation);
}

TEST_CASE("superoperator of a map function matches the trace-form oracle") {
  std::mt19937 rng(52);
  const ComplexMatrix h = ts::random_matrix(rng, 3, 3);
  const auto conjugation = [&](const ComplexMatrix& rho) {
    return matmul(h, matmul(rho, dagger(h)));
  };
  const Superoperator s = superop_from_function(conjugation, 3);
  CHECK(max_abs_diff(s.matrix, ts::oracle_superop(conjugation, 3)) <= 1e-13);
  CHECK(max_abs_diff(s.matrix, kron(h, conjugate(h))) <= 1e-13);

  // The transposition map has the factor-swap permutation as its matrix.
  const Superoperator t = to_superoperator(transpose_channel(2));
  CHECK(max_abs_diff(t.matrix, swap_matrix(4)) == 0.0);
}

TEST_CASE("dynamical matrix of the transposition map is its own superoperator") {
  const Superoperator t = to_superoperator(transpose_channel(2));
  const DynamicalMatrix d = to_dynamical(transpose_channel(2));
  CHECK(max_abs_diff(d.matrix, t.matrix) == 0.0);

  // Its spectrum {-1, 1, 1, 1} certifies the map is not completely positive.
  const EigResult e = eig_hermitian(d.matrix);
  CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(e.values[3] == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK_FALSE(is_completely_positive(transpose_channel(2)));
  CHECK_THROWS_AS(kraus_from_dynamical(d), NotCompletelyPositive);
}

TEST_CASE("channel representations convert back and forth") {
  std::mt19937 rng(53);
  for (std::size_t n : {2, 3, 4}) {
    const KrausSet k = ts::random_cptp_kraus(rng, n, 2);
    const Superoperator m = superop_from_kraus(k);
    const DynamicalMatrix d = to_dynamical(k);

    // Reshuffle is involutive, so the round trip is exact.
    CHECK(max_abs_diff(to_superoperator(d).matrix, m.matrix) == 0.0);

    // Canonical operators from the dynamical matrix rebuild the same map.
    const KrausSet canonical = kraus_from_dynamical(d);
    CHECK(max_abs_diff(superop_from_kraus(canonical).matrix, m.matrix) <= 1e-10);
    CHECK(canonical.operators.size() <= n * n);

    // Trace-preserving channels have tr(D) equal to the input dimension.
    CHECK(trace(d.matrix).real() == doctest::Approx(static_cast<double>(n)).epsilon(1e-12));

    CHECK(channel_dim_in(ChannelRep(k)) == n);
    CHECK(channel_dim_out(ChannelRep(m)) == n);
    CHECK(is_completely_positive(ChannelRep(d)));
    CHECK(is_trace_preserving(k));
  }
}

TEST_CASE("jamiolkowski states of simple channels") {
  const KrausSet ident({ComplexMatrix::identity(2)});
  CHECK(max_abs_diff(jamiolkowski_state(to_dynamical(ident)), ts::bell_projector()) <= 1e-14);

  const ChannelRep depol = depolarizing_channel(2, 0.0);
  CHECK(max_abs_diff(jamiolkowski_state(to_dynamical(depol)),
                     cplx(0.25, 0.0) * ComplexMatrix::identity(4)) <= 1e-14);

  const KrausSet shrunk({cplx(0.5, 0.0) * ComplexMatrix::identity(2)});
  CHECK_THROWS_AS(jamiolkowski_state(to_dynamical(shrunk)), NotTracePreserving);
}

TEST_CASE("verdicts separate trace preservation from unitality") {
  const KrausSet damp = amplitude_damping(0.3);
  CHECK(is_trace_preserving(damp));
  CHECK(is_completely_positive(ChannelRep(damp)));
  CHECK_FALSE(is_unital(ChannelRep(damp)));

  const KrausSet pumped({dagger(damp.operators[0]), dagger(damp.operators[1])});
  CHECK_FALSE(is_trace_preserving(pumped));
  CHECK(is_unital(ChannelRep(pumped)));

  CHECK(is_unital(transpose_channel(3)));
  CHECK(is_unital(depolarizing_channel(3, 0.4)));
}

TEST_CASE("depolarizing channel matches its closed forms") {
  std::mt19937 rng(54);
  for (double p : {0.0, 0.3, 0.5, 1.0}) {
    const ChannelRep chan = depolarizing_channel(2, p);
    const Superoperator m = to_superoperator(chan);
    const ComplexMatrix rho = ts::random_density(rng, 2);
    CHECK(max_abs_diff(apply_superoperator(m, rho), depolarized(rho, p)) <= 1e-13);

    // Pinned dynamical matrix over the computational basis.
    const ComplexMatrix expected{{(p + 1.0) / 2.0, 0.0, 0.0, p},
                                 {0.0, (1.0 - p) / 2.0, 0.0, 0.0},
                                 {0.0, 0.0, (1.0 - p) / 2.0, 0.0},
                                 {p, 0.0, 0.0, (p + 1.0) / 2.0}};
    const DynamicalMatrix d = to_dynamical(chan);
    CHECK(max_abs_diff(d.matrix, expected) <= 1e-14);

    // Spectrum of that matrix: (1+3p)/2 once and (1-p)/2 three times.
    const EigResult e = eig_hermitian(d.matrix);
    CHECK(e.values[0] == doctest::Approx((1.0 + 3.0 * p) / 2.0).epsilon(1e-12));
    for (int i = 1; i < 4; ++i)
      CHECK(e.values[i] == doctest::Approx((1.0 - p) / 2.0).epsilon(1e-12));

    // Equivalent mixture of the identity and the three spin flips.
    const double lam = std::sqrt((1.0 + 3.0 * p) / 4.0);
    const double mu = std::sqrt((1.0 - p) / 4.0);
    const KrausSet pauli_form({cplx(lam, 0.0) * ComplexMatrix::identity(2),
                               cplx(mu, 0.0) * ts::pauli_x(), cplx(mu, 0.0) * ts::pauli_y(),
                               cplx(mu, 0.0) * ts::pauli_z()});
    CHECK(max_abs_diff(superop_from_kraus(pauli_form).matrix, m.matrix) <= 1e-13);

    CHECK(is_completely_positive(chan));
    CHECK(is_unital(chan));
  }
  CHECK_THROWS_AS(depolarizing_channel(2, -0.1), ContractViolation);
  CHECK_THROWS_AS(depolarizing_channel(2, 1.5), ContractViolation);
  CHECK_THROWS_AS(depolarizing_channel(0, 0.5), ContractViolation);
}

TEST_CASE("generalized pauli channel in dimension two") {
  ComplexMatrix delta(2, 2);
  delta(0, 0) = 1.0;
  const KrausSet ident = generalized_pauli_channel(2, delta);
  CHECK(ident.operators.size() == 1);
  CHECK(max_abs_diff(superop_from_kraus(ident).matrix, ComplexMatrix::identity(4)) <= 1e-14);

  // Probabilities placed on (i, j) weight the word X^i Z^j.
  ComplexMatrix probs{{0.4, 0.3}, {0.2, 0.1}};
  const KrausSet k = generalized_pauli_channel(2, probs);
  REQUIRE(k.operators.size() == 4);
  const KrausSet manual({cplx(std::sqrt(0.4), 0.0) * ComplexMatrix::identity(2),
                         cplx(std::sqrt(0.3), 0.0) * ts::pauli_z(),
                         cplx(std::sqrt(0.2), 0.0) * ts::pauli_x(),
                         cplx(std::sqrt(0.1), 0.0) * matmul(ts::pauli_x(), ts::pauli_z())});
  CHECK(max_abs_diff(superop_from_kraus(k).matrix, superop_from_kraus(manual).matrix) <= 1e-14);
}

TEST_CASE("generalized pauli channels are trace preserving and unital") {
  std::mt19937 rng(55);
  for (std::size_t d : {2, 3}) {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    ComplexMatrix probs(d, d);
    double total = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
      probs[k] = dist(rng);
      total += probs[k].real();
    }
    for (std::size_t k = 0; k < probs.size(); ++k) probs[k] = probs[k].real() / total;

    const KrausSet chan = generalized_pauli_channel(d, probs);
    CHECK(is_trace_preserving(chan));
    CHECK(is_unital(ChannelRep(chan)));
    CHECK(is_completely_positive(ChannelRep(chan)));
  }

  ComplexMatrix bad{{0.5, 0.6}, {0.0, -0.1}};
  CHECK_THROWS_AS(generalized_pauli_channel(2, bad), ContractViolation);
  ComplexMatrix off_sum{{0.5, 0.1}, {0.1, 0.1}};
  CHECK_THROWS_AS(generalized_pauli_channel(2, off_sum), ContractViolation);
  ComplexMatrix imag_entry{{cplx(0.5, 0.2), 0.5}, {0.0, 0.0}};
  CHECK_THROWS_AS(generalized_pauli_channel(2, imag_entry), ContractViolation);
}

TEST_CASE("random unitary mixtures") {
  std::mt19937 rng(56);
  const std::vector<ComplexMatrix> us = {ts::random_unitary(rng, 2), ts::random_unitary(rng, 2),
                                         ts::random_unitary(rng, 2)};
  const std::vector<double> ps = {0.5, 0.3, 0.2};
  const KrausSet k = random_unitary_channel(us, ps);
  CHECK(is_trace_preserving(k));
  CHECK(is_unital(ChannelRep(k)));

  ComplexMatrix mix(4, 4);
  for (std::size_t i = 0; i < 3; ++i)
    mix = mix + cplx(ps[i], 0.0) * kron(us[i], conjugate(us[i]));
  CHECK(max_abs_diff(superop_from_kraus(k).matrix, mix) <= 1e-14);

  CHECK_THROWS_AS(random_unitary_channel({ts::random_matrix(rng, 2, 2)}, {1.0}),
                  ContractViolation);
  CHECK_THROWS_AS(random_unitary_channel(us, {0.5, 0.5}), ContractViolation);
  CHECK_THROWS_AS(random_unitary_channel(us, {0.5, 0.6, -0.1}), ContractViolation);
}

TEST_CASE("product channels act factor by factor") {
  std::mt19937 rng(57);
  const KrausSet phi = ts::random_cptp_kraus(rng, 2, 2);
  const KrausSet psi = ts::random_cptp_kraus(rng, 3, 2);
  const Superoperator prod = compose_channels(ChannelRep(phi), ChannelRep(psi));
  CHECK(prod.dim_in == 6);

  for (int rep = 0; rep < 5; ++rep) {
    const ComplexMatrix ra = ts::random_density(rng, 2);
    const ComplexMatrix rb = ts::random_density(rng, 3);
    const ComplexMatrix expected = kron(apply_kraus(phi, ra), apply_kraus(psi, rb));
    CHECK(max_abs_diff(apply_superoperator(prod, kron(ra, rb)), expected) <= 1e-12);
  }

  const KrausSet ident2({ComplexMatrix::identity(2)});
  const Superoperator both = compose_channels(ChannelRep(ident2), ChannelRep(ident2));
  CHECK(max_abs_diff(both.matrix, ComplexMatrix::identity(16)) == 0.0);
}

TEST_CASE("extending a channel by an inert factor") {
  // Transposing only the first qubit of a two-qubit system.
  const Superoperator left = extend_channel(transpose_channel(2), 2, Side::Left);
  const std::size_t cols[] = {1, 2, 9, 10, 5, 6, 13, 14, 3, 4, 11, 12, 7, 8, 15, 16};
  REQUIRE(left.matrix.rows() == 16);
  for (std::size_t r = 0; r < 16; ++r)
    for (std::size_t c = 0; c < 16; ++c)
      CHECK(left.matrix(r, c) == (c == cols[r] - 1 ? cplx(1.0, 0.0) : cplx(0.0, 0.0)));

  const KrausSet ident2({ComplexMatrix::identity(2)});
  const Superoperator via_product = compose_channels(transpose_channel(2), ChannelRep(ident2));
  CHECK(max_abs_diff(left.matrix, via_product.matrix) == 0.0);

  // The extension really acts as transpose (x) identity.
  std::mt19937 rng(58);
  const ComplexMatrix ra = ts::random_density(rng, 2);
  const ComplexMatrix rb = ts::random_density(rng, 2);
  CHECK(max_abs_diff(apply_superoperator(left, kron(ra, rb)), kron(transpose(ra), rb)) <= 1e-13);

  const Superoperator right = extend_channel(transpose_channel(2), 2, Side::Right);
  CHECK(max_abs_diff(apply_superoperator(right, kron(ra, rb)), kron(ra, transpose(rb))) <= 1e-13);
}

TEST_CASE("partial transpose by factor") {
  std::mt19937 rng(59);
  const ComplexMatrix a = ts::random_matrix(rng, 2, 2);
  const ComplexMatrix b = ts::random_matrix(rng, 3, 3);
  CHECK(max_abs_diff(partial_transpose(kron(a, b), {2, 3}, Factor::First),
                     kron(transpose(a), b)) == 0.0);
  CHECK(max_abs_diff(partial_transpose(kron(a, b), {2, 3}, Factor::Second),
                     kron(a, transpose(b))) == 0.0);

  // Applying it to both factors in turn gives the full transpose.
  const ComplexMatrix rho = ts::random_matrix(rng, 6, 6);
  const ComplexMatrix both =
      partial_transpose(partial_transpose(rho, {2, 3}, Factor::First), {2, 3}, Factor::Second);
  CHECK(max_abs_diff(both, transpose(rho)) == 0.0);
  CHECK(max_abs_diff(partial_transpose(partial_transpose(rho, {2, 3}, Factor::First), {2, 3},
                                       Factor::First),
                     rho) == 0.0);
  CHECK(trace(partial_transpose(rho, {2, 3}, Factor::First)) == trace(rho));

  CHECK_THROWS_AS(partial_transpose(rho, {2, 2}, Factor::First), ContractViolation);
}

TEST_CASE("partial trace by factor") {
  std::mt19937 rng(60);
  const ComplexMatrix a = ts::random_matrix(rng, 2, 2);
  const ComplexMatrix b = ts::random_matrix(rng, 3, 3);
  CHECK(max_abs_diff(partial_trace(kron(a, b), {2, 3}, Factor::First), trace(a) * b) <= 1e-14);
  CHECK(max_abs_diff(partial_trace(kron(a, b), {2, 3}, Factor::Second), trace(b) * a) <= 1e-14);

  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {3, 2}}) {
    const ComplexMatrix rho = ts::random_matrix(rng, m * n, m * n);
    for (Factor f : {Factor::First, Factor::Second}) {
      const ComplexMatrix reduced = partial_trace(rho, {m, n}, f);
      CHECK(max_abs_diff(reduced, ts::oracle_partial_trace(rho, {m, n}, f)) <= 1e-14);
      CHECK(std::abs(trace(reduced) - trace(rho)) <= 1e-13);
    }
  }

  // Reduction of the maximally entangled projector is maximally mixed.
  const ComplexMatrix reduced = partial_trace(ts::bell_projector(), {2, 2}, Factor::First);
  CHECK(max_abs_diff(reduced, cplx(0.5, 0.0) * ComplexMatrix::identity(2)) <= 1e-14);

  CHECK_THROWS_AS(partial_trace(ComplexMatrix(6, 6), {2, 2}, Factor::First), ContractViolation);
}

TEST_CASE("positivity of the partial transpose detects two-qubit entanglement") {
  CHECK_FALSE(is_ppt(ts::bell_projector(), {2, 2}));
  CHECK(is_ppt(cplx(0.25, 0.0) * ComplexMatrix::identity(4), {2, 2}));

  for (double w : {0.0, 0.2, 1.0 / 3.0, 0.4, 0.7, 1.0}) {
    const ComplexMatrix rho = ts::werner_state(w);
    CHECK(is_ppt(rho, {2, 2}) == (w <= 1.0 / 3.0 + 1e-12));

    // Smallest eigenvalue of the partially transposed state is (1 - 3w) / 4.
    const EigResult e = eig_hermitian(partial_transpose(rho, {2, 2}, Factor::First));
    CHECK(e.values.back() == doctest::Approx((1.0 - 3.0 * w) / 4.0).epsilon(1e-12));
  }

  ComplexMatrix not_hermitian(4, 4);
  not_hermitian(0, 1) = 1.0;
  CHECK_THROWS_AS(is_ppt(not_hermitian, {2, 2}), ContractViolation);
}
