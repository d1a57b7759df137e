#include "qres/decompositions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qres/errors.hpp"

namespace qres {

namespace {

constexpr int kMaxSweeps = 100;
// Convergence: off-diagonal mass below this fraction of the Frobenius scale.
constexpr double kConvergence = 1e-14;

// Jacobi tangent for the 2x2 symmetric problem [[alpha, g],[g, beta]], g > 0.
// Root of t^2 + 2*theta*t - 1 = 0 with the smaller magnitude, which keeps
// rotation angles below pi/4 and the iteration stable.
double jacobi_tangent(double alpha, double beta, double g) {
  const double theta = (beta - alpha) / (2.0 * g);
  if (!std::isfinite(theta)) return 0.0;
  const double sign = theta >= 0.0 ? 1.0 : -1.0;
  return sign / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
}

// Fill any unset columns of u (marked by `have`) with vectors orthonormal to
// the rest: orthogonalize each standard basis vector against the set columns
// (two Gram-Schmidt passes keep orthogonality near round-off) and keep the
// candidate with the largest residual.  That residual is at least 1/sqrt(m)
// whenever a direction is still missing, so the floor below only guards
// against a corrupted basis.
void complete_basis(ComplexMatrix& u, std::vector<bool>& have) {
  const std::size_t m = u.rows();
  for (std::size_t j = 0; j < u.cols(); ++j) {
    if (have[j]) continue;
    std::vector<cplx> best;
    double best_nrm = 0.0;
    for (std::size_t cand = 0; cand < m; ++cand) {
      std::vector<cplx> r(m, cplx(0.0, 0.0));
      r[cand] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < u.cols(); ++k) {
          if (!have[k]) continue;
          cplx dot(0.0, 0.0);
          for (std::size_t i = 0; i < m; ++i) dot += std::conj(u(i, k)) * r[i];
          for (std::size_t i = 0; i < m; ++i) r[i] -= dot * u(i, k);
        }
      }
      double nrm = 0.0;
      for (std::size_t i = 0; i < m; ++i) nrm += std::norm(r[i]);
      nrm = std::sqrt(nrm);
      if (nrm > best_nrm) {
        best_nrm = nrm;
        best = std::move(r);
      }
      if (best_nrm > 0.7) break;  // already far from the span; good enough
    }
    if (best_nrm <= 1e-6) {
      throw NumericalFailure("svd: failed to complete orthonormal basis", 0);
    }
    for (std::size_t i = 0; i < m; ++i) u(i, j) = best[i] / best_nrm;
    have[j] = true;
  }
}

// Core one-sided Jacobi for m >= n.
SvdResult svd_tall(const ComplexMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  ComplexMatrix w = a;
  ComplexMatrix v = ComplexMatrix::identity(n);

  double total = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) total += std::norm(w[k]);

  if (total > 0.0) {
    int rotating_sweeps = 0;
    while (true) {
      std::size_t rotations = 0;
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          double alpha = 0.0, beta = 0.0;
          cplx gamma(0.0, 0.0);
          for (std::size_t i = 0; i < m; ++i) {
            alpha += std::norm(w(i, p));
            beta += std::norm(w(i, q));
            gamma += std::conj(w(i, p)) * w(i, q);
          }
          const double g = std::abs(gamma);
          if (alpha == 0.0 || beta == 0.0) continue;
          if (g <= kConvergence * std::sqrt(alpha * beta)) continue;

          const cplx phase = gamma / g;  // e^{i phi}
          const double t = jacobi_tangent(alpha, beta, g);
          if (t == 0.0) continue;  // degenerate scaling; rotation would be a no-op
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          // Unitary column mix: new_p = c*p - s*conj(phase)*q,
          //                     new_q = s*p + c*conj(phase)*q.
          const cplx sp = s * std::conj(phase);
          const cplx cp = c * std::conj(phase);
          for (std::size_t i = 0; i < m; ++i) {
            const cplx wp = w(i, p), wq = w(i, q);
            w(i, p) = c * wp - sp * wq;
            w(i, q) = s * wp + cp * wq;
          }
          for (std::size_t i = 0; i < n; ++i) {
            const cplx vp = v(i, p), vq = v(i, q);
            v(i, p) = c * vp - sp * vq;
            v(i, q) = s * vp + cp * vq;
          }
          ++rotations;
        }
      }
      if (rotations == 0) break;
      if (++rotating_sweeps >= kMaxSweeps) {
        throw NumericalFailure("svd: no convergence after sweep cap",
                               kMaxSweeps);
      }
    }
  }

  std::vector<double> nrm(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double s2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) s2 += std::norm(w(i, j));
    nrm[j] = std::sqrt(s2);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return nrm[x] > nrm[y]; });

  SvdResult r;
  r.sigma.resize(n);
  r.u = ComplexMatrix(m, m);
  r.v = ComplexMatrix(n, n);
  std::vector<bool> have(m, false);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    r.sigma[j] = nrm[src];
    for (std::size_t i = 0; i < n; ++i) r.v(i, j) = v(i, src);
    if (nrm[src] > 0.0) {
      for (std::size_t i = 0; i < m; ++i) r.u(i, j) = w(i, src) / nrm[src];
      have[j] = true;
    }
  }
  complete_basis(r.u, have);
  return r;
}

}  // namespace

SvdResult svd(const ComplexMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw ContractViolation("svd: empty matrix");
  }
  if (!all_finite(a)) {
    throw ContractViolation("svd: non-finite entry");
  }
  if (a.rows() >= a.cols()) return svd_tall(a);
  // Wide case via the adjoint: a = (u s v^+)^+ of a^+ swaps the factors.
  SvdResult t = svd_tall(dagger(a));
  return SvdResult{std::move(t.v), std::move(t.sigma), std::move(t.u)};
}

EigResult eig_hermitian(const ComplexMatrix& a) {
  if (!a.is_square() || a.rows() == 0) {
    throw ContractViolation("eig_hermitian: matrix must be square and non-empty");
  }
  if (!all_finite(a)) {
    throw ContractViolation("eig_hermitian: non-finite entry");
  }
  const double scale = std::max(1.0, max_abs(a));
  if (hermiticity_defect(a) > 1e-10 * scale) {
    throw ContractViolation("eig_hermitian: input is not Hermitian within tolerance");
  }

  const std::size_t n = a.rows();
  // Work on the Hermitian part; the defect is within tolerance by the check.
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));

  ComplexMatrix vecs = ComplexMatrix::identity(n);
  const double fro = frobenius_norm(h);

  if (fro > 0.0) {
    int rotating_sweeps = 0;
    while (true) {
      double off2 = 0.0;
      for (std::size_t p = 0; p + 1 < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) off2 += 2.0 * std::norm(h(p, q));
      if (std::sqrt(off2) <= kConvergence * fro) break;
      if (rotating_sweeps >= kMaxSweeps) {
        throw NumericalFailure("eig_hermitian: no convergence after sweep cap",
                               kMaxSweeps);
      }
      ++rotating_sweeps;
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          const cplx gpq = h(p, q);
          const double g = std::abs(gpq);
          if (g == 0.0) continue;
          const double alpha = h(p, p).real();
          const double beta = h(q, q).real();
          const cplx phase = gpq / g;
          const double t = jacobi_tangent(alpha, beta, g);
          if (t == 0.0) continue;  // degenerate scaling; rotation would be a no-op
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          const cplx sp = s * std::conj(phase);
          const cplx cp = c * std::conj(phase);
          // Columns: h <- h * R with R = [[c, s],[-s e^{-i phi}, c e^{-i phi}]]
          // in the (p, q) plane.
          for (std::size_t i = 0; i < n; ++i) {
            const cplx hp = h(i, p), hq = h(i, q);
            h(i, p) = c * hp - sp * hq;
            h(i, q) = s * hp + cp * hq;
          }
          // Rows: h <- R^+ * h (conjugated coefficients).
          const cplx spc = std::conj(sp);
          const cplx cpc = std::conj(cp);
          for (std::size_t i = 0; i < n; ++i) {
            const cplx hp = h(p, i), hq = h(q, i);
            h(p, i) = c * hp - spc * hq;
            h(q, i) = s * hp + cpc * hq;
          }
          // The rotation annihilates (p, q) by construction; pin it and keep
          // the diagonal exactly real.
          h(p, q) = 0.0;
          h(q, p) = 0.0;
          h(p, p) = cplx(h(p, p).real(), 0.0);
          h(q, q) = cplx(h(q, q).real(), 0.0);
          for (std::size_t i = 0; i < n; ++i) {
            const cplx vp = vecs(i, p), vq = vecs(i, q);
            vecs(i, p) = c * vp - sp * vq;
            vecs(i, q) = s * vp + cp * vq;
          }
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return h(x, x).real() > h(y, y).real();
  });

  EigResult r;
  r.values.resize(n);
  r.vectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    r.values[j] = h(order[j], order[j]).real();
    for (std::size_t i = 0; i < n; ++i) r.vectors(i, j) = vecs(i, order[j]);
  }
  return r;
}

std::size_t numerical_rank(const std::vector<double>& sigma, double rel_tol) {
  if (sigma.empty()) return 0;
  const double cutoff = rel_tol * sigma.front();
  std::size_t rank = 0;
  for (double s : sigma) {
    if (s > cutoff && s > 0.0) ++rank;
  }
  return rank;
}

}  // namespace qres
