#include "qfilab/metrology.hpp"

#include <cmath>

namespace qfilab {

double variance(const DensityMatrix& rho, const Observable& a) {
  require_same_dim(rho, a);
  const Matrix ra = rho.matrix() * a.matrix();
  const double second = trace_product(ra, a.matrix()).real();
  const double mean = ra.trace().real();
  return second - mean * mean;
}

double qfi(const DensityMatrix& rho, const Observable& a) {
  const Matrix b = to_eigenbasis(rho, a);
  const RealVector& l = rho.eigenvalues();
  const int d = rho.dim();
  double sum = 0.0;
  for (int k = 0; k < d; ++k) {
    for (int m = 0; m < d; ++m) {
      const double denom = l(k) + l(m);
      if (denom < kZeroEigenvalueTol) continue;
      const double diff = l(k) - l(m);
      sum += diff * diff / denom * std::norm(b(k, m));
    }
  }
  return 2.0 * sum;
}

double qfi_rearranged(const DensityMatrix& rho, const Observable& a) {
  const Matrix b = to_eigenbasis(rho, a);
  const RealVector& l = rho.eigenvalues();
  const int d = rho.dim();
  double second = 0.0;
  double cross = 0.0;
  for (int k = 0; k < d; ++k) {
    for (int m = 0; m < d; ++m) {
      const double nb = std::norm(b(k, m));
      second += l(k) * nb;
      const double denom = l(k) + l(m);
      if (denom < kZeroEigenvalueTol) continue;
      cross += l(k) * l(m) / denom * nb;
    }
  }
  return 4.0 * second - 8.0 * cross;
}

namespace {

// 2 sum_kl l_k l_l/(l_k+l_l) |B_kl|^2 - <A>^2, the closed form of the gap.
double gap_double_sum(const Matrix& b, const RealVector& l) {
  const int d = static_cast<int>(l.size());
  double harm = 0.0;
  double mean = 0.0;
  for (int k = 0; k < d; ++k) {
    mean += l(k) * b(k, k).real();
    for (int m = 0; m < d; ++m) {
      const double denom = l(k) + l(m);
      if (denom < kZeroEigenvalueTol) continue;
      harm += l(k) * l(m) / denom * std::norm(b(k, m));
    }
  }
  return 2.0 * harm - mean * mean;
}

}  // namespace

GapReport gap(const DensityMatrix& rho, const Observable& a) {
  GapReport report;
  report.variance = variance(rho, a);
  report.qfi = qfi(rho, a);
  report.gap = report.variance - 0.25 * report.qfi;

  const double closed = gap_double_sum(to_eigenbasis(rho, a),
                                       rho.eigenvalues());
  if (std::abs(report.gap - closed) > 1e-8) {
    throw InternalMismatch("gap: difference and double-sum forms disagree");
  }
  return report;
}

double generalized_variance(const DensityMatrix& rho, const Observable& a,
                            const MonotoneMean& mean) {
  const Matrix b = to_eigenbasis(rho, a);
  const int d = rho.dim();
  // Eigenvalues below the shared zero threshold enter the means as exact
  // zeros; the log mean decays only logarithmically near 0 and would
  // otherwise amplify eigensolver noise.
  RealVector l = rho.eigenvalues();
  for (int k = 0; k < d; ++k) {
    if (l(k) < kZeroEigenvalueTol) l(k) = 0.0;
  }
  double sum = 0.0;
  double avg = 0.0;
  for (int k = 0; k < d; ++k) {
    avg += l(k) * b(k, k).real();
    for (int m = 0; m < d; ++m) {
      if (l(k) + l(m) < kZeroEigenvalueTol) continue;
      sum += mean.evaluate(l(k), l(m)) * std::norm(b(k, m));
    }
  }
  return sum - avg * avg;
}

namespace {

void require_full_rank(const DensityMatrix& rho, const char* what) {
  if (!rho.is_full_rank()) {
    throw SingularState(std::string(what) + ": state must be full rank");
  }
}

}  // namespace

double qfi_math(const DensityMatrix& rho, const Observable& a) {
  require_full_rank(rho, "qfi_math");
  const Matrix b = to_eigenbasis(rho, a);
  const RealVector& l = rho.eigenvalues();
  const int d = rho.dim();
  double sum = 0.0;
  for (int k = 0; k < d; ++k) {
    for (int m = 0; m < d; ++m) {
      sum += std::norm(b(k, m)) / (l(k) + l(m));
    }
  }
  return 2.0 * sum;
}

double qfi_generalized(const DensityMatrix& rho, const Observable& a,
                       const MonotoneMean& mean) {
  require_full_rank(rho, "qfi_generalized");
  const Matrix b = to_eigenbasis(rho, a);
  const RealVector& l = rho.eigenvalues();
  const int d = rho.dim();
  double sum = 0.0;
  for (int k = 0; k < d; ++k) {
    for (int m = 0; m < d; ++m) {
      sum += std::norm(b(k, m)) / mean.evaluate(l(k), l(m));
    }
  }
  return sum;
}

SandwichReport decomposition_sandwich(const DensityMatrix& rho,
                                      const Observable& a,
                                      const Decomposition& dec) {
  require_same_dim(rho, a);
  if (dec.states.rows() != rho.dim()) {
    throw DimensionMismatch("decomposition_sandwich: dimension mismatch");
  }
  if (decomposition_residual(rho, dec) > 1e-9) {
    throw BadDecomposition("decomposition_sandwich: mixture does not reconstruct the state");
  }

  SandwichReport report;
  report.upper = variance(rho, a);
  report.lower = 0.25 * qfi(rho, a);

  const double mean_rho = (rho.matrix() * a.matrix()).trace().real();
  double mixture = 0.0;
  double classical = 0.0;
  for (int k = 0; k < dec.size(); ++k) {
    const Vector psi = dec.states.col(k);
    const Vector apsi = a.matrix() * psi;
    const double mean_k = psi.dot(apsi).real();
    const double second_k = apsi.squaredNorm();
    mixture += dec.probabilities(k) * (second_k - mean_k * mean_k);
    classical += dec.probabilities(k) * (mean_rho - mean_k) * (mean_rho - mean_k);
  }
  report.mixture = mixture;
  report.classical = classical;

  if (std::abs(report.upper - (mixture + classical)) > 1e-9) {
    throw InternalMismatch("decomposition_sandwich: variance split identity violated");
  }
  return report;
}

}  // namespace qfilab
