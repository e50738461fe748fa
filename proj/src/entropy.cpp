#include "qfilab/entropy.hpp"

#include <cmath>

namespace qfilab {

namespace {

RealVector validated_spectrum(const RealVector& lambdas) {
  if (lambdas.size() < 1) throw InvalidSpectrum("entropies: empty spectrum");
  RealVector l = lambdas;
  for (Eigen::Index k = 0; k < l.size(); ++k) {
    if (l(k) < -1e-9) throw InvalidSpectrum("entropies: negative eigenvalue");
    if (l(k) < 0.0) l(k) = 0.0;
  }
  const double sum = l.sum();
  if (std::abs(sum - 1.0) > 1e-9) {
    throw InvalidSpectrum("entropies: eigenvalues must sum to 1");
  }
  return l / sum;
}

}  // namespace

double harmonic_purity(const RealVector& lambdas) {
  const int d = static_cast<int>(lambdas.size());
  double sum = 0.0;
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      const double denom = lambdas(k) + lambdas(l);
      if (denom < kZeroEigenvalueTol) continue;
      sum += lambdas(k) * lambdas(l) / denom;
    }
  }
  return 2.0 * sum;
}

SpectrumPoint entropies(const RealVector& lambdas) {
  SpectrumPoint p;
  p.lambdas = validated_spectrum(lambdas);
  p.s_lin = 1.0 - p.lambdas.squaredNorm();
  double s = 0.0;
  for (Eigen::Index k = 0; k < p.lambdas.size(); ++k) {
    const double l = p.lambdas(k);
    if (l > 0.0) s -= l * std::log(l);
  }
  p.s_vn = s;
  p.exp_s = std::exp(s);
  p.h = harmonic_purity(p.lambdas);
  return p;
}

SpectrumPoint entropies(const DensityMatrix& rho) {
  return entropies(rho.eigenvalues());
}

double h_exp_s_gap(const RealVector& lambdas) {
  const SpectrumPoint p = entropies(lambdas);
  return p.h - p.exp_s;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw DimensionMismatch("relative_entropy: dimension mismatch");
  }
  double tr_rho_ln_rho = 0.0;
  for (Eigen::Index k = 0; k < rho.eigenvalues().size(); ++k) {
    const double l = rho.eigenvalues()(k);
    if (l > 0.0) tr_rho_ln_rho += l * std::log(l);
  }

  double tr_rho_ln_sigma = 0.0;
  for (Eigen::Index j = 0; j < sigma.eigenvalues().size(); ++j) {
    const double mu = sigma.eigenvalues()(j);
    const Vector u = sigma.eigenvectors().col(j);
    const double weight = (u.adjoint() * rho.matrix() * u)(0, 0).real();
    if (mu < kZeroEigenvalueTol) {
      if (weight > 1e-10) {
        throw SupportViolation("relative_entropy: support of rho exceeds support of sigma");
      }
      continue;
    }
    tr_rho_ln_sigma += weight * std::log(mu);
  }

  double value = tr_rho_ln_rho - tr_rho_ln_sigma;
  if (value < 0.0 && value > -1e-12) value = 0.0;
  return value;
}

KmbCheck kmb_second_derivative_check(const DensityMatrix& rho,
                                     const Observable& a, double h) {
  require_same_dim(rho, a);
  if (!a.is_traceless()) {
    throw std::invalid_argument("kmb_second_derivative_check: observable must be traceless");
  }
  if (h <= 0.0) {
    throw std::invalid_argument("kmb_second_derivative_check: step must be positive");
  }

  const Matrix plus = rho.matrix() + h * a.matrix();
  const Matrix minus = rho.matrix() - h * a.matrix();
  for (const Matrix* m : {&plus, &minus}) {
    const Spectral spec = spectral_decompose(*m);
    if (spec.eigenvalues.minCoeff() <= kZeroEigenvalueTol) {
      throw StepTooLarge("kmb_second_derivative_check: rho +- hA is not positive definite");
    }
  }

  const DensityMatrix rho_plus(plus);
  const DensityMatrix rho_minus(minus);
  KmbCheck out;
  // S(rho||rho) = 0, so the centered second difference needs only two terms.
  out.fd_second_derivative =
      (relative_entropy(rho, rho_plus) + relative_entropy(rho, rho_minus)) /
      (h * h);
  out.kmb_value = qfi_generalized(rho, a, MonotoneMean::logarithmic());
  return out;
}

}  // namespace qfilab
