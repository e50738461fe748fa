#include "qfilab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qfilab/entropy.hpp"

namespace qfilab {

Rank2Identity rank2_gap_identity(const DensityMatrix& rho,
                                 const Observable& a) {
  require_same_dim(rho, a);
  if (rho.rank() != 2) {
    throw NotRankTwo("rank2_gap_identity: state must have rank 2");
  }
  // 2x2 restriction of A to range(rho).
  const Matrix range = rho.eigenvectors().leftCols(2);
  const Matrix restricted = range.adjoint() * a.matrix() * range;
  const Spectral spec = spectral_decompose(restricted);

  Rank2Identity out;
  out.sigma1 = spec.eigenvalues(0);
  out.sigma2 = spec.eigenvalues(1);
  const double diff = out.sigma1 - out.sigma2;
  out.value = 0.5 * (1.0 - rho.purity()) * diff * diff;
  return out;
}

DensityMatrix rank2_saturating_state(const Observable& a_restricted,
                                     double lambda) {
  if (a_restricted.dim() != 2) {
    throw DimensionMismatch("rank2_saturating_state: restriction must be 2x2");
  }
  if (lambda <= 0.0 || lambda >= 1.0) {
    throw InvalidSpectrum("rank2_saturating_state: lambda must be in (0,1)");
  }
  const Spectral spec = spectral_decompose(a_restricted.matrix());
  RealVector l(2);
  l << lambda, 1.0 - lambda;
  return DensityMatrix::from_spectrum(l, spec.eigenvectors);
}

namespace {

double sigma_max_of_squared(const Observable& a) {
  const Spectral spec = spectral_decompose(a.matrix());
  double best = 0.0;
  for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
    best = std::max(best, spec.eigenvalues(k) * spec.eigenvalues(k));
  }
  return best;
}

}  // namespace

BoundCheck bound_h_times_sigma(const DensityMatrix& rho, const Observable& a) {
  BoundCheck out;
  out.gap = gap(rho, a).gap;
  out.bound = sigma_max_of_squared(a) * harmonic_purity(rho.eigenvalues());
  out.holds = out.gap <= out.bound + 1e-9;
  return out;
}

BoundCheck bound_linear_entropy(const DensityMatrix& rho,
                                const Observable& a) {
  BoundCheck out;
  out.gap = gap(rho, a).gap;
  out.bound = 2.0 * (1.0 - rho.purity()) * sigma_max_of_squared(a);
  out.holds = out.gap <= out.bound + 1e-9;
  return out;
}

namespace {

void check_spectrum_inputs(const RealVector& lambdas,
                           const RealVector& sigmas) {
  if (lambdas.size() != sigmas.size()) {
    throw DimensionMismatch("spectrum optimization: length mismatch");
  }
  if (lambdas.size() > 8) {
    throw TooLarge("spectrum optimization: exhaustive search capped at d = 8");
  }
  if (lambdas.minCoeff() < -1e-12 || std::abs(lambdas.sum() - 1.0) > 1e-9) {
    throw InvalidSpectrum("spectrum optimization: lambdas must be a probability vector");
  }
}

}  // namespace

SpectrumMax max_gap_over_spectrum(const RealVector& lambdas,
                                  const RealVector& sigmas) {
  check_spectrum_inputs(lambdas, sigmas);
  const int d = static_cast<int>(lambdas.size());
  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);

  SpectrumMax best;
  best.value = -std::numeric_limits<double>::infinity();
  do {
    double second = 0.0;
    double mean = 0.0;
    for (int k = 0; k < d; ++k) {
      const double s = sigmas(perm[k]);
      second += lambdas(k) * s * s;
      mean += lambdas(k) * s;
    }
    const double value = second - mean * mean;
    if (value > best.value) {
      best.value = value;
      best.permutation = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double max_vprime_over_spectrum(const RealVector& lambdas,
                                const RealVector& sigmas) {
  check_spectrum_inputs(lambdas, sigmas);
  const int d = static_cast<int>(lambdas.size());

  // Rearrangement inequality: pair sorted lambdas with sorted sigma^2.
  std::vector<double> l(lambdas.data(), lambdas.data() + d);
  std::vector<double> s2(d);
  for (int k = 0; k < d; ++k) s2[k] = sigmas(k) * sigmas(k);
  std::sort(l.begin(), l.end(), std::greater<>());
  std::sort(s2.begin(), s2.end(), std::greater<>());
  double sorted_value = 0.0;
  for (int k = 0; k < d; ++k) sorted_value += l[k] * s2[k];

  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  double exhaustive = -std::numeric_limits<double>::infinity();
  do {
    double v = 0.0;
    for (int k = 0; k < d; ++k) {
      v += lambdas(k) * sigmas(perm[k]) * sigmas(perm[k]);
    }
    exhaustive = std::max(exhaustive, v);
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (std::abs(sorted_value - exhaustive) > 1e-10 * std::max(1.0, exhaustive)) {
    throw InternalMismatch("max_vprime_over_spectrum: sorted pairing does not match exhaustive search");
  }
  return exhaustive;
}

}  // namespace qfilab
