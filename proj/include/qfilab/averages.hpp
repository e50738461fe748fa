#pragma once

#include "qfilab/metrology.hpp"

namespace qfilab {

struct AverageReport {
  double analytic;
  double monte_carlo_mean;
  double monte_carlo_stderr;
  long samples;

  // |analytic - MC| within n_sigma standard errors; the absolute floor
  // covers isotropic states where every sample is identical and the
  // standard error collapses to zero.
  bool consistent(double n_sigma = 5.0, double abs_floor = 1e-12) const;
};

// C_mn = Re<A^(m) A^(n)> - <A^(m)><A^(n)>; n^T C n is the variance of A_n.
RealMatrix covariance_matrix(const DensityMatrix& rho,
                             const GeneratorBasis& basis);

// F_mn = 2 sum_kl (l_k-l_l)^2/(l_k+l_l) A^(m)_kl A^(n)_lk; n^T F n is the
// QFI of A_n.
RealMatrix fisher_matrix(const DensityMatrix& rho, const GeneratorBasis& basis);

// Closed-form generator-sphere averages as functions of the spectrum.
double avg_variance_analytic(const RealVector& lambdas);
double avg_qfi_analytic(const RealVector& lambdas);
double avg_gap_analytic(const RealVector& lambdas);
double avg_qfi_math_analytic(const RealVector& lambdas);  // full rank
double avg_qfi_kmb_analytic(const RealVector& lambdas);   // full rank

inline constexpr long kDefaultMcSamples = 100000;
inline constexpr std::uint64_t kDefaultMcSeed = 1;

// avg_n var(A_n) = (2/N_g)(S_lin + d - 1), with a Monte-Carlo oracle.
AverageReport avg_variance(const DensityMatrix& rho,
                           long samples = kDefaultMcSamples,
                           std::uint64_t seed = kDefaultMcSeed);

// avg_n F_Q[rho,A_n] = (8/N_g)(d - H(rho)).
AverageReport avg_qfi(const DensityMatrix& rho,
                      long samples = kDefaultMcSamples,
                      std::uint64_t seed = kDefaultMcSeed);

// avg_n V(rho,A_n) = (2/(d^2-1))(S_lin + H - 1).
AverageReport avg_gap(const DensityMatrix& rho,
                      long samples = kDefaultMcSamples,
                      std::uint64_t seed = kDefaultMcSeed);

// avg_n F_Q(rho;A_n) = (2/N_g)(sum_kl 2/(l_k+l_l) - (1/d) sum_k 1/l_k).
AverageReport avg_qfi_math(const DensityMatrix& rho,
                           long samples = kDefaultMcSamples,
                           std::uint64_t seed = kDefaultMcSeed);

// avg_n F_Q^log(rho;A_n), the Kubo-Mori-Bogoliubov analogue.
AverageReport avg_qfi_kmb(const DensityMatrix& rho,
                          long samples = kDefaultMcSamples,
                          std::uint64_t seed = kDefaultMcSeed);

struct ElementAverages {
  double diag_sq;        // MC estimate of avg |(A_n)_ii|^2
  double diag_stderr;
  double offdiag_sq;     // MC estimate of avg |(A_n)_ij|^2, i != j
  double offdiag_stderr;
  long samples;
  double diag_target;     // (2/N_g)(1 - 1/d)
  double offdiag_target;  // 2/N_g
};

// Element averages in a fixed reference frame; indices select which diagonal
// entry (i,i) and off-diagonal entry (i,j) are sampled.
ElementAverages element_averages(const GeneratorBasis& basis,
                                 long samples = kDefaultMcSamples,
                                 std::uint64_t seed = kDefaultMcSeed,
                                 int diag_index = 0, int off_row = 0,
                                 int off_col = 1);

}  // namespace qfilab
