#pragma once

#include "qfilab/metrology.hpp"

namespace qfilab {

struct SpectrumPoint {
  RealVector lambdas;
  double s_lin;   // 1 - sum l^2
  double s_vn;    // -sum l ln l
  double exp_s;   // exp(s_vn), in [1, d]
  double h;       // 2 sum_kl l_k l_l/(l_k+l_l), in [1, d]
};

SpectrumPoint entropies(const RealVector& lambdas);
SpectrumPoint entropies(const DensityMatrix& rho);

// H(rho) alone, from the spectrum.
double harmonic_purity(const RealVector& lambdas);

// H - exp(S); vanishes to second order around the uniform spectrum.
double h_exp_s_gap(const RealVector& lambdas);

// S(rho||sigma) = Tr rho (ln rho - ln sigma); requires
// support(rho) within support(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

struct KmbCheck {
  double fd_second_derivative;  // [S(rho||rho+hA) + S(rho||rho-hA)] / h^2
  double kmb_value;             // F^log(rho;A)
};

// Central second difference of the relative entropy along rho + tA against
// the KMB Fisher information; rho +- hA must stay positive definite.
KmbCheck kmb_second_derivative_check(const DensityMatrix& rho,
                                     const Observable& a, double h);

}  // namespace qfilab
