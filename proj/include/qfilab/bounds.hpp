#pragma once

#include "qfilab/metrology.hpp"

namespace qfilab {

struct Rank2Identity {
  double value;   // (1 - Tr rho^2)(s1 - s2)^2 / 2
  double sigma1;  // eigenvalues of A restricted to range(rho)
  double sigma2;
};

// Exact rank-2 identity for the gap: V = (1 - Tr rho^2)(s1-s2)^2 / 2 where
// s1, s2 are the eigenvalues of A on the range of rho.
Rank2Identity rank2_gap_identity(const DensityMatrix& rho, const Observable& a);

// rho = l |a1><a1| + (1-l) |a2><a2| from the eigenvectors of a 2x2
// restriction of A; saturates the rank-2 identity by construction.
DensityMatrix rank2_saturating_state(const Observable& a_restricted,
                                     double lambda);

struct BoundCheck {
  double bound;
  double gap;
  bool holds;  // gap <= bound + 1e-9
};

// V(rho,A) <= sigma_max(A^2) * H(rho).
BoundCheck bound_h_times_sigma(const DensityMatrix& rho, const Observable& a);

// V(rho,A) <= 2 S_lin(rho) sigma_max(A^2).
BoundCheck bound_linear_entropy(const DensityMatrix& rho, const Observable& a);

struct SpectrumMax {
  double value;
  std::vector<int> permutation;  // sigma index assigned to each lambda slot
};

// max over permutations i of sum_k l_k s_{i_k}^2 - (sum_k l_k s_{i_k})^2,
// i.e. the maximal gap over the unitary orbit of an operator with spectrum
// sigma. Exhaustive d! search, d <= 8.
SpectrumMax max_gap_over_spectrum(const RealVector& lambdas,
                                  const RealVector& sigmas);

// max over permutations of sum_k l_k s_{i_k}^2; equals the sorted-descending
// pairing of lambda with sigma^2 (rearrangement inequality), which is
// cross-checked against the exhaustive search.
double max_vprime_over_spectrum(const RealVector& lambdas,
                                const RealVector& sigmas);

}  // namespace qfilab
