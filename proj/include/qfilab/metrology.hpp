#pragma once

#include "qfilab/means.hpp"
#include "qfilab/random_states.hpp"

namespace qfilab {

// (Delta A)^2 = <A^2> - <A>^2.
double variance(const DensityMatrix& rho, const Observable& a);

// F_Q[rho,A] = 2 sum_kl (l_k-l_l)^2/(l_k+l_l) |A_kl|^2; pairs with
// l_k+l_l below the zero threshold are skipped.
double qfi(const DensityMatrix& rho, const Observable& a);

// Equivalent form 4<A^2> - 8 sum_kl l_k l_l/(l_k+l_l) |A_kl|^2.
double qfi_rearranged(const DensityMatrix& rho, const Observable& a);

struct GapReport {
  double variance;
  double qfi;
  double gap;  // variance - qfi/4
};

// V(rho,A) = (Delta A)^2 - F_Q/4, computed both as the difference and via the
// closed double-sum form; the two must agree to 1e-8 or InternalMismatch is
// raised.
GapReport gap(const DensityMatrix& rho, const Observable& a);

// var^f(A) = sum_kl m_f(l_k,l_l) |A_kl|^2 - <A>^2. The arithmetic mean gives
// the ordinary variance, the harmonic mean gives V(rho,A).
double generalized_variance(const DensityMatrix& rho, const Observable& a,
                            const MonotoneMean& mean);

// F_Q(rho;A) = 2 sum_kl |A_kl|^2/(l_k+l_l); requires full rank.
double qfi_math(const DensityMatrix& rho, const Observable& a);

// F_Q^f(rho;A) = sum_kl |A_kl|^2 / m_f(l_k,l_l); requires full rank. The
// arithmetic mean reproduces qfi_math, the logarithmic mean is the
// Kubo-Mori-Bogoliubov Fisher information.
double qfi_generalized(const DensityMatrix& rho, const Observable& a,
                       const MonotoneMean& mean);

struct SandwichReport {
  double lower;     // F_Q/4
  double mixture;   // sum_k p_k (Delta A)^2_{Psi_k}
  double upper;     // (Delta A)^2_rho
  double classical; // sum_k p_k (<A> - <A>_k)^2
};

// Evaluates F_Q/4 <= sum p_k var_k <= var on a concrete decomposition and
// checks the split var = mixture + classical to 1e-9.
SandwichReport decomposition_sandwich(const DensityMatrix& rho,
                                      const Observable& a,
                                      const Decomposition& dec);

}  // namespace qfilab
