#pragma once

#include <vector>

#include "qfilab/density_matrix.hpp"

namespace qfilab {

// Real unit vector on the generator sphere (d^2-1 components).
struct UnitVector {
  RealVector components;

  explicit UnitVector(RealVector v);
  int size() const { return static_cast<int>(components.size()); }
};

// Generalized Gell-Mann basis: the d^2-1 traceless Hermitian generators of
// SU(d), orthonormal under Tr(A^(k) A^(l)) = 2 delta_kl. Ordered as all
// symmetric pair generators, then all antisymmetric ones, then the diagonal
// ones; for d=2 this is sigma_x, sigma_y, sigma_z.
class GeneratorBasis {
 public:
  explicit GeneratorBasis(int d);

  int dim() const { return d_; }
  int count() const { return static_cast<int>(gens_.size()); }
  const Observable& operator[](int m) const { return gens_[m]; }
  const std::vector<Observable>& generators() const { return gens_; }

 private:
  int d_;
  std::vector<Observable> gens_;
};

inline GeneratorBasis gell_mann_basis(int d) { return GeneratorBasis(d); }

// A = sum_m n_m A^(m); traceless with Tr(A^2) = 2.
Observable observable_from_unit_vector(const GeneratorBasis& basis,
                                       const UnitVector& n);

// Coefficients n_m = Tr(A A^(m))/2 of a traceless Hermitian A.
RealVector generator_coefficients(const GeneratorBasis& basis,
                                  const Observable& a);

}  // namespace qfilab
