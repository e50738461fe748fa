#include "qfilab/generators.hpp"

#include <cmath>

namespace qfilab {

UnitVector::UnitVector(RealVector v) : components(std::move(v)) {
  if (std::abs(components.squaredNorm() - 1.0) > 1e-12) {
    throw InvalidSpectrum("UnitVector: components are not normalized");
  }
}

GeneratorBasis::GeneratorBasis(int d) : d_(d) {
  if (d < 2) throw InvalidRank("GeneratorBasis: d must be >= 2");
  gens_.reserve(static_cast<std::size_t>(d) * d - 1);

  // Symmetric pair generators E_kl + E_lk.
  for (int k = 0; k < d; ++k) {
    for (int l = k + 1; l < d; ++l) {
      Matrix m = Matrix::Zero(d, d);
      m(k, l) = 1.0;
      m(l, k) = 1.0;
      gens_.emplace_back(std::move(m));
    }
  }
  // Antisymmetric pair generators -i E_kl + i E_lk.
  for (int k = 0; k < d; ++k) {
    for (int l = k + 1; l < d; ++l) {
      Matrix m = Matrix::Zero(d, d);
      m(k, l) = Complex(0.0, -1.0);
      m(l, k) = Complex(0.0, 1.0);
      gens_.emplace_back(std::move(m));
    }
  }
  // Diagonal generators, scaled to Tr(A^2) = 2.
  for (int m = 1; m < d; ++m) {
    Matrix g = Matrix::Zero(d, d);
    const double scale = std::sqrt(2.0 / (m * (m + 1.0)));
    for (int j = 0; j < m; ++j) g(j, j) = scale;
    g(m, m) = -m * scale;
    gens_.emplace_back(std::move(g));
  }
}

Observable observable_from_unit_vector(const GeneratorBasis& basis,
                                       const UnitVector& n) {
  if (n.size() != basis.count()) {
    throw DimensionMismatch("observable_from_unit_vector: length mismatch");
  }
  Matrix a = Matrix::Zero(basis.dim(), basis.dim());
  for (int m = 0; m < basis.count(); ++m) {
    a += n.components(m) * basis[m].matrix();
  }
  return Observable(std::move(a));
}

RealVector generator_coefficients(const GeneratorBasis& basis,
                                  const Observable& a) {
  if (a.dim() != basis.dim()) {
    throw DimensionMismatch("generator_coefficients: dimension mismatch");
  }
  RealVector n(basis.count());
  for (int m = 0; m < basis.count(); ++m) {
    n(m) = 0.5 * trace_product(a.matrix(), basis[m].matrix()).real();
  }
  return n;
}

}  // namespace qfilab
