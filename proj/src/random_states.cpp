#include "qfilab/random_states.hpp"

#include <cmath>

namespace qfilab {

UnitVector random_unit_vector(int n_components, Rng& rng) {
  RealVector v(n_components);
  for (int i = 0; i < n_components; ++i) v(i) = rng.gaussian();
  v.normalize();
  return UnitVector(std::move(v));
}

UnitVector random_unit_vector(int n_components, std::uint64_t seed) {
  Rng rng(seed);
  return random_unit_vector(n_components, rng);
}

DensityMatrix random_density_matrix(int d, int rank, std::uint64_t seed) {
  if (rank < 1 || rank > d) {
    throw InvalidRank("random_density_matrix: rank must be in [1, d]");
  }
  Rng rng(seed);
  Matrix g(d, rank);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < rank; ++j) g(i, j) = rng.complex_gaussian();
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint().eval());
  return DensityMatrix(rho);
}

Matrix random_hermitian(int d, Rng& rng) {
  Matrix g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = rng.complex_gaussian();
  }
  return 0.5 * (g + g.adjoint().eval());
}

Observable random_observable(int d, std::uint64_t seed,
                             bool traceless_normalized) {
  Rng rng(seed);
  Matrix h = random_hermitian(d, rng);
  if (traceless_normalized) {
    h -= (h.trace() / static_cast<double>(d)) * Matrix::Identity(d, d);
    const double n2 = trace_product(h, h).real();
    h *= std::sqrt(2.0 / n2);
  }
  return Observable(std::move(h));
}

Matrix haar_isometry(int rows, int cols, Rng& rng) {
  if (rows < cols) throw DimensionMismatch("haar_isometry: rows < cols");
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) g(i, j) = rng.complex_gaussian();
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  // Fixing the phases of R's diagonal makes the distribution Haar.
  for (int j = 0; j < cols; ++j) {
    const Complex rjj = r(j, j);
    if (std::abs(rjj) > 0.0) q.col(j) *= rjj / std::abs(rjj);
  }
  return q;
}

Decomposition eigen_decomposition(const DensityMatrix& rho) {
  const int r = rho.rank();
  Decomposition dec;
  dec.probabilities.resize(r);
  dec.states.resize(rho.dim(), r);
  for (int k = 0; k < r; ++k) {
    dec.probabilities(k) = rho.eigenvalues()(k);
    dec.states.col(k) = rho.eigenvectors().col(k);
  }
  return dec;
}

Decomposition decomposition_from_isometry(const DensityMatrix& rho,
                                          const Matrix& w) {
  const int r = rho.rank();
  const int k_size = static_cast<int>(w.rows());
  if (static_cast<int>(w.cols()) != r) {
    throw DimensionMismatch("decomposition_from_isometry: isometry columns must equal rank");
  }
  if (max_abs(w.adjoint() * w - Matrix::Identity(r, r)) > 1e-10) {
    throw BadDecomposition("decomposition_from_isometry: W is not an isometry");
  }

  // Subnormalized eigenvectors |phi_k> = sqrt(l_k)|k>; |psi_j> = sum_k W_jk |phi_k>.
  Matrix phi(rho.dim(), r);
  for (int k = 0; k < r; ++k) {
    phi.col(k) = std::sqrt(rho.eigenvalues()(k)) * rho.eigenvectors().col(k);
  }
  Matrix psi = phi * w.transpose();

  Decomposition dec;
  dec.probabilities.resize(k_size);
  dec.states.resize(rho.dim(), k_size);
  for (int j = 0; j < k_size; ++j) {
    const double p = psi.col(j).squaredNorm();
    dec.probabilities(j) = p;
    if (p > 1e-300) {
      dec.states.col(j) = psi.col(j) / std::sqrt(p);
    } else {
      dec.states.col(j) = Vector::Unit(rho.dim(), 0);
    }
  }
  return dec;
}

Decomposition random_decomposition(const DensityMatrix& rho, int size,
                                   std::uint64_t seed) {
  const int r = rho.rank();
  if (size < r) {
    throw SizeTooSmall("random_decomposition: size must be >= rank");
  }
  Rng rng(seed);
  return decomposition_from_isometry(rho, haar_isometry(size, r, rng));
}

double decomposition_residual(const DensityMatrix& rho,
                              const Decomposition& dec) {
  Matrix mix = Matrix::Zero(rho.dim(), rho.dim());
  for (int k = 0; k < dec.size(); ++k) {
    mix += dec.probabilities(k) *
           (dec.states.col(k) * dec.states.col(k).adjoint());
  }
  return max_abs(mix - rho.matrix());
}

}  // namespace qfilab
