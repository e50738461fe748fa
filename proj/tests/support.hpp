#pragma once

#include "qfilab/random_states.hpp"

namespace qfilab::testing {

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline DensityMatrix qubit_diag(double p) {
  Matrix m(2, 2);
  m << p, 0, 0, 1.0 - p;
  return DensityMatrix(m);
}

inline DensityMatrix maximally_mixed(int d) {
  return DensityMatrix(Matrix::Identity(d, d) / d);
}

}  // namespace qfilab::testing
