#pragma once

#include <cmath>
#include <vector>

#include "biodilate/qsim.hpp"
#include "biodilate/types.hpp"

namespace testutil {

using biodilate::Complex;
using biodilate::ComplexMatrix;
using biodilate::ComplexVector;

inline ComplexMatrix pauli_x() {
  ComplexMatrix p(2, 2);
  p << 0, 1, 1, 0;
  return p;
}

inline ComplexMatrix pauli_y() {
  ComplexMatrix p(2, 2);
  p << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return p;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix p(2, 2);
  p << 1, 0, 0, -1;
  return p;
}

inline ComplexMatrix hadamard() {
  ComplexMatrix h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

// The single-qubit non-unitary operator used throughout the worked examples.
inline ComplexMatrix sample_nonunitary() {
  ComplexMatrix v(2, 2);
  v << 1, -2, 0, -1;
  return v;
}

// One-parameter family reducing to sample_nonunitary() at tau = 1.
inline ComplexMatrix shear_family(double tau) {
  ComplexMatrix v(2, 2);
  v << tau, -(tau + 1.0), 0, -1;
  return v;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Slow dense embedding of a (controlled) gate into the full register space.
// Written against the index convention only, independently of the stride
// kernels it is used to check.
inline ComplexMatrix embed_gate(const biodilate::qsim::Gate& g, int num_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  const int k = static_cast<int>(g.targets.size());
  ComplexMatrix full = ComplexMatrix::Zero(dim, dim);

  auto bit_of = [&](int qubit) { return std::uint64_t{1} << (num_qubits - 1 - qubit); };

  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto b = static_cast<std::uint64_t>(col);
    bool active = true;
    for (auto [q, want] : g.controls) {
      const bool set = (b & bit_of(q)) != 0;
      if (set != (want != 0)) active = false;
    }
    if (!active) {
      full(col, col) = Complex(1.0, 0.0);
      continue;
    }
    std::uint64_t sub = 0;
    std::uint64_t base = b;
    for (int l = 0; l < k; ++l) {
      const std::uint64_t bit = bit_of(g.targets[static_cast<std::size_t>(l)]);
      if (b & bit) sub |= std::uint64_t{1} << (k - 1 - l);
      base &= ~bit;
    }
    for (Eigen::Index row_sub = 0; row_sub < g.matrix.rows(); ++row_sub) {
      std::uint64_t out = base;
      for (int l = 0; l < k; ++l) {
        if ((static_cast<std::uint64_t>(row_sub) >> (k - 1 - l)) & 1ULL) {
          out |= bit_of(g.targets[static_cast<std::size_t>(l)]);
        }
      }
      full(static_cast<Eigen::Index>(out), col) +=
          g.matrix(row_sub, static_cast<Eigen::Index>(sub));
    }
  }
  return full;
}

inline ComplexMatrix circuit_unitary(const biodilate::qsim::Circuit& c) {
  const Eigen::Index dim = Eigen::Index{1} << c.num_qubits;
  ComplexMatrix total = ComplexMatrix::Identity(dim, dim);
  for (const auto& g : c.gates) total = embed_gate(g, c.num_qubits) * total;
  return total;
}

// Direct evaluation of the Fourier matrix F[k][n] = w^{kn} / sqrt(N).
inline ComplexMatrix dft_matrix(int num_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  ComplexMatrix f(dim, dim);
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  for (Eigen::Index k = 0; k < dim; ++k) {
    for (Eigen::Index n = 0; n < dim; ++n) {
      const double angle = 2.0 * 3.14159265358979323846 *
                           static_cast<double>(k * n % dim) / static_cast<double>(dim);
      f(k, n) = norm * Complex(std::cos(angle), std::sin(angle));
    }
  }
  return f;
}

}  // namespace testutil
