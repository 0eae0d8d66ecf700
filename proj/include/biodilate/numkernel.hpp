#pragma once

#include <vector>

#include "biodilate/errors.hpp"
#include "biodilate/types.hpp"

namespace biodilate::numkernel {

/// Spectral decomposition of a (generally non-Hermitian) square matrix.
///
/// Eigenvalues are sorted by descending modulus; moduli that agree within a
/// relative 1e-9 are ordered by descending phase on [-pi, pi). Each column of
/// `right_vectors` has unit 2-norm and is rephased so that its first component
/// of largest modulus is real and positive. `left_rows` is the inverse of
/// `right_vectors`, so left_rows * right_vectors = I and
/// right_vectors * diag(eigenvalues) * left_rows reconstructs the input.
struct EigenSystem {
  ComplexVector eigenvalues;
  ComplexMatrix right_vectors;
  ComplexMatrix left_rows;
  double condition = 0.0;  // 2-norm condition number of right_vectors
};

ComplexMatrix adjoint(const ComplexMatrix& m);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& v);

/// Throws Defective when the eigenvector basis is ill-conditioned
/// (condition > 1e8) and NoConvergence when the QR iteration fails.
EigenSystem eig(const ComplexMatrix& m);

/// Singular values in descending order; front() is the operator 2-norm.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Hermitian PSD square root. Eigenvalues in [-tol, 0) are clamped to zero;
/// anything below -tol throws NotPsd.
ComplexMatrix sqrt_psd(const ComplexMatrix& m, const Tolerances& tol = {});

/// |<a|b>|^2 / (|a|^2 |b|^2), invariant under global phase and scaling.
double fidelity(const ComplexVector& a, const ComplexVector& b);

double frobenius(const ComplexMatrix& m);

}  // namespace biodilate::numkernel
