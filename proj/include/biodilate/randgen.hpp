#pragma once

#include <cstdint>
#include <random>

#include "biodilate/biortho.hpp"
#include "biodilate/types.hpp"

namespace biodilate::randgen {

using Rng = std::mt19937_64;

/// Deterministically derives an independent stream for (seed, index).
Rng substream(std::uint64_t seed, std::uint64_t index);

Complex random_complex(Rng& rng);

/// Unit-norm state with Gaussian components.
ComplexVector random_state(Rng& rng, Eigen::Index dim);

/// Haar-like unitary from the QR of a Gaussian matrix (R diagonal rephased).
ComplexMatrix random_unitary(Rng& rng, Eigen::Index dim);

/// S diag(lambda) S^-1 with eigenvalue moduli in [min_modulus, max_modulus]
/// and cond(S) <= basis_condition. Diagonalizable and invertible by
/// construction.
ComplexMatrix random_diagonalizable(Rng& rng, Eigen::Index dim, double min_modulus = 0.5,
                                    double max_modulus = 2.0, double basis_condition = 4.0);

/// Random matrix rescaled so sigma_max <= max_norm (< 1 gives a strict
/// contraction).
ComplexMatrix random_contraction(Rng& rng, Eigen::Index dim, double max_norm = 0.9);

/// Valid biorthogonal system with kappa drawn from [0.5, 2].
biortho::BiorthogonalSystem random_system(Rng& rng, Eigen::Index dim);

/// System with kappa identically one (u columns unitary).
biortho::BiorthogonalSystem random_orthonormal_system(Rng& rng, Eigen::Index dim);

}  // namespace biodilate::randgen
