#pragma once

#include <complex>

#include <Eigen/Dense>

namespace biodilate {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Comparison tolerances used across the library. Scalar comparisons are
/// absolute, matrix-norm comparisons are relative to the operand's norm.
struct Tolerances {
  double scalar_abs = 1e-10;
  double matrix_rel = 1e-9;
};

// Fixed thresholds (not user-configurable).
inline constexpr double kMaxEigenbasisCondition = 1e8;
inline constexpr double kGateUnitarityTol = 1e-10;
inline constexpr double kZeroProbabilityTol = 1e-14;
inline constexpr double kStateFileNormTol = 1e-8;
inline constexpr double kContractionMargin = 1e-10;

inline bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

inline int log2_exact(Eigen::Index n) {
  int k = 0;
  while ((Eigen::Index{1} << k) < n) ++k;
  return k;
}

}  // namespace biodilate
