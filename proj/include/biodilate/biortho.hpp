#pragma once

#include <utility>
#include <vector>

#include "biodilate/errors.hpp"
#include "biodilate/numkernel.hpp"
#include "biodilate/types.hpp"

namespace biodilate::biortho {

/// Paired bases {u_n} (right, unit norm) and {zeta_n} (left) with positive
/// diagonal overlaps kappa_n = <zeta_n|u_n> and vanishing off-diagonal
/// overlaps. Stored column-wise; the system is validated on construction.
class BiorthogonalSystem {
 public:
  static BiorthogonalSystem from_columns(ComplexMatrix u_cols, ComplexMatrix zeta_cols,
                                         RealVector kappa, const Tolerances& tol = {});

  Eigen::Index dim() const { return u_cols_.rows(); }
  const ComplexMatrix& u_columns() const { return u_cols_; }
  const ComplexMatrix& zeta_columns() const { return zeta_cols_; }
  const RealVector& kappa() const { return kappa_; }
  double condition() const { return condition_; }

  ComplexVector u(Eigen::Index n) const { return u_cols_.col(n); }
  ComplexVector zeta(Eigen::Index n) const { return zeta_cols_.col(n); }

 private:
  BiorthogonalSystem(ComplexMatrix u, ComplexMatrix z, RealVector k)
      : u_cols_(std::move(u)), zeta_cols_(std::move(z)), kappa_(std::move(k)) {}

  ComplexMatrix u_cols_;
  ComplexMatrix zeta_cols_;
  RealVector kappa_;
  double condition_ = 1.0;
};

struct BiorthogonalOperator {
  BiorthogonalSystem system;
  ComplexMatrix rep;  // matrix representation in the biorthogonal basis
};

struct BiorthoExpansion {
  ComplexVector coeffs;
};

struct ValidationReport {
  double max_overlap_deviation = 0.0;  // of <zeta_n|u_m> from kappa_n * delta_nm
  double max_norm_deviation = 0.0;     // of ||u_n|| from 1
  double min_kappa = 0.0;
  double condition = 0.0;  // of the matrix of u columns
  bool passed = false;
};

enum class KappaPolicy { ModulusOfEigenvalue, AllOnes, Explicit };

ValidationReport validate(const BiorthogonalSystem& system, const Tolerances& tol = {});

/// Builds a system from explicit vectors. Each u_n is normalized to unit
/// norm; the zeta_n are kept as given and kappa_n = <zeta_n|u_n> must come
/// out real and positive.
BiorthogonalSystem from_explicit(const std::vector<ComplexVector>& u,
                                 const std::vector<ComplexVector>& zeta,
                                 const Tolerances& tol = {});

/// Eigendecomposes V and assembles the biorthogonal system plus the matrix
/// representation rep = diag(lambda_n / kappa_n). Under ModulusOfEigenvalue
/// the representation is unitary for any invertible diagonalizable V.
std::pair<BiorthogonalSystem, BiorthogonalOperator> from_eigen(
    const ComplexMatrix& v, KappaPolicy policy = KappaPolicy::ModulusOfEigenvalue,
    const std::vector<double>& explicit_kappa = {}, const Tolerances& tol = {});

/// f = sum_n kappa_n^-1 |zeta_n><zeta_n| (Hermitian, invertible).
ComplexMatrix metric(const BiorthogonalSystem& system);
/// f^-1 = sum_n kappa_n^-1 |u_n><u_n|.
ComplexMatrix metric_inverse(const BiorthogonalSystem& system);

/// The associate state f|psi>.
ComplexVector associate(const BiorthogonalSystem& system, const ComplexVector& psi);

/// <phi~|psi> = sum_n kappa_n d_n^* c_n over the biorthogonal coefficients.
Complex bi_inner(const BiorthogonalSystem& system, const ComplexVector& phi,
                 const ComplexVector& psi, const Tolerances& tol = {});

/// Coefficients c_n = <zeta_n|Psi>/kappa_n with a reconstruction check.
BiorthoExpansion expand(const BiorthogonalSystem& system, const ComplexVector& psi,
                        const Tolerances& tol = {});

/// sum_{nm} rep[n][m] |u_n><zeta_m| as a dense matrix in the computational basis.
ComplexMatrix to_computational(const BiorthogonalOperator& op);

/// The dagger-like involution induced by the biorthogonal inner product;
/// on matrix representations it is plain conjugate transposition.
BiorthogonalOperator bi_adjoint(const BiorthogonalOperator& op);

bool is_bi_unitary(const BiorthogonalOperator& op, const Tolerances& tol = {});
double pseudo_unitarity_residual(const BiorthogonalOperator& op);

bool is_bi_hermitian(const BiorthogonalOperator& op, const Tolerances& tol = {});
double pseudo_hermiticity_residual(const ComplexMatrix& v_comp, const ComplexMatrix& f);

/// Classical reference evaluation of the operator action, via the expansion
/// coefficients rather than the assembled matrix. Used as the independent
/// oracle when checking the dilation backends.
ComplexVector apply_via_biortho(const BiorthogonalOperator& op, const ComplexVector& psi,
                                const Tolerances& tol = {});

}  // namespace biodilate::biortho
