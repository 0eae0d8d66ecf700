#include "biodilate/biortho.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace biodilate::biortho {

namespace {

double basis_condition(const ComplexMatrix& u_cols) {
  Eigen::JacobiSVD<ComplexMatrix> svd(u_cols);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  return (smin > 0.0) ? smax / smin : std::numeric_limits<double>::infinity();
}

// Roundoff in the overlaps grows with the conditioning of the right basis;
// the acceptance tolerance tracks it so ill-conditioned but legal systems
// are not rejected for noise they cannot avoid.
double overlap_tolerance(const Tolerances& tol, double kappa_max, double condition) {
  return tol.matrix_rel * std::max(1.0, kappa_max) * std::max(1.0, condition / 10.0);
}

ValidationReport report_for(const ComplexMatrix& u_cols, const ComplexMatrix& zeta_cols,
                            const RealVector& kappa, const Tolerances& tol) {
  ValidationReport rep;
  const Eigen::Index n = u_cols.cols();
  const ComplexMatrix overlaps = zeta_cols.adjoint() * u_cols;  // <zeta_n|u_m> at (n, m)
  double max_dev = 0.0;
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const Complex expected = (r == c) ? Complex(kappa[r], 0.0) : Complex(0.0, 0.0);
      max_dev = std::max(max_dev, std::abs(overlaps(r, c) - expected));
    }
  }
  rep.max_overlap_deviation = max_dev;
  double norm_dev = 0.0;
  for (Eigen::Index c = 0; c < n; ++c) {
    norm_dev = std::max(norm_dev, std::abs(u_cols.col(c).norm() - 1.0));
  }
  rep.max_norm_deviation = norm_dev;
  rep.min_kappa = kappa.size() ? kappa.minCoeff() : 0.0;
  rep.condition = basis_condition(u_cols);

  const double kappa_max = kappa.size() ? kappa.maxCoeff() : 1.0;
  rep.passed = rep.max_overlap_deviation <= overlap_tolerance(tol, kappa_max, rep.condition) &&
               rep.max_norm_deviation <= tol.matrix_rel && rep.min_kappa > tol.scalar_abs &&
               rep.condition <= kMaxEigenbasisCondition;
  return rep;
}

}  // namespace

BiorthogonalSystem BiorthogonalSystem::from_columns(ComplexMatrix u_cols, ComplexMatrix zeta_cols,
                                                    RealVector kappa, const Tolerances& tol) {
  const Eigen::Index dim = u_cols.rows();
  if (!is_power_of_two(dim)) {
    throw_error(ErrorCode::NotPowerOfTwoDim, "system dimension must be a power of two");
  }
  if (u_cols.cols() != dim || zeta_cols.rows() != dim || zeta_cols.cols() != dim ||
      kappa.size() != dim) {
    throw_error(ErrorCode::DimensionMismatch, "system pieces disagree on dimension");
  }
  BiorthogonalSystem sys(std::move(u_cols), std::move(zeta_cols), std::move(kappa));
  const ValidationReport rep = report_for(sys.u_cols_, sys.zeta_cols_, sys.kappa_, tol);
  sys.condition_ = rep.condition;
  if (rep.min_kappa <= tol.scalar_abs) {
    throw_error(ErrorCode::NonPositiveKappa,
                "kappa must be positive, min = " + std::to_string(rep.min_kappa));
  }
  if (rep.condition > kMaxEigenbasisCondition) {
    throw_error(ErrorCode::Defective, "right basis is numerically singular");
  }
  if (!rep.passed) {
    throw_error(ErrorCode::BiorthogonalityViolation,
                "overlap deviation " + std::to_string(rep.max_overlap_deviation));
  }
  return sys;
}

ValidationReport validate(const BiorthogonalSystem& system, const Tolerances& tol) {
  return report_for(system.u_columns(), system.zeta_columns(), system.kappa(), tol);
}

BiorthogonalSystem from_explicit(const std::vector<ComplexVector>& u,
                                 const std::vector<ComplexVector>& zeta, const Tolerances& tol) {
  if (u.empty() || u.size() != zeta.size()) {
    throw_error(ErrorCode::DimensionMismatch, "from_explicit: need equally many u and zeta");
  }
  const Eigen::Index dim = u.front().size();
  if (static_cast<Eigen::Index>(u.size()) != dim) {
    throw_error(ErrorCode::DimensionMismatch, "from_explicit: need dim vectors of length dim");
  }
  ComplexMatrix u_cols(dim, dim);
  ComplexMatrix zeta_cols(dim, dim);
  RealVector kappa(dim);
  for (Eigen::Index n = 0; n < dim; ++n) {
    if (u[n].size() != dim || zeta[n].size() != dim) {
      throw_error(ErrorCode::DimensionMismatch, "from_explicit: ragged input vectors");
    }
    const double nrm = u[n].norm();
    if (nrm == 0.0) throw_error(ErrorCode::ZeroVector, "from_explicit: zero u vector");
    u_cols.col(n) = u[n] / nrm;
    zeta_cols.col(n) = zeta[n];
    const Complex k = zeta_cols.col(n).dot(u_cols.col(n));  // <zeta_n|u_n>
    if (std::abs(k.imag()) > tol.scalar_abs * std::max(1.0, std::abs(k)) ||
        k.real() <= tol.scalar_abs) {
      throw_error(ErrorCode::NonPositiveKappa, "from_explicit: <zeta_n|u_n> must be real positive");
    }
    kappa[n] = k.real();
  }
  return BiorthogonalSystem::from_columns(std::move(u_cols), std::move(zeta_cols),
                                          std::move(kappa), tol);
}

std::pair<BiorthogonalSystem, BiorthogonalOperator> from_eigen(
    const ComplexMatrix& v, KappaPolicy policy, const std::vector<double>& explicit_kappa,
    const Tolerances& tol) {
  if (!is_power_of_two(v.rows())) {
    throw_error(ErrorCode::NotPowerOfTwoDim, "from_eigen: dimension must be a power of two");
  }
  const numkernel::EigenSystem es = numkernel::eig(v);
  const Eigen::Index dim = v.rows();

  RealVector kappa(dim);
  switch (policy) {
    case KappaPolicy::ModulusOfEigenvalue:
      for (Eigen::Index n = 0; n < dim; ++n) {
        const double mod = std::abs(es.eigenvalues[n]);
        if (mod <= tol.scalar_abs) {
          throw_error(ErrorCode::SingularWithModulusPolicy,
                      "from_eigen: zero eigenvalue under modulus policy");
        }
        kappa[n] = mod;
      }
      break;
    case KappaPolicy::AllOnes:
      kappa.setOnes();
      break;
    case KappaPolicy::Explicit:
      if (static_cast<Eigen::Index>(explicit_kappa.size()) != dim) {
        throw_error(ErrorCode::ExplicitKappaInvalid, "from_eigen: kappa list has wrong length");
      }
      for (Eigen::Index n = 0; n < dim; ++n) {
        if (!(explicit_kappa[static_cast<std::size_t>(n)] > tol.scalar_abs)) {
          throw_error(ErrorCode::ExplicitKappaInvalid, "from_eigen: kappa must be positive");
        }
        kappa[n] = explicit_kappa[static_cast<std::size_t>(n)];
      }
      break;
  }

  ComplexMatrix zeta_cols(dim, dim);
  for (Eigen::Index n = 0; n < dim; ++n) {
    zeta_cols.col(n) = kappa[n] * es.left_rows.row(n).adjoint();
  }
  ComplexMatrix rep = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index n = 0; n < dim; ++n) rep(n, n) = es.eigenvalues[n] / kappa[n];

  BiorthogonalSystem sys =
      BiorthogonalSystem::from_columns(es.right_vectors, std::move(zeta_cols), kappa, tol);
  BiorthogonalOperator op{sys, std::move(rep)};
  return {std::move(sys), std::move(op)};
}

ComplexMatrix metric(const BiorthogonalSystem& system) {
  const Eigen::Index dim = system.dim();
  ComplexMatrix f = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index n = 0; n < dim; ++n) {
    f += (system.zeta(n) * system.zeta(n).adjoint()) / system.kappa()[n];
  }
  return f;
}

ComplexMatrix metric_inverse(const BiorthogonalSystem& system) {
  const Eigen::Index dim = system.dim();
  ComplexMatrix finv = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index n = 0; n < dim; ++n) {
    finv += (system.u(n) * system.u(n).adjoint()) / system.kappa()[n];
  }
  return finv;
}

ComplexVector associate(const BiorthogonalSystem& system, const ComplexVector& psi) {
  if (psi.size() != system.dim()) {
    throw_error(ErrorCode::DimensionMismatch, "associate: state dimension mismatch");
  }
  return metric(system) * psi;
}

BiorthoExpansion expand(const BiorthogonalSystem& system, const ComplexVector& psi,
                        const Tolerances& tol) {
  if (psi.size() != system.dim()) {
    throw_error(ErrorCode::DimensionMismatch, "expand: state dimension mismatch");
  }
  ComplexVector coeffs = system.zeta_columns().adjoint() * psi;
  coeffs.array() /= system.kappa().array().cast<Complex>();
  const double residual = (system.u_columns() * coeffs - psi).norm();
  const double limit = tol.matrix_rel * std::max(1.0, psi.norm()) *
                       std::max(1.0, system.condition() / 10.0);
  if (residual > limit) {
    throw_error(ErrorCode::ReconstructionFailure,
                "expand: reconstruction residual " + std::to_string(residual));
  }
  return BiorthoExpansion{std::move(coeffs)};
}

Complex bi_inner(const BiorthogonalSystem& system, const ComplexVector& phi,
                 const ComplexVector& psi, const Tolerances& tol) {
  const ComplexVector d = expand(system, phi, tol).coeffs;
  const ComplexVector c = expand(system, psi, tol).coeffs;
  Complex acc(0.0, 0.0);
  for (Eigen::Index n = 0; n < system.dim(); ++n) {
    acc += system.kappa()[n] * std::conj(d[n]) * c[n];
  }
  return acc;
}

ComplexMatrix to_computational(const BiorthogonalOperator& op) {
  return op.system.u_columns() * op.rep * op.system.zeta_columns().adjoint();
}

BiorthogonalOperator bi_adjoint(const BiorthogonalOperator& op) {
  return BiorthogonalOperator{op.system, op.rep.adjoint()};
}

bool is_bi_unitary(const BiorthogonalOperator& op, const Tolerances& tol) {
  const RealVector& kappa = op.system.kappa();
  for (Eigen::Index n = 0; n < kappa.size(); ++n) {
    if (std::abs(kappa[n] - 1.0) > tol.scalar_abs) return false;
  }
  const Eigen::Index dim = op.rep.rows();
  return (op.rep.adjoint() * op.rep - ComplexMatrix::Identity(dim, dim)).norm() <= tol.matrix_rel;
}

double pseudo_unitarity_residual(const BiorthogonalOperator& op) {
  const ComplexMatrix f = metric(op.system);
  const ComplexMatrix vc = to_computational(op);
  return (vc.adjoint() * f * vc - f).norm();
}

bool is_bi_hermitian(const BiorthogonalOperator& op, const Tolerances& tol) {
  return (op.rep - op.rep.adjoint()).norm() <= tol.matrix_rel * std::max(1.0, op.rep.norm());
}

double pseudo_hermiticity_residual(const ComplexMatrix& v_comp, const ComplexMatrix& f) {
  if (v_comp.rows() != f.rows() || v_comp.cols() != f.cols()) {
    throw_error(ErrorCode::DimensionMismatch, "pseudo_hermiticity_residual: shape mismatch");
  }
  return (v_comp.adjoint() * f - f * v_comp).norm();
}

ComplexVector apply_via_biortho(const BiorthogonalOperator& op, const ComplexVector& psi,
                                const Tolerances& tol) {
  const ComplexVector c = expand(op.system, psi, tol).coeffs;
  ComplexVector scaled = c;
  scaled.array() *= op.system.kappa().array().cast<Complex>();
  return op.system.u_columns() * (op.rep * scaled);
}

}  // namespace biodilate::biortho
