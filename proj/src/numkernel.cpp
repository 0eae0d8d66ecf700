#include "biodilate/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace biodilate::numkernel {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kModulusTieRel = 1e-9;

void require_square(const ComplexMatrix& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw_error(ErrorCode::DimensionMismatch, std::string(who) + " requires a square matrix");
  }
}

// Phase on [-pi, pi): real negatives sort next to, not opposite, values
// approaching them from below the axis.
double sort_phase(Complex z) {
  double ph = std::arg(z);
  if (ph >= kPi) ph = -kPi;
  return ph;
}

// Rephase so the first component of largest modulus is real and positive.
void fix_column_phase(Eigen::Ref<ComplexVector> col) {
  const Eigen::Index n = col.size();
  double max_mod = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) max_mod = std::max(max_mod, std::abs(col[i]));
  if (max_mod == 0.0) return;
  Eigen::Index pivot = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(col[i]) >= max_mod * (1.0 - 1e-12)) {
      pivot = i;
      break;
    }
  }
  const Complex phase = col[pivot] / std::abs(col[pivot]);
  col *= std::conj(phase);
}

}  // namespace

double frobenius(const ComplexMatrix& m) { return m.norm(); }

ComplexMatrix adjoint(const ComplexMatrix& m) { return m.adjoint(); }

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw_error(ErrorCode::DimensionMismatch, "matmul: inner dimensions differ");
  }
  return a * b;
}

ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& v) {
  if (a.cols() != v.size()) {
    throw_error(ErrorCode::DimensionMismatch, "matvec: dimensions differ");
  }
  return a * v;
}

EigenSystem eig(const ComplexMatrix& m) {
  require_square(m, "eig");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw_error(ErrorCode::NoConvergence, "eig: QR iteration did not converge");
  }

  const Eigen::Index n = m.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const ComplexVector& raw = solver.eigenvalues();
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double ma = std::abs(raw[a]);
    const double mb = std::abs(raw[b]);
    const double tie = kModulusTieRel * std::max({1.0, ma, mb});
    if (std::abs(ma - mb) > tie) return ma > mb;
    const double pa = sort_phase(raw[a]);
    const double pb = sort_phase(raw[b]);
    if (pa != pb) return pa > pb;
    if (raw[a].real() != raw[b].real()) return raw[a].real() > raw[b].real();
    return raw[a].imag() > raw[b].imag();
  });

  EigenSystem out;
  out.eigenvalues.resize(n);
  out.right_vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eigenvalues[i] = raw[order[static_cast<std::size_t>(i)]];
    ComplexVector col = solver.eigenvectors().col(order[static_cast<std::size_t>(i)]);
    const double nrm = col.norm();
    if (nrm == 0.0) throw_error(ErrorCode::NoConvergence, "eig: zero eigenvector returned");
    col /= nrm;
    fix_column_phase(col);
    out.right_vectors.col(i) = col;
  }

  Eigen::JacobiSVD<ComplexMatrix> svd(out.right_vectors);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  out.condition = (smin > 0.0) ? smax / smin : std::numeric_limits<double>::infinity();
  if (!std::isfinite(out.condition) || out.condition > kMaxEigenbasisCondition) {
    throw_error(ErrorCode::Defective, "eig: eigenvector basis condition exceeds 1e8");
  }
  out.left_rows = out.right_vectors.inverse();
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  require_square(m, "singular_values");
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

ComplexMatrix sqrt_psd(const ComplexMatrix& m, const Tolerances& tol) {
  require_square(m, "sqrt_psd");
  const double scale = std::max(1.0, frobenius(m));
  if (frobenius(m - m.adjoint()) > tol.matrix_rel * scale) {
    throw_error(ErrorCode::NotHermitian, "sqrt_psd: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver((m + m.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success) {
    throw_error(ErrorCode::NoConvergence, "sqrt_psd: eigensolver did not converge");
  }
  RealVector evals = solver.eigenvalues();
  const double floor = -tol.scalar_abs * scale;
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    if (evals[i] < floor) {
      throw_error(ErrorCode::NotPsd, "sqrt_psd: negative eigenvalue " + std::to_string(evals[i]));
    }
    evals[i] = std::max(evals[i], 0.0);
  }
  const ComplexMatrix& q = solver.eigenvectors();
  ComplexMatrix root = q * evals.cwiseSqrt().asDiagonal() * q.adjoint();
  return (root + root.adjoint()) / 2.0;
}

double fidelity(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) {
    throw_error(ErrorCode::DimensionMismatch, "fidelity: dimensions differ");
  }
  const double na = a.squaredNorm();
  const double nb = b.squaredNorm();
  if (na == 0.0 || nb == 0.0) throw_error(ErrorCode::ZeroVector, "fidelity: zero vector");
  return std::norm(a.dot(b)) / (na * nb);
}

}  // namespace biodilate::numkernel
