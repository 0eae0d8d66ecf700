#include "biodilate/randgen.hpp"

#include <cmath>

namespace biodilate::randgen {

Rng substream(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 over (seed, index) so substreams are independent of the
  // draw order in the parent stream.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z = z ^ (z >> 31);
  return Rng(z);
}

Complex random_complex(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double re = gauss(rng);
  const double im = gauss(rng);
  return Complex(re, im);
}

ComplexVector random_state(Rng& rng, Eigen::Index dim) {
  ComplexVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = random_complex(rng);
  const double norm = v.norm();
  if (norm == 0.0) {
    v.setZero();
    v[0] = Complex(1.0, 0.0);
    return v;
  }
  return v / norm;
}

ComplexMatrix random_unitary(Rng& rng, Eigen::Index dim) {
  ComplexMatrix g(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) g(r, c) = random_complex(rng);
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    q.col(i) *= (std::abs(d) > 0.0) ? d / std::abs(d) : Complex(1.0, 0.0);
  }
  return q;
}

ComplexMatrix random_diagonalizable(Rng& rng, Eigen::Index dim, double min_modulus,
                                    double max_modulus, double basis_condition) {
  std::uniform_real_distribution<double> mod(min_modulus, max_modulus);
  std::uniform_real_distribution<double> angle(-3.14159265358979323846, 3.14159265358979323846);
  ComplexVector lambdas(dim);
  for (Eigen::Index i = 0; i < dim; ++i) lambdas[i] = std::polar(mod(rng), angle(rng));

  // S = Q1 diag(s) Q2 with singular values spread over [1/sqrt(c), sqrt(c)].
  const double spread = std::sqrt(basis_condition);
  std::uniform_real_distribution<double> sv(1.0 / spread, spread);
  RealVector sigma(dim);
  for (Eigen::Index i = 0; i < dim; ++i) sigma[i] = sv(rng);
  const ComplexMatrix q1 = random_unitary(rng, dim);
  const ComplexMatrix q2 = random_unitary(rng, dim);
  const ComplexMatrix s = q1 * sigma.cast<Complex>().asDiagonal() * q2;
  return s * lambdas.asDiagonal() * s.inverse();
}

ComplexMatrix random_contraction(Rng& rng, Eigen::Index dim, double max_norm) {
  ComplexMatrix g(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) g(r, c) = random_complex(rng);
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(g);
  const double top = svd.singularValues().maxCoeff();
  return g * (max_norm / top);
}

biortho::BiorthogonalSystem random_system(Rng& rng, Eigen::Index dim) {
  std::uniform_real_distribution<double> kappa_dist(0.5, 2.0);
  ComplexMatrix u_cols = random_unitary(rng, dim);
  // Mildly shear the unitary columns so the basis is genuinely non-orthogonal.
  const ComplexMatrix shear =
      ComplexMatrix::Identity(dim, dim) + 0.3 * random_unitary(rng, dim);
  u_cols = shear * u_cols;
  for (Eigen::Index c = 0; c < dim; ++c) u_cols.col(c) /= u_cols.col(c).norm();

  RealVector kappa(dim);
  for (Eigen::Index i = 0; i < dim; ++i) kappa[i] = kappa_dist(rng);
  const ComplexMatrix inv = u_cols.inverse();
  ComplexMatrix zeta_cols(dim, dim);
  for (Eigen::Index n = 0; n < dim; ++n) zeta_cols.col(n) = kappa[n] * inv.row(n).adjoint();
  return biortho::BiorthogonalSystem::from_columns(std::move(u_cols), std::move(zeta_cols),
                                                   std::move(kappa));
}

biortho::BiorthogonalSystem random_orthonormal_system(Rng& rng, Eigen::Index dim) {
  const ComplexMatrix q = random_unitary(rng, dim);
  RealVector kappa = RealVector::Ones(dim);
  return biortho::BiorthogonalSystem::from_columns(q, q, std::move(kappa));
}

}  // namespace biodilate::randgen
