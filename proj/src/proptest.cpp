#include "biodilate/proptest.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "biodilate/biortho.hpp"
#include "biodilate/dilate.hpp"
#include "biodilate/numkernel.hpp"
#include "biodilate/qsim.hpp"
#include "biodilate/randgen.hpp"

namespace biodilate::proptest {

namespace {

using randgen::Rng;

std::string context(int dim, int case_idx, const char* what) {
  std::ostringstream out;
  out << what << " [dim=" << dim << " case=" << case_idx << "]";
  return out.str();
}

struct Checker {
  Summary* summary;
  int dim;
  int case_idx;

  void expect(bool ok, const char* what, double value = 0.0) const {
    if (ok) return;
    std::ostringstream out;
    out << context(dim, case_idx, what) << " value=" << value;
    summary->failures.push_back(out.str());
  }
};

void numkernel_case(const Checker& chk, Rng& rng, int dim) {
  const ComplexMatrix m = randgen::random_diagonalizable(rng, dim);
  const numkernel::EigenSystem es = numkernel::eig(m);

  const ComplexMatrix recon =
      es.right_vectors * es.eigenvalues.asDiagonal() * es.left_rows;
  chk.expect((recon - m).norm() <= 1e-9 * std::max(1.0, m.norm()), "eig reconstruction",
             (recon - m).norm());
  const ComplexMatrix gram = es.left_rows * es.right_vectors;
  chk.expect((gram - ComplexMatrix::Identity(dim, dim)).norm() <= 1e-9,
             "left rows invert right vectors",
             (gram - ComplexMatrix::Identity(dim, dim)).norm());
  for (Eigen::Index c = 0; c < dim; ++c) {
    chk.expect(std::abs(es.right_vectors.col(c).norm() - 1.0) <= 1e-10,
               "unit-norm right eigenvector");
  }
  chk.expect(numkernel::adjoint(numkernel::adjoint(m)) == m, "adjoint involution");

  const std::vector<double> sv = numkernel::singular_values(m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> gramsolver(m.adjoint() * m);
  for (std::size_t i = 0; i < sv.size(); ++i) {
    const double expected = gramsolver.eigenvalues()[dim - 1 - static_cast<Eigen::Index>(i)];
    chk.expect(std::abs(sv[i] * sv[i] - expected) <= 1e-9 * std::max(1.0, expected),
               "singular values vs gram eigenvalues", sv[i] * sv[i] - expected);
  }

  ComplexMatrix g(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) g(r, c) = randgen::random_complex(rng);
  }
  const ComplexMatrix psd = g.adjoint() * g;
  const ComplexMatrix root = numkernel::sqrt_psd(psd);
  chk.expect((root * root - psd).norm() <= 1e-9 * std::max(1.0, psd.norm()),
             "sqrt_psd squares back", (root * root - psd).norm());
  chk.expect((root - root.adjoint()).norm() <= 1e-10, "sqrt_psd Hermitian");
}

void biortho_case(const Checker& chk, Rng& rng, int dim, const Tolerances& tol) {
  const biortho::BiorthogonalSystem sys = randgen::random_system(rng, dim);
  const ComplexMatrix identity = ComplexMatrix::Identity(dim, dim);
  const double kmax = sys.kappa().maxCoeff();

  const ComplexMatrix overlaps = sys.zeta_columns().adjoint() * sys.u_columns();
  chk.expect((overlaps - ComplexMatrix(sys.kappa().cast<Complex>().asDiagonal())).norm() <=
                 1e-9 * std::max(1.0, kmax),
             "diagonal overlaps");

  const ComplexMatrix f = biortho::metric(sys);
  const ComplexMatrix finv = biortho::metric_inverse(sys);
  chk.expect((f - f.adjoint()).norm() <= 1e-10 * std::max(1.0, f.norm()), "metric Hermitian");
  chk.expect((f * finv - identity).norm() <= 1e-9 * std::max(1.0, f.norm()),
             "metric times inverse");
  for (Eigen::Index n = 0; n < dim; ++n) {
    chk.expect((f * sys.u(n) - sys.zeta(n)).norm() <= 1e-9 * std::max(1.0, kmax),
               "metric maps u to zeta");
  }
  ComplexMatrix unity = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index n = 0; n < dim; ++n) {
    unity += (sys.u(n) * sys.zeta(n).adjoint()) / sys.kappa()[n];
  }
  chk.expect((unity - identity).norm() <= 1e-9, "resolution of unity");

  const ComplexVector psi = randgen::random_state(rng, dim);
  const ComplexVector coeffs = biortho::expand(sys, psi, tol).coeffs;
  chk.expect((sys.u_columns() * coeffs - psi).norm() <= 1e-9, "expand reconstructs");
  const Complex self = biortho::bi_inner(sys, psi, psi, tol);
  chk.expect(std::abs(self.imag()) <= 1e-10 && self.real() > 0.0, "bi_inner positivity",
             self.real());

  // Operator laws on a modulus-policy construction.
  const ComplexMatrix v = randgen::random_diagonalizable(rng, dim);
  const biortho::BiorthogonalOperator vop =
      biortho::from_eigen(v, biortho::KappaPolicy::ModulusOfEigenvalue, {}, tol).second;
  const ComplexMatrix vc = biortho::to_computational(vop);
  chk.expect((vc - v).norm() <= 1e-8 * std::max(1.0, v.norm()), "from_eigen round trip",
             (vc - v).norm());

  const ComplexMatrix fv = biortho::metric(vop.system);
  const ComplexMatrix fv_inv = biortho::metric_inverse(vop.system);
  const ComplexMatrix adj_comp = biortho::to_computational(biortho::bi_adjoint(vop));
  chk.expect((vc.adjoint() - fv * adj_comp * fv_inv).norm() <= 1e-8,
             "involutions related through the metric",
             (vc.adjoint() - fv * adj_comp * fv_inv).norm());

  ComplexMatrix relaxed = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index n = 0; n < dim; ++n) {
    relaxed += vop.system.kappa()[n] * vop.system.u(n) * vop.system.zeta(n).adjoint();
  }
  chk.expect((adj_comp * vc - relaxed).norm() <= 1e-8, "relaxed product law",
             (adj_comp * vc - relaxed).norm());

  // Unit-kappa systems: bi-unitarity is equivalent to a unitary representation.
  const biortho::BiorthogonalSystem osys = randgen::random_orthonormal_system(rng, dim);
  const biortho::BiorthogonalOperator uop{osys, randgen::random_unitary(rng, dim)};
  chk.expect(biortho::is_bi_unitary(uop, tol), "unitary rep at unit kappa is bi-unitary");
  chk.expect(biortho::pseudo_unitarity_residual(uop) <= 1e-8, "bi-unitary metric residual",
             biortho::pseudo_unitarity_residual(uop));
  biortho::BiorthogonalOperator nop{osys, randgen::random_unitary(rng, dim)};
  nop.rep *= 1.5;
  chk.expect(!biortho::is_bi_unitary(nop, tol), "scaled rep is not bi-unitary");
  chk.expect(biortho::pseudo_unitarity_residual(nop) > 1e-8, "non-bi-unitary metric residual");
}

void qsim_case(const Checker& chk, Rng& rng, int dim) {
  const int n_qubits = log2_exact(dim);

  // Random circuit: layers of controlled and plain 1-qubit unitaries.
  const int total_qubits = n_qubits + 1;
  qsim::Circuit circuit;
  circuit.num_qubits = total_qubits;
  std::uniform_int_distribution<int> pick(0, total_qubits - 1);
  for (int g = 0; g < 8; ++g) {
    const int target = pick(rng);
    const ComplexMatrix u = randgen::random_unitary(rng, 2);
    if (g % 2 == 0) {
      circuit.gates.push_back(qsim::make_gate(u, {target}));
    } else {
      int control = pick(rng);
      while (control == target) control = pick(rng);
      circuit.gates.push_back(qsim::make_gate(u, {target}, {{control, g % 4 == 1 ? 1 : 0}}));
    }
  }
  qsim::StateVector init;
  init.num_qubits = total_qubits;
  init.amplitudes = randgen::random_state(rng, Eigen::Index{1} << total_qubits);

  const qsim::StateVector serial = qsim::run(init, circuit, qsim::KernelMode::Serial);
  const qsim::StateVector parallel = qsim::run(init, circuit, qsim::KernelMode::Parallel);
  chk.expect((serial.amplitudes - parallel.amplitudes).norm() <= 1e-13,
             "serial and parallel kernels agree",
             (serial.amplitudes - parallel.amplitudes).norm());
  chk.expect(std::abs(serial.amplitudes.norm() - 1.0) <= 1e-10, "norm preserved");

  // Post-selection probabilities over all outcomes of a register sum to one.
  const std::vector<int> reg = {0, 1};
  double total_p = 0.0;
  for (std::uint64_t outcome = 0; outcome < 4; ++outcome) {
    try {
      total_p += qsim::postselect(serial, reg, outcome).probability;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ZeroProbabilityBranch) throw;
    }
  }
  chk.expect(std::abs(total_p - 1.0) <= 1e-10, "postselect probabilities sum to one", total_p);

  // Zero-outcome equivalence of the Fourier transform and plain Hadamards.
  const int nq = std::min(n_qubits, 4);
  qsim::StateVector wide;
  wide.num_qubits = 2 * nq;
  wide.amplitudes = randgen::random_state(rng, Eigen::Index{1} << (2 * nq));
  std::vector<int> first(static_cast<std::size_t>(nq));
  for (int q = 0; q < nq; ++q) first[static_cast<std::size_t>(q)] = q;

  const qsim::StateVector after_qft = qsim::run(wide, qsim::qft_circuit(2 * nq, first));
  qsim::Circuit hadamards;
  hadamards.num_qubits = 2 * nq;
  ComplexMatrix h(2, 2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  h << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
  for (int q : first) hadamards.gates.push_back(qsim::make_gate(h, {q}));
  const qsim::StateVector after_h = qsim::run(wide, hadamards);

  const qsim::PostSelectionResult ps_qft = qsim::postselect(after_qft, first, 0);
  const qsim::PostSelectionResult ps_h = qsim::postselect(after_h, first, 0);
  chk.expect(std::abs(ps_qft.probability - ps_h.probability) <= 1e-10,
             "zero-row equivalence (probability)",
             std::abs(ps_qft.probability - ps_h.probability));
  chk.expect((ps_qft.state.amplitudes - ps_h.state.amplitudes).norm() <= 1e-10,
             "zero-row equivalence (state)",
             (ps_qft.state.amplitudes - ps_h.state.amplitudes).norm());

  // State preparation maps e0 to the target and stays unitary.
  const ComplexVector target = randgen::random_state(rng, dim);
  const ComplexMatrix prep = qsim::state_prep_unitary(target);
  chk.expect((prep.adjoint() * prep - ComplexMatrix::Identity(dim, dim)).norm() <= 1e-10,
             "prep unitary");
  chk.expect((prep.col(0) - target).norm() <= 1e-10, "prep first column");
}

void dilate_case(const Checker& chk, Rng& rng, int dim, const Tolerances& tol) {
  const ComplexVector psi = randgen::random_state(rng, dim);

  // Biorthogonal dilation on a random invertible diagonalizable operator.
  const ComplexMatrix v = randgen::random_diagonalizable(rng, dim);
  const biortho::BiorthogonalOperator op =
      biortho::from_eigen(v, biortho::KappaPolicy::ModulusOfEigenvalue, {}, tol).second;
  const dilate::DilationPlan plan = dilate::biortho_plan(op, tol);
  chk.expect(plan.ancilla_qubits == log2_exact(dim), "ancilla count equals register width");
  const qsim::GateCensus census = qsim::gate_census(plan.circuit);
  chk.expect(census.controlled_basis == dim, "one controlled basis gate per index");

  const dilate::DilationOutcome outcome = dilate::biortho_run(plan, psi,
                                                              qsim::KernelMode::Auto, tol);
  chk.expect(outcome.fidelity_vs_oracle >= 1.0 - 1e-8, "biortho fidelity vs oracle",
             outcome.fidelity_vs_oracle);
  chk.expect(std::abs(outcome.simulated_probability - outcome.predicted_probability) <= 1e-10,
             "biortho probability consistency",
             outcome.simulated_probability - outcome.predicted_probability);
  chk.expect((outcome.unnormalized_output * outcome.effective_scale - v * psi).norm() <=
                 1e-9 * std::max(1.0, (v * psi).norm()),
             "biortho scale law");

  if (dim <= 8) {
    const std::vector<dilate::UnitarySummand> summands = dilate::pauli_decompose(v);
    ComplexMatrix rebuilt = ComplexMatrix::Zero(dim, dim);
    for (const auto& s : summands) rebuilt += s.weight * s.unitary;
    chk.expect((rebuilt - v).norm() <= 1e-10 * std::max(1.0, v.norm()),
               "pauli decomposition rebuilds", (rebuilt - v).norm());

    const dilate::DilationPlan lplan = dilate::lcu_plan(summands, tol);
    const dilate::DilationOutcome lout = dilate::lcu_run(lplan, psi, qsim::KernelMode::Auto, tol);
    chk.expect(numkernel::fidelity(lout.output_state, v * psi) >= 1.0 - 1e-8,
               "lcu fidelity vs oracle");
    chk.expect(std::abs(lout.simulated_probability - lout.predicted_probability) <= 1e-10,
               "lcu probability consistency");
    chk.expect((lout.unnormalized_output * lout.effective_scale - v * psi).norm() <= 1e-9,
               "lcu scale law");
  }

  // Sz.-Nagy on a strict contraction.
  const ComplexMatrix w = randgen::random_contraction(rng, dim);
  const dilate::DilationPlan splan = dilate::sznagy_plan(w, tol);
  const dilate::DilationOutcome sout = dilate::sznagy_run(splan, psi, qsim::KernelMode::Auto, tol);
  chk.expect(numkernel::fidelity(sout.output_state, w * psi) >= 1.0 - 1e-8,
             "sznagy fidelity vs oracle");
  chk.expect(std::abs(sout.simulated_probability - (w * psi).squaredNorm()) <= 1e-10,
             "sznagy probability consistency");
  chk.expect((sout.unnormalized_output - w * psi).norm() <= 1e-9, "sznagy scale law");
}

void negative_cases(Summary& summary, const Tolerances& tol) {
  Rng rng = randgen::substream(7, 7);
  const Eigen::Index dim = 4;
  const biortho::BiorthogonalSystem sys = randgen::random_system(rng, dim);
  std::vector<ComplexVector> u;
  std::vector<ComplexVector> zeta;
  for (Eigen::Index n = 0; n < dim; ++n) {
    u.push_back(sys.u(n));
    zeta.push_back(sys.zeta(n));
  }
  zeta[0] += 0.25 * u[1];  // breaks the off-diagonal overlap
  bool caught = false;
  try {
    (void)biortho::from_explicit(u, zeta, tol);
  } catch (const Error& e) {
    caught = e.code() == ErrorCode::BiorthogonalityViolation;
  }
  if (!caught) {
    summary.failures.push_back("corrupted zeta input was not rejected");
  }
}

}  // namespace

Summary run(const Options& options) {
  for (int dim : options.dims) {
    if (!is_power_of_two(dim) || dim < 2 || dim > 256) {
      throw_error(ErrorCode::ValueOutOfRange,
                  "proptest dims must be powers of two in [2, 256]");
    }
  }
  Summary summary;
  for (int dim : options.dims) {
    for (int case_idx = 0; case_idx < options.cases; ++case_idx) {
      const std::uint64_t key =
          (static_cast<std::uint64_t>(dim) << 32) | static_cast<std::uint64_t>(case_idx);
      Rng rng = randgen::substream(options.seed, key);
      Checker chk{&summary, dim, case_idx};
      numkernel_case(chk, rng, dim);
      biortho_case(chk, rng, dim, options.tol);
      qsim_case(chk, rng, dim);
      dilate_case(chk, rng, dim, options.tol);
      ++summary.cases_run;
    }
  }
  if (options.cases > 0) negative_cases(summary, options.tol);
  return summary;
}

}  // namespace biodilate::proptest
