#include "biodilate/dilate.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "biodilate/numkernel.hpp"

namespace biodilate::dilate {

namespace {

std::vector<int> iota_register(int first, int count) {
  std::vector<int> reg(static_cast<std::size_t>(count));
  std::iota(reg.begin(), reg.end(), first);
  return reg;
}

// |front_value> on the leading `front_qubits` tensored with psi.
qsim::StateVector embed_front(std::uint64_t front_value, int front_qubits,
                              const ComplexVector& psi) {
  const int sys_qubits = log2_exact(psi.size());
  const int total = front_qubits + sys_qubits;
  qsim::StateVector s;
  s.num_qubits = total;
  s.amplitudes = ComplexVector::Zero(Eigen::Index{1} << total);
  const Eigen::Index offset = static_cast<Eigen::Index>(front_value) << sys_qubits;
  s.amplitudes.segment(offset, psi.size()) = psi;
  return s;
}

void check_normalized_input(const ComplexVector& psi) {
  if (std::abs(psi.norm() - 1.0) > kStateFileNormTol) {
    throw_error(ErrorCode::UnnormalizedTarget, "input state must have unit norm");
  }
}

void check_total_qubits(int total) {
  if (total > 16) {
    throw_error(ErrorCode::ValueOutOfRange,
                "dilation needs " + std::to_string(total) + " qubits, ceiling is 16");
  }
}

ComplexMatrix pauli_single(int which) {
  ComplexMatrix p(2, 2);
  switch (which) {
    case 0: p << 1, 0, 0, 1; break;
    case 1: p << 0, 1, 1, 0; break;
    case 2: p << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0); break;
    default: p << 1, 0, 0, -1; break;
  }
  return p;
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::Biortho: return "biortho";
    case Method::Lcu: return "lcu";
    case Method::SzNagy: return "sznagy";
  }
  return "unknown";
}

DilationPlan biortho_plan(const biortho::BiorthogonalOperator& op, const Tolerances& tol) {
  const Eigen::Index dim = op.system.dim();
  const int n_qubits = log2_exact(dim);
  check_total_qubits(2 * n_qubits);

  const ComplexMatrix rep_gram =
      op.rep.adjoint() * op.rep - ComplexMatrix::Identity(dim, dim);
  if (rep_gram.norm() > kGateUnitarityTol) {
    throw_error(ErrorCode::NonUnitaryRepresentation,
                "matrix representation must be unitary, residual " +
                    std::to_string(rep_gram.norm()));
  }

  const std::vector<int> first = iota_register(0, n_qubits);
  const std::vector<int> second = iota_register(n_qubits, n_qubits);

  DilationPlan plan;
  plan.method = Method::Biortho;
  plan.ancilla_qubits = n_qubits;
  plan.system_qubits = n_qubits;
  plan.postselect_register = first;
  plan.postselect_value = 0;
  plan.scale = std::sqrt(static_cast<double>(Eigen::Index{1} << n_qubits));
  plan.target = biortho::to_computational(op);
  plan.kappa.assign(op.system.kappa().data(), op.system.kappa().data() + dim);
  plan.op = op;

  qsim::Circuit& c = plan.circuit;
  c.num_qubits = 2 * n_qubits;
  // Placeholder: the preparation unitary depends on the input state and is
  // substituted at run time.
  c.gates.push_back(qsim::make_gate(ComplexMatrix::Identity(dim, dim), first, {},
                                    qsim::GateLabel::Prep, "U_prep"));
  plan.prep_gate_index = 0;
  c.gates.push_back(qsim::make_gate(op.rep, first, {}, qsim::GateLabel::Rep, "V_rep"));
  for (Eigen::Index n = 0; n < dim; ++n) {
    c.gates.push_back(qsim::controlled_on_value(
        first, static_cast<std::uint64_t>(n), qsim::state_prep_unitary(op.system.u(n)), second,
        qsim::GateLabel::ControlledBasis, "C" + std::to_string(n) + "_U"));
  }
  const qsim::Circuit qft = qsim::qft_circuit(c.num_qubits, first);
  c.gates.insert(c.gates.end(), qft.gates.begin(), qft.gates.end());
  (void)tol;
  return plan;
}

DilationOutcome biortho_run(const DilationPlan& plan, const ComplexVector& psi,
                            qsim::KernelMode mode, const Tolerances& tol) {
  if (plan.method != Method::Biortho || !plan.op.has_value()) {
    throw_error(ErrorCode::ValueOutOfRange, "biortho_run: plan was built for another method");
  }
  check_normalized_input(psi);
  const biortho::BiorthogonalOperator& op = *plan.op;
  const Eigen::Index dim = op.system.dim();
  if (psi.size() != dim) {
    throw_error(ErrorCode::DimensionMismatch, "biortho_run: state dimension mismatch");
  }

  const ComplexVector coeffs = biortho::expand(op.system, psi, tol).coeffs;
  ComplexVector weighted = coeffs;
  weighted.array() *= op.system.kappa().array().cast<Complex>();
  const double c_norm = weighted.norm();
  if (c_norm < kZeroProbabilityTol) {
    throw_error(ErrorCode::ZeroProbabilityBranch, "biortho_run: amplitude norm is zero");
  }

  qsim::Circuit circuit = plan.circuit;
  circuit.gates[static_cast<std::size_t>(plan.prep_gate_index)] = qsim::make_gate(
      qsim::state_prep_unitary(weighted / c_norm), plan.postselect_register, {},
      qsim::GateLabel::Prep, "U_prep");

  const qsim::StateVector final_state =
      qsim::run(qsim::StateVector::zero(circuit.num_qubits), circuit, mode);
  const qsim::PostSelectionResult ps =
      qsim::postselect(final_state, plan.postselect_register, plan.postselect_value);

  DilationOutcome out;
  out.output_state = ps.state.amplitudes;
  out.simulated_probability = ps.probability;
  out.unnormalized_output = ps.state.amplitudes * std::sqrt(ps.probability);
  out.effective_scale = plan.scale * c_norm;
  out.predicted_probability =
      (plan.target * psi).squaredNorm() / (c_norm * c_norm * std::pow(2.0, plan.ancilla_qubits));
  out.fidelity_vs_oracle =
      numkernel::fidelity(out.output_state, biortho::apply_via_biortho(op, psi, tol));
  return out;
}

std::vector<UnitarySummand> pauli_decompose(const ComplexMatrix& v) {
  const Eigen::Index dim = v.rows();
  if (v.cols() != dim || !is_power_of_two(dim)) {
    throw_error(ErrorCode::NotPowerOfTwoDim, "pauli_decompose: dimension must be 2^N");
  }
  const int n_qubits = log2_exact(dim);

  std::vector<UnitarySummand> summands;
  const std::uint64_t strings = std::uint64_t{1} << (2 * n_qubits);
  for (std::uint64_t s = 0; s < strings; ++s) {
    // Base-4 digits, first qubit in the most significant digit.
    ComplexMatrix p = ComplexMatrix::Identity(1, 1);
    for (int q = 0; q < n_qubits; ++q) {
      const int digit = static_cast<int>((s >> (2 * (n_qubits - 1 - q))) & 3ULL);
      const ComplexMatrix sigma = pauli_single(digit);
      ComplexMatrix next(p.rows() * 2, p.cols() * 2);
      next.topLeftCorner(p.rows(), p.cols()) = sigma(0, 0) * p;
      next.topRightCorner(p.rows(), p.cols()) = sigma(0, 1) * p;
      next.bottomLeftCorner(p.rows(), p.cols()) = sigma(1, 0) * p;
      next.bottomRightCorner(p.rows(), p.cols()) = sigma(1, 1) * p;
      p = std::move(next);
    }
    const Complex alpha = (p.adjoint() * v).trace() / static_cast<double>(dim);
    if (std::abs(alpha) <= 1e-12) continue;
    UnitarySummand summand;
    summand.weight = std::abs(alpha);
    summand.unitary = (alpha / std::abs(alpha)) * p;
    summands.push_back(std::move(summand));
  }
  return summands;
}

DilationPlan lcu_plan(const std::vector<UnitarySummand>& summands, const Tolerances& tol) {
  if (summands.empty()) {
    throw_error(ErrorCode::ValueOutOfRange, "lcu_plan: need at least one summand");
  }
  const Eigen::Index dim = summands.front().unitary.rows();
  const int sys_qubits = log2_exact(dim);
  double s = 0.0;
  for (const UnitarySummand& term : summands) {
    if (term.unitary.rows() != dim || term.unitary.cols() != dim) {
      throw_error(ErrorCode::DimensionMismatch, "lcu_plan: summand dimensions differ");
    }
    if (!(term.weight > 0.0)) {
      throw_error(ErrorCode::NonUnitarySummand, "lcu_plan: weights must be positive");
    }
    if ((term.unitary.adjoint() * term.unitary - ComplexMatrix::Identity(dim, dim)).norm() >
        kGateUnitarityTol) {
      throw_error(ErrorCode::NonUnitarySummand, "lcu_plan: summand is not unitary");
    }
    s += term.weight;
  }

  int ancilla = 0;
  while ((std::size_t{1} << ancilla) < summands.size()) ++ancilla;
  check_total_qubits(ancilla + sys_qubits);

  const std::vector<int> anc_reg = iota_register(0, ancilla);
  const std::vector<int> sys_reg = iota_register(ancilla, sys_qubits);

  DilationPlan plan;
  plan.method = Method::Lcu;
  plan.ancilla_qubits = ancilla;
  plan.system_qubits = sys_qubits;
  plan.postselect_register = anc_reg;
  plan.postselect_value = 0;
  plan.scale = s;
  plan.target = ComplexMatrix::Zero(dim, dim);
  for (const UnitarySummand& term : summands) {
    plan.target += term.weight * term.unitary;
    plan.weights.push_back(term.weight);
  }

  qsim::Circuit& c = plan.circuit;
  c.num_qubits = ancilla + sys_qubits;
  if (ancilla > 0) {
    ComplexVector prep_amps = ComplexVector::Zero(Eigen::Index{1} << ancilla);
    for (std::size_t i = 0; i < summands.size(); ++i) {
      prep_amps[static_cast<Eigen::Index>(i)] = std::sqrt(summands[i].weight / s);
    }
    const ComplexMatrix prep = qsim::state_prep_unitary(prep_amps);
    c.gates.push_back(qsim::make_gate(prep, anc_reg, {}, qsim::GateLabel::Prep, "U_prep"));
    for (std::size_t i = 0; i < summands.size(); ++i) {
      c.gates.push_back(qsim::controlled_on_value(anc_reg, i, summands[i].unitary, sys_reg,
                                                  qsim::GateLabel::ControlledBasis,
                                                  "C" + std::to_string(i) + "_U"));
    }
    c.gates.push_back(
        qsim::make_gate(prep.adjoint(), anc_reg, {}, qsim::GateLabel::Prep, "U_prep_dag"));
  } else {
    c.gates.push_back(qsim::make_gate(summands.front().unitary, sys_reg, {},
                                      qsim::GateLabel::ControlledBasis, "U0"));
  }
  (void)tol;
  return plan;
}

DilationOutcome lcu_run(const DilationPlan& plan, const ComplexVector& psi, qsim::KernelMode mode,
                        const Tolerances& tol) {
  if (plan.method != Method::Lcu) {
    throw_error(ErrorCode::ValueOutOfRange, "lcu_run: plan was built for another method");
  }
  check_normalized_input(psi);
  if (psi.size() != (Eigen::Index{1} << plan.system_qubits)) {
    throw_error(ErrorCode::DimensionMismatch, "lcu_run: state dimension mismatch");
  }

  const qsim::StateVector initial = embed_front(0, plan.ancilla_qubits, psi);
  const qsim::StateVector final_state = qsim::run(initial, plan.circuit, mode);
  const qsim::PostSelectionResult ps =
      qsim::postselect(final_state, plan.postselect_register, plan.postselect_value);

  DilationOutcome out;
  out.output_state = ps.state.amplitudes;
  out.simulated_probability = ps.probability;
  out.unnormalized_output = ps.state.amplitudes * std::sqrt(ps.probability);
  out.effective_scale = plan.scale;
  const ComplexVector oracle = plan.target * psi;
  out.predicted_probability = oracle.squaredNorm() / (plan.scale * plan.scale);
  out.fidelity_vs_oracle = numkernel::fidelity(out.output_state, oracle);
  (void)tol;
  return out;
}

DilationPlan sznagy_plan(const ComplexMatrix& v, const Tolerances& tol) {
  const Eigen::Index dim = v.rows();
  if (v.cols() != dim || !is_power_of_two(dim)) {
    throw_error(ErrorCode::NotPowerOfTwoDim, "sznagy_plan: dimension must be 2^N");
  }
  const int sys_qubits = log2_exact(dim);
  check_total_qubits(1 + sys_qubits);

  const std::vector<double> sv = numkernel::singular_values(v);
  if (sv.front() > 1.0 + kContractionMargin) {
    throw_error(ErrorCode::NotAContraction,
                "sznagy_plan: operator norm " + std::to_string(sv.front()) + " exceeds 1");
  }

  const ComplexMatrix identity = ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix defect = numkernel::sqrt_psd(identity - v.adjoint() * v, tol);
  const ComplexMatrix defect_adj = numkernel::sqrt_psd(identity - v * v.adjoint(), tol);

  ComplexMatrix block(2 * dim, 2 * dim);
  block.topLeftCorner(dim, dim) = v;
  block.topRightCorner(dim, dim) = defect_adj;
  block.bottomLeftCorner(dim, dim) = defect;
  block.bottomRightCorner(dim, dim) = -v.adjoint();
  const double unitarity =
      (block.adjoint() * block - ComplexMatrix::Identity(2 * dim, 2 * dim)).norm();
  if (unitarity > 1e-8) {
    throw_error(ErrorCode::NonUnitaryGate,
                "sznagy_plan: dilation block failed unitarity, residual " +
                    std::to_string(unitarity));
  }

  DilationPlan plan;
  plan.method = Method::SzNagy;
  plan.ancilla_qubits = 1;
  plan.system_qubits = sys_qubits;
  plan.postselect_register = {0};
  plan.postselect_value = 0;
  plan.scale = 1.0;
  plan.target = v;
  for (double sigma : numkernel::singular_values(defect)) plan.defect_spectrum.push_back(sigma);

  plan.circuit.num_qubits = 1 + sys_qubits;
  std::vector<int> all = iota_register(0, 1 + sys_qubits);
  plan.circuit.gates.push_back(
      qsim::make_gate(block, std::move(all), {}, qsim::GateLabel::Other, "DILATION"));
  return plan;
}

DilationOutcome sznagy_run(const DilationPlan& plan, const ComplexVector& psi,
                           qsim::KernelMode mode, const Tolerances& tol) {
  if (plan.method != Method::SzNagy) {
    throw_error(ErrorCode::ValueOutOfRange, "sznagy_run: plan was built for another method");
  }
  check_normalized_input(psi);
  if (psi.size() != (Eigen::Index{1} << plan.system_qubits)) {
    throw_error(ErrorCode::DimensionMismatch, "sznagy_run: state dimension mismatch");
  }

  const qsim::StateVector initial = embed_front(0, 1, psi);
  const qsim::StateVector final_state = qsim::run(initial, plan.circuit, mode);
  const qsim::PostSelectionResult ps =
      qsim::postselect(final_state, plan.postselect_register, plan.postselect_value);

  DilationOutcome out;
  out.output_state = ps.state.amplitudes;
  out.simulated_probability = ps.probability;
  out.unnormalized_output = ps.state.amplitudes * std::sqrt(ps.probability);
  out.effective_scale = 1.0;
  const ComplexVector oracle = plan.target * psi;
  out.predicted_probability = oracle.squaredNorm();
  out.fidelity_vs_oracle = numkernel::fidelity(out.output_state, oracle);
  (void)tol;
  return out;
}

ComparisonReport compare(const ComplexMatrix& v, const ComplexVector& psi,
                         biortho::KappaPolicy policy, const Tolerances& tol) {
  if (v.rows() != v.cols() || !is_power_of_two(v.rows())) {
    throw_error(ErrorCode::NotPowerOfTwoDim, "compare: dimension must be 2^N");
  }
  if (psi.size() != v.rows()) {
    throw_error(ErrorCode::DimensionMismatch, "compare: state dimension mismatch");
  }
  check_normalized_input(psi);

  ComparisonReport report;
  report.dim = static_cast<int>(v.rows());

  try {
    const numkernel::EigenSystem es = numkernel::eig(v);
    for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i) {
      report.eigenvalue_moduli.push_back(std::abs(es.eigenvalues[i]));
    }
  } catch (const Error&) {
    // Defective input: moduli stay empty, recorded per method below.
  }
  report.sigma_max = numkernel::singular_values(v).front();
  report.contraction = report.sigma_max <= 1.0 + kContractionMargin;

  const ComplexVector oracle = v * psi;

  auto record = [&](Method method, auto&& plan_fn, auto&& run_fn) {
    MethodEntry entry;
    entry.method = method;
    try {
      DilationPlan plan = plan_fn();
      entry.ancilla_qubits = plan.ancilla_qubits;
      entry.census = qsim::gate_census(plan.circuit);
      DilationOutcome outcome = run_fn(plan);
      entry.applicable = true;
      entry.predicted_probability = outcome.predicted_probability;
      entry.simulated_probability = outcome.simulated_probability;
      entry.fidelity_vs_oracle = numkernel::fidelity(outcome.output_state, oracle);
    } catch (const Error& e) {
      entry.applicable = false;
      entry.error = error_code_name(e.code());
      entry.notes = e.what();
    }
    report.methods.push_back(std::move(entry));
  };

  record(
      Method::Biortho,
      [&] {
        auto [sys, op] = biortho::from_eigen(v, policy, {}, tol);
        return biortho_plan(op, tol);
      },
      [&](const DilationPlan& plan) { return biortho_run(plan, psi, qsim::KernelMode::Auto, tol); });
  record(
      Method::Lcu, [&] { return lcu_plan(pauli_decompose(v), tol); },
      [&](const DilationPlan& plan) { return lcu_run(plan, psi, qsim::KernelMode::Auto, tol); });
  record(
      Method::SzNagy, [&] { return sznagy_plan(v, tol); },
      [&](const DilationPlan& plan) { return sznagy_run(plan, psi, qsim::KernelMode::Auto, tol); });

  return report;
}

}  // namespace biodilate::dilate
