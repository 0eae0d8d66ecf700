#include "biodilate/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "biodilate/qsim_kernels.hpp"

namespace biodilate::qsim {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

void check_unitary(const ComplexMatrix& m, const char* who) {
  const Eigen::Index d = m.rows();
  if (d != m.cols() || !is_power_of_two(d)) {
    throw_error(ErrorCode::NonUnitaryGate, std::string(who) + ": matrix must be square 2^k");
  }
  if ((m.adjoint() * m - ComplexMatrix::Identity(d, d)).norm() > kGateUnitarityTol) {
    throw_error(ErrorCode::NonUnitaryGate, std::string(who) + ": matrix is not unitary");
  }
}

std::uint64_t register_bit(const StateVector& s, int qubit) {
  return std::uint64_t{1} << (s.num_qubits - 1 - qubit);
}

void check_register(int num_qubits, const std::vector<int>& reg, const char* who) {
  std::set<int> seen;
  for (int q : reg) {
    if (q < 0 || q >= num_qubits) {
      throw_error(ErrorCode::IndexOutOfRange, std::string(who) + ": qubit " + std::to_string(q));
    }
    if (!seen.insert(q).second) {
      throw_error(ErrorCode::IndexOutOfRange, std::string(who) + ": repeated qubit");
    }
  }
}

}  // namespace

const char* gate_label_name(GateLabel label) {
  switch (label) {
    case GateLabel::Prep: return "prep";
    case GateLabel::Rep: return "rep";
    case GateLabel::ControlledBasis: return "controlled-basis";
    case GateLabel::Qft: return "qft";
    case GateLabel::Other: return "other";
  }
  return "other";
}

StateVector StateVector::zero(int num_qubits) {
  if (num_qubits < 0 || num_qubits > 30) {
    throw_error(ErrorCode::ValueOutOfRange, "qubit count out of range");
  }
  StateVector s;
  s.num_qubits = num_qubits;
  s.amplitudes = ComplexVector::Zero(Eigen::Index{1} << num_qubits);
  s.amplitudes[0] = Complex(1.0, 0.0);
  return s;
}

StateVector StateVector::from_amplitudes(int num_qubits, ComplexVector amps) {
  if (num_qubits < 0 || amps.size() != (Eigen::Index{1} << num_qubits)) {
    throw_error(ErrorCode::DimensionMismatch, "amplitude count must be 2^q");
  }
  if (std::abs(amps.norm() - 1.0) > 1e-10) {
    throw_error(ErrorCode::UnnormalizedTarget, "state vector must have unit norm");
  }
  StateVector s;
  s.num_qubits = num_qubits;
  s.amplitudes = std::move(amps);
  return s;
}

Gate make_gate(ComplexMatrix matrix, std::vector<int> targets,
               std::vector<std::pair<int, int>> controls, GateLabel label, std::string name) {
  check_unitary(matrix, "make_gate");
  if (matrix.rows() != (Eigen::Index{1} << targets.size())) {
    throw_error(ErrorCode::DimensionMismatch, "make_gate: matrix size vs target count");
  }
  std::set<int> seen;
  for (int t : targets) {
    if (t < 0) throw_error(ErrorCode::IndexOutOfRange, "make_gate: negative target");
    if (!seen.insert(t).second) {
      throw_error(ErrorCode::IndexOutOfRange, "make_gate: repeated target");
    }
  }
  for (auto [q, b] : controls) {
    if (q < 0) throw_error(ErrorCode::IndexOutOfRange, "make_gate: negative control");
    if (b != 0 && b != 1) throw_error(ErrorCode::ValueOutOfRange, "make_gate: control bit");
    if (seen.count(q)) throw_error(ErrorCode::IndexOutOfRange, "make_gate: control hits target");
  }
  return Gate{std::move(matrix), std::move(targets), std::move(controls), label, std::move(name)};
}

StateVector apply(const StateVector& state, const Gate& gate, KernelMode mode) {
  check_unitary(gate.matrix, "apply");
  StateVector out = state;
  detail::apply_inplace(gate, out.amplitudes.data(), out.num_qubits, mode);
  return out;
}

StateVector run(const StateVector& state, const Circuit& circuit, KernelMode mode) {
  if (circuit.num_qubits != state.num_qubits) {
    throw_error(ErrorCode::DimensionMismatch, "run: circuit and state disagree on qubit count");
  }
  StateVector out = state;
  for (const Gate& g : circuit.gates) {
    check_unitary(g.matrix, "run");
    detail::apply_inplace(g, out.amplitudes.data(), out.num_qubits, mode);
  }
  return out;
}

Circuit qft_circuit(int num_qubits, const std::vector<int>& reg) {
  if (reg.empty()) throw_error(ErrorCode::ValueOutOfRange, "qft_circuit: empty register");
  check_register(num_qubits, reg, "qft_circuit");
  const int n = static_cast<int>(reg.size());

  ComplexMatrix h(2, 2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  h << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;

  Circuit c;
  c.num_qubits = num_qubits;
  for (int j = 0; j < n; ++j) {
    c.gates.push_back(make_gate(h, {reg[static_cast<std::size_t>(j)]}, {}, GateLabel::Qft, "H"));
    for (int m = j + 1; m < n; ++m) {
      const double angle = kTwoPi / static_cast<double>(std::uint64_t{1} << (m - j + 1));
      ComplexMatrix phase(2, 2);
      phase << Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0), std::polar(1.0, angle);
      c.gates.push_back(make_gate(phase, {reg[static_cast<std::size_t>(j)]},
                                  {{reg[static_cast<std::size_t>(m)], 1}}, GateLabel::Qft, "CP"));
    }
  }
  ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = Complex(1.0, 0.0);
  for (int j = 0; j < n / 2; ++j) {
    c.gates.push_back(make_gate(swap,
                                {reg[static_cast<std::size_t>(j)],
                                 reg[static_cast<std::size_t>(n - 1 - j)]},
                                {}, GateLabel::Qft, "SWAP"));
  }
  return c;
}

Gate controlled_on_value(const std::vector<int>& control_register, std::uint64_t value,
                         const ComplexMatrix& u, const std::vector<int>& target_register,
                         GateLabel label, std::string name) {
  if (!control_register.empty() && value >= (std::uint64_t{1} << control_register.size())) {
    throw_error(ErrorCode::ValueOutOfRange, "controlled_on_value: value exceeds register range");
  }
  if (control_register.empty() && value != 0) {
    throw_error(ErrorCode::ValueOutOfRange, "controlled_on_value: empty register encodes only 0");
  }
  std::vector<std::pair<int, int>> controls;
  const std::size_t width = control_register.size();
  controls.reserve(width);
  for (std::size_t j = 0; j < width; ++j) {
    const int bit = static_cast<int>((value >> (width - 1 - j)) & 1ULL);
    controls.emplace_back(control_register[j], bit);
  }
  return make_gate(u, target_register, std::move(controls), label, std::move(name));
}

ComplexMatrix state_prep_unitary(const ComplexVector& target) {
  const Eigen::Index dim = target.size();
  if (!is_power_of_two(dim)) {
    throw_error(ErrorCode::NotPowerOfTwoDim, "state_prep_unitary: dimension must be 2^k");
  }
  if (std::abs(target.norm() - 1.0) > kStateFileNormTol) {
    throw_error(ErrorCode::UnnormalizedTarget, "state_prep_unitary: target must have unit norm");
  }
  ComplexVector v = target / target.norm();

  if ((v - ComplexVector::Unit(dim, 0)).norm() < 1e-14) {
    return ComplexMatrix::Identity(dim, dim);
  }

  // Rephase so the leading component is non-negative real, reflect e0 onto
  // -u through w = u + e0 (always well separated), undo both signs.
  const Complex lead = v[0];
  const Complex phase = (std::abs(lead) > 0.0) ? lead / std::abs(lead) : Complex(1.0, 0.0);
  ComplexVector u = v * std::conj(phase);
  ComplexVector w = u;
  w[0] += 1.0;
  const double wsq = w.squaredNorm();
  ComplexMatrix reflect =
      ComplexMatrix::Identity(dim, dim) - (2.0 / wsq) * (w * w.adjoint());
  return (-phase) * reflect;
}

PostSelectionResult postselect(const StateVector& state, const std::vector<int>& reg,
                               std::uint64_t value) {
  check_register(state.num_qubits, reg, "postselect");
  if (!reg.empty() && value >= (std::uint64_t{1} << reg.size())) {
    throw_error(ErrorCode::ValueOutOfRange, "postselect: value exceeds register range");
  }
  if (reg.empty() && value != 0) {
    throw_error(ErrorCode::ValueOutOfRange, "postselect: empty register encodes only 0");
  }

  std::uint64_t mask = 0;
  std::uint64_t want = 0;
  const std::size_t width = reg.size();
  for (std::size_t j = 0; j < width; ++j) {
    const std::uint64_t bit = register_bit(state, reg[j]);
    mask |= bit;
    if ((value >> (width - 1 - j)) & 1ULL) want |= bit;
  }

  const int kept_qubits = state.num_qubits - static_cast<int>(width);
  std::vector<std::uint64_t> kept_bits;  // original-order positions, MSB first
  kept_bits.reserve(static_cast<std::size_t>(kept_qubits));
  for (int q = 0; q < state.num_qubits; ++q) {
    const std::uint64_t bit = register_bit(state, q);
    if (!(mask & bit)) kept_bits.push_back(bit);
  }

  ComplexVector projected = ComplexVector::Zero(Eigen::Index{1} << kept_qubits);
  double probability = 0.0;
  const Eigen::Index total = state.amplitudes.size();
  for (Eigen::Index i = 0; i < total; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    if ((idx & mask) != want) continue;
    probability += std::norm(state.amplitudes[i]);
    std::uint64_t out = 0;
    for (std::size_t b = 0; b < kept_bits.size(); ++b) {
      if (idx & kept_bits[b]) out |= std::uint64_t{1} << (kept_bits.size() - 1 - b);
    }
    projected[static_cast<Eigen::Index>(out)] = state.amplitudes[i];
  }

  if (probability < kZeroProbabilityTol) {
    throw_error(ErrorCode::ZeroProbabilityBranch,
                "postselect: branch probability " + std::to_string(probability));
  }
  PostSelectionResult result;
  result.probability = probability;
  result.state.num_qubits = kept_qubits;
  result.state.amplitudes = projected / std::sqrt(probability);
  return result;
}

GateCensus gate_census(const Circuit& circuit) {
  GateCensus census;
  for (const Gate& g : circuit.gates) {
    const long long unit = 1 + static_cast<long long>(g.controls.size());
    switch (g.label) {
      case GateLabel::Prep:
        ++census.prep;
        ++census.oracle_units;
        break;
      case GateLabel::Rep:
        ++census.rep;
        census.elementary_estimate += 1;
        break;
      case GateLabel::ControlledBasis:
        ++census.controlled_basis;
        census.elementary_estimate += unit;
        break;
      case GateLabel::Qft:
        ++census.qft;
        if (g.name == "SWAP") ++census.qft_swaps;
        census.elementary_estimate += 1;
        break;
      case GateLabel::Other:
        ++census.other;
        census.elementary_estimate += unit;
        break;
    }
  }
  return census;
}

}  // namespace biodilate::qsim
