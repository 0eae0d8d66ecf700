#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "biodilate/errors.hpp"
#include "biodilate/types.hpp"

namespace biodilate::qsim {

/// Dense amplitude vector over `num_qubits` qubits. Qubit 0 is the most
/// significant bit of the amplitude index; registers are listed big-endian.
struct StateVector {
  int num_qubits = 0;
  ComplexVector amplitudes;

  static StateVector zero(int num_qubits);
  /// Validates dimension and unit norm (1e-10).
  static StateVector from_amplitudes(int num_qubits, ComplexVector amps);
};

enum class GateLabel { Prep, Rep, ControlledBasis, Qft, Other };

const char* gate_label_name(GateLabel label);

struct Gate {
  ComplexMatrix matrix;                        // 2^k x 2^k unitary
  std::vector<int> targets;                    // k distinct qubits, big-endian
  std::vector<std::pair<int, int>> controls;   // (qubit, required bit)
  GateLabel label = GateLabel::Other;
  std::string name;
};

/// Validates unitarity (1e-10), dimensions and index disjointness.
Gate make_gate(ComplexMatrix matrix, std::vector<int> targets,
               std::vector<std::pair<int, int>> controls = {},
               GateLabel label = GateLabel::Other, std::string name = {});

struct Circuit {
  int num_qubits = 0;
  std::vector<Gate> gates;
};

struct PostSelectionResult {
  StateVector state;   // renormalized post-measurement state
  double probability;  // squared norm of the projected component
};

enum class KernelMode { Auto, Serial, Parallel };

StateVector apply(const StateVector& state, const Gate& gate, KernelMode mode = KernelMode::Auto);
StateVector run(const StateVector& state, const Circuit& circuit,
                KernelMode mode = KernelMode::Auto);

/// |n> -> 2^{-N/2} sum_k exp(2*pi*i*n*k/2^N) |k> on the register (first
/// listed qubit most significant), terminal reversal swaps included.
Circuit qft_circuit(int num_qubits, const std::vector<int>& reg);

/// Applies `u` on `targets` iff `controls` encodes `value` (big-endian).
Gate controlled_on_value(const std::vector<int>& control_register, std::uint64_t value,
                         const ComplexMatrix& u, const std::vector<int>& target_register,
                         GateLabel label = GateLabel::Other, std::string name = {});

/// A unitary whose first column is `target` (Householder completion),
/// so it maps |0...0> to the target state.
ComplexMatrix state_prep_unitary(const ComplexVector& target);

/// Projects onto `register == value`, renormalizes, and drops the measured
/// qubits (remaining qubits keep their relative order).
PostSelectionResult postselect(const StateVector& state, const std::vector<int>& reg,
                               std::uint64_t value);

struct GateCensus {
  int prep = 0;
  int rep = 0;
  int controlled_basis = 0;
  int qft = 0;
  int qft_swaps = 0;  // subset of qft
  int other = 0;
  // One unit per non-oracle gate plus the control width of each multi-
  // controlled gate; prep gates are oracle invocations counted separately.
  long long elementary_estimate = 0;
  int oracle_units = 0;
};

GateCensus gate_census(const Circuit& circuit);

}  // namespace biodilate::qsim
