#pragma once

#include <cstdint>
#include <vector>

#include "biodilate/qsim.hpp"
#include "biodilate/types.hpp"

namespace biodilate::qsim::detail {

/// Gate with index arithmetic precomputed for the in-place kernels.
struct CompiledGate {
  ComplexMatrix matrix;
  int num_targets = 0;
  std::uint64_t control_mask = 0;
  std::uint64_t control_value = 0;
  std::uint64_t target_union = 0;
  std::vector<std::uint64_t> subspace_offsets;     // 2^k gather offsets
  std::vector<std::uint64_t> free_bit_positions;   // non-target bit positions
};

CompiledGate compile_gate(const Gate& gate, int num_qubits);

void apply_compiled_serial(const CompiledGate& gate, Complex* amps, int num_qubits);
void apply_compiled_parallel(const CompiledGate& gate, Complex* amps, int num_qubits);

/// Amplitude count at which Auto dispatch switches to the parallel kernel.
inline constexpr std::uint64_t kParallelThreshold = std::uint64_t{1} << 12;

void apply_inplace(const Gate& gate, Complex* amps, int num_qubits, KernelMode mode);

}  // namespace biodilate::qsim::detail
