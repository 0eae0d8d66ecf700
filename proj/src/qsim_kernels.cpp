#include "biodilate/qsim_kernels.hpp"

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace biodilate::qsim::detail {

namespace {

inline std::uint64_t bit_of(int qubit, int num_qubits) {
  return std::uint64_t{1} << (num_qubits - 1 - qubit);
}

// Spreads the free-index bits of `m` into the non-target positions.
inline std::uint64_t scatter_free_bits(std::uint64_t m,
                                       const std::vector<std::uint64_t>& positions) {
  std::uint64_t base = 0;
  for (std::size_t b = 0; b < positions.size(); ++b) {
    base |= ((m >> b) & 1ULL) << positions[b];
  }
  return base;
}

template <bool Parallel>
void apply_compiled_impl(const CompiledGate& g, Complex* amps, int num_qubits) {
  const int k = g.num_targets;
  const std::int64_t free_count = std::int64_t{1} << (num_qubits - k);
  const std::size_t sub = std::size_t{1} << k;

  if (k == 1) {
    // Two-amplitude update, unrolled.
    const Complex m00 = g.matrix(0, 0), m01 = g.matrix(0, 1);
    const Complex m10 = g.matrix(1, 0), m11 = g.matrix(1, 1);
    const std::uint64_t tbit = g.subspace_offsets[1];
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (Parallel)
#endif
    for (std::int64_t m = 0; m < free_count; ++m) {
      const std::uint64_t base = scatter_free_bits(static_cast<std::uint64_t>(m),
                                                   g.free_bit_positions);
      if ((base & g.control_mask) != g.control_value) continue;
      const std::uint64_t i0 = base;
      const std::uint64_t i1 = base | tbit;
      const Complex a0 = amps[i0];
      const Complex a1 = amps[i1];
      amps[i0] = m00 * a0 + m01 * a1;
      amps[i1] = m10 * a0 + m11 * a1;
    }
    return;
  }

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (Parallel)
#endif
  for (std::int64_t m = 0; m < free_count; ++m) {
    const std::uint64_t base = scatter_free_bits(static_cast<std::uint64_t>(m),
                                                 g.free_bit_positions);
    if ((base & g.control_mask) != g.control_value) continue;
    Complex gathered[256];
    for (std::size_t j = 0; j < sub; ++j) gathered[j] = amps[base | g.subspace_offsets[j]];
    for (std::size_t r = 0; r < sub; ++r) {
      Complex acc(0.0, 0.0);
      for (std::size_t c = 0; c < sub; ++c) {
        acc += g.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * gathered[c];
      }
      amps[base | g.subspace_offsets[r]] = acc;
    }
  }
}

}  // namespace

CompiledGate compile_gate(const Gate& gate, int num_qubits) {
  CompiledGate cg;
  cg.matrix = gate.matrix;
  cg.num_targets = static_cast<int>(gate.targets.size());
  const int k = cg.num_targets;
  if (k > 8) {
    throw_error(ErrorCode::ValueOutOfRange, "gates act on at most 8 target qubits");
  }

  for (int t : gate.targets) {
    if (t < 0 || t >= num_qubits) {
      throw_error(ErrorCode::IndexOutOfRange, "target qubit " + std::to_string(t));
    }
    cg.target_union |= bit_of(t, num_qubits);
  }
  for (auto [q, b] : gate.controls) {
    if (q < 0 || q >= num_qubits) {
      throw_error(ErrorCode::IndexOutOfRange, "control qubit " + std::to_string(q));
    }
    const std::uint64_t bit = bit_of(q, num_qubits);
    if (cg.target_union & bit) {
      throw_error(ErrorCode::IndexOutOfRange, "control overlaps a target qubit");
    }
    cg.control_mask |= bit;
    if (b) cg.control_value |= bit;
  }

  // Gate-local index j is big-endian over targets: bit (k-1-l) of j belongs
  // to targets[l].
  cg.subspace_offsets.resize(std::size_t{1} << k);
  for (std::size_t j = 0; j < cg.subspace_offsets.size(); ++j) {
    std::uint64_t off = 0;
    for (int l = 0; l < k; ++l) {
      if ((j >> (k - 1 - l)) & 1ULL) off |= bit_of(gate.targets[static_cast<std::size_t>(l)],
                                                   num_qubits);
    }
    cg.subspace_offsets[j] = off;
  }

  cg.free_bit_positions.reserve(static_cast<std::size_t>(num_qubits - k));
  for (int pos = 0; pos < num_qubits; ++pos) {
    if (!(cg.target_union & (std::uint64_t{1} << pos))) {
      cg.free_bit_positions.push_back(static_cast<std::uint64_t>(pos));
    }
  }
  return cg;
}

void apply_compiled_serial(const CompiledGate& gate, Complex* amps, int num_qubits) {
  apply_compiled_impl<false>(gate, amps, num_qubits);
}

void apply_compiled_parallel(const CompiledGate& gate, Complex* amps, int num_qubits) {
  apply_compiled_impl<true>(gate, amps, num_qubits);
}

void apply_inplace(const Gate& gate, Complex* amps, int num_qubits, KernelMode mode) {
  const CompiledGate cg = compile_gate(gate, num_qubits);
  bool parallel = false;
  switch (mode) {
    case KernelMode::Serial:
      parallel = false;
      break;
    case KernelMode::Parallel:
      parallel = true;
      break;
    case KernelMode::Auto:
      parallel = (std::uint64_t{1} << num_qubits) >= kParallelThreshold;
      break;
  }
#ifndef _OPENMP
  parallel = false;
#endif
  if (parallel) {
    apply_compiled_parallel(cg, amps, num_qubits);
  } else {
    apply_compiled_serial(cg, amps, num_qubits);
  }
}

}  // namespace biodilate::qsim::detail
