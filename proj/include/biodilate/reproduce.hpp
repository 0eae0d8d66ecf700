#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "biodilate/io.hpp"
#include "biodilate/types.hpp"

namespace biodilate::reproduce {

/// In-memory versions of the canned verification reports. All content is a
/// deterministic function of (seed, tolerances).
io::Json success_probability_regression(std::uint64_t seed, int rows, const Tolerances& tol = {});
io::Json tau_sweep(const Tolerances& tol = {});
io::Json lcu_vs_biortho(const Tolerances& tol = {});
io::Json scaling_table(std::uint64_t seed, const Tolerances& tol = {});

/// Writes the four report files into `out_dir` and returns their paths.
std::vector<std::filesystem::path> write_all(const std::filesystem::path& out_dir,
                                             std::uint64_t seed, const Tolerances& tol = {});

}  // namespace biodilate::reproduce
