#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "biodilate/dilate.hpp"
#include "biodilate/qsim.hpp"
#include "biodilate/types.hpp"

namespace biodilate::io {

using Json = nlohmann::ordered_json;

// Matrix files: {"schema", "kind": "matrix", "dim", "entries": [[re, im], ...]}
// row-major, dim^2 entries. State files: {"schema", "kind": "state",
// "amplitudes": [[re, im], ...]} with a power-of-two length.

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json state_to_json(const ComplexVector& v);
/// `renormalize` accepts any nonzero vector and rescales; otherwise the
/// norm must be within 1e-8 of one.
ComplexVector state_from_json(const Json& j, bool renormalize = false);

Json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const Json& j);

Json circuit_to_json(const qsim::Circuit& c);
qsim::Circuit circuit_from_json(const Json& j);

/// Full dilation circuit export: circuit + post-selection spec + scale.
Json plan_circuit_to_json(const dilate::DilationPlan& plan);

Json census_to_json(const qsim::GateCensus& census);
Json outcome_to_json(const dilate::DilationOutcome& outcome);
Json comparison_to_json(const dilate::ComparisonReport& report);

ComplexMatrix load_matrix(const std::filesystem::path& path);
ComplexVector load_state(const std::filesystem::path& path, bool renormalize = false);
Json load_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);

/// FNV-1a 64-bit digest of a file's raw bytes, as fixed-width hex.
std::string file_digest(const std::filesystem::path& path);
std::string bytes_digest(const std::string& bytes);

}  // namespace biodilate::io
