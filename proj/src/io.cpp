#include "biodilate/io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "biodilate/version.hpp"

namespace biodilate::io {

namespace {

Json complex_pair(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw_error(ErrorCode::ParseError, "complex entries must be [re, im] pairs");
  }
  const Complex z(j[0].get<double>(), j[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw_error(ErrorCode::ParseError, "non-finite entry");
  }
  return z;
}

void check_schema(const Json& j, const char* kind) {
  if (!j.is_object()) throw_error(ErrorCode::ParseError, "expected a JSON object");
  if (j.value("schema", std::string{}) != kSchema) {
    throw_error(ErrorCode::ParseError, std::string("missing or unsupported schema, expected ") +
                                           kSchema);
  }
  if (j.value("kind", std::string{}) != kind) {
    throw_error(ErrorCode::ParseError, std::string("expected kind \"") + kind + "\"");
  }
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "matrix";
  j["dim"] = m.rows();
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back(complex_pair(m(r, c)));
  }
  j["entries"] = std::move(entries);
  return j;
}

ComplexMatrix matrix_from_json(const Json& j) {
  check_schema(j, "matrix");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) {
    throw_error(ErrorCode::ParseError, "matrix file needs an integer dim");
  }
  const auto dim = j["dim"].get<Eigen::Index>();
  if (dim <= 0) throw_error(ErrorCode::ParseError, "dim must be positive");
  const Json& entries = j.at("entries");
  if (!entries.is_array() || entries.size() != static_cast<std::size_t>(dim * dim)) {
    throw_error(ErrorCode::ParseError, "entries must hold dim^2 pairs, row-major");
  }
  ComplexMatrix m(dim, dim);
  std::size_t idx = 0;
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = complex_from(entries[idx++]);
  }
  return m;
}

Json vector_to_json(const ComplexVector& v) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) entries.push_back(complex_pair(v[i]));
  return entries;
}

ComplexVector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw_error(ErrorCode::ParseError, "expected amplitude array");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_from(j[i]);
  return v;
}

Json state_to_json(const ComplexVector& v) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "state";
  j["amplitudes"] = vector_to_json(v);
  return j;
}

ComplexVector state_from_json(const Json& j, bool renormalize) {
  check_schema(j, "state");
  ComplexVector v = vector_from_json(j.at("amplitudes"));
  if (!is_power_of_two(v.size())) {
    throw_error(ErrorCode::ParseError, "amplitude count must be a power of two");
  }
  const double norm = v.norm();
  if (renormalize) {
    if (norm == 0.0) throw_error(ErrorCode::ZeroVector, "state file holds the zero vector");
    return v / norm;
  }
  if (std::abs(norm - 1.0) > kStateFileNormTol) {
    throw_error(ErrorCode::ParseError,
                "state norm " + std::to_string(norm) + " is not 1 (pass --renormalize)");
  }
  return v;
}

Json circuit_to_json(const qsim::Circuit& c) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "circuit";
  j["num_qubits"] = c.num_qubits;
  Json gates = Json::array();
  for (const qsim::Gate& g : c.gates) {
    Json gate;
    gate["label"] = qsim::gate_label_name(g.label);
    gate["name"] = g.name;
    gate["targets"] = g.targets;
    Json controls = Json::array();
    for (auto [q, b] : g.controls) controls.push_back(Json::array({q, b}));
    gate["controls"] = std::move(controls);
    gate["dim"] = g.matrix.rows();
    Json entries = Json::array();
    for (Eigen::Index r = 0; r < g.matrix.rows(); ++r) {
      for (Eigen::Index col = 0; col < g.matrix.cols(); ++col) {
        entries.push_back(complex_pair(g.matrix(r, col)));
      }
    }
    gate["matrix"] = std::move(entries);
    gates.push_back(std::move(gate));
  }
  j["gates"] = std::move(gates);
  return j;
}

qsim::Circuit circuit_from_json(const Json& j) {
  check_schema(j, "circuit");
  qsim::Circuit c;
  c.num_qubits = j.at("num_qubits").get<int>();
  for (const Json& gate : j.at("gates")) {
    const auto dim = gate.at("dim").get<Eigen::Index>();
    const Json& entries = gate.at("matrix");
    if (!entries.is_array() || entries.size() != static_cast<std::size_t>(dim * dim)) {
      throw_error(ErrorCode::ParseError, "gate matrix entry count mismatch");
    }
    ComplexMatrix m(dim, dim);
    std::size_t idx = 0;
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index col = 0; col < dim; ++col) m(r, col) = complex_from(entries[idx++]);
    }
    std::vector<int> targets = gate.at("targets").get<std::vector<int>>();
    std::vector<std::pair<int, int>> controls;
    for (const Json& ctrl : gate.at("controls")) {
      controls.emplace_back(ctrl.at(0).get<int>(), ctrl.at(1).get<int>());
    }
    qsim::GateLabel label = qsim::GateLabel::Other;
    const std::string label_name = gate.value("label", "other");
    for (qsim::GateLabel l : {qsim::GateLabel::Prep, qsim::GateLabel::Rep,
                              qsim::GateLabel::ControlledBasis, qsim::GateLabel::Qft}) {
      if (label_name == qsim::gate_label_name(l)) label = l;
    }
    c.gates.push_back(qsim::make_gate(std::move(m), std::move(targets), std::move(controls),
                                      label, gate.value("name", std::string{})));
  }
  return c;
}

Json plan_circuit_to_json(const dilate::DilationPlan& plan) {
  Json j = circuit_to_json(plan.circuit);
  j["method"] = dilate::method_name(plan.method);
  j["ancilla_qubits"] = plan.ancilla_qubits;
  j["system_qubits"] = plan.system_qubits;
  j["postselect"] = {{"register", plan.postselect_register}, {"value", plan.postselect_value}};
  j["scale"] = plan.scale;
  return j;
}

Json census_to_json(const qsim::GateCensus& census) {
  Json j;
  j["prep"] = census.prep;
  j["rep"] = census.rep;
  j["controlled_basis"] = census.controlled_basis;
  j["qft"] = census.qft;
  j["qft_swaps"] = census.qft_swaps;
  j["other"] = census.other;
  j["elementary_estimate"] = census.elementary_estimate;
  j["oracle_units"] = census.oracle_units;
  return j;
}

Json outcome_to_json(const dilate::DilationOutcome& outcome) {
  Json j;
  j["simulated_p"] = outcome.simulated_probability;
  j["predicted_p"] = outcome.predicted_probability;
  j["fidelity_vs_oracle"] = outcome.fidelity_vs_oracle;
  j["effective_scale"] = outcome.effective_scale;
  j["output_state"] = vector_to_json(outcome.output_state);
  return j;
}

Json comparison_to_json(const dilate::ComparisonReport& report) {
  Json j;
  j["dim"] = report.dim;
  j["classification"] = {{"eigenvalue_moduli", report.eigenvalue_moduli},
                         {"sigma_max", report.sigma_max},
                         {"contraction", report.contraction}};
  Json methods = Json::object();
  for (const dilate::MethodEntry& entry : report.methods) {
    Json m;
    m["applicable"] = entry.applicable;
    if (!entry.applicable) {
      m["error"] = entry.error;
      m["notes"] = entry.notes;
    } else {
      m["ancillas"] = entry.ancilla_qubits;
      m["gate_census"] = census_to_json(entry.census);
      m["predicted_p"] = entry.predicted_probability;
      m["simulated_p"] = entry.simulated_probability;
      m["fidelity"] = entry.fidelity_vs_oracle;
      if (!entry.notes.empty()) m["notes"] = entry.notes;
    }
    methods[dilate::method_name(entry.method)] = std::move(m);
  }
  j["methods"] = std::move(methods);
  return j;
}

ComplexMatrix load_matrix(const std::filesystem::path& path) {
  return matrix_from_json(load_json(path));
}

ComplexVector load_state(const std::filesystem::path& path, bool renormalize) {
  return state_from_json(load_json(path), renormalize);
}

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw_error(ErrorCode::ParseError, "cannot open " + path.string());
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw_error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
  return j;
}

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw_error(ErrorCode::ParseError, "cannot open " + path.string() + " for writing");
  out << j.dump(2) << "\n";
}

std::string bytes_digest(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex;
  out.width(16);
  out.fill('0');
  out << hash;
  return out.str();
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return bytes_digest(buffer.str());
}

}  // namespace biodilate::io
