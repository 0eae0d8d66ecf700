#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biodilate/biortho.hpp"
#include "biodilate/qsim.hpp"
#include "biodilate/types.hpp"

namespace biodilate::dilate {

enum class Method { Biortho, Lcu, SzNagy };

const char* method_name(Method m);

struct UnitarySummand {
  double weight = 0.0;      // > 0
  ComplexMatrix unitary;
};

/// A dilation circuit plus the bookkeeping needed to run it and to predict
/// its post-selection probability. `scale` is the input-independent part of
/// the factor relating the post-selected unnormalized output to V|Psi>; for
/// the biorthogonal method the input-dependent amplitude norm c joins at run
/// time (DilationOutcome::effective_scale carries the product).
struct DilationPlan {
  Method method = Method::Biortho;
  qsim::Circuit circuit;
  int ancilla_qubits = 0;
  int system_qubits = 0;
  std::vector<int> postselect_register;
  std::uint64_t postselect_value = 0;
  double scale = 1.0;

  ComplexMatrix target;  // the operator being implemented, computational basis
  std::vector<double> kappa;            // biortho
  std::vector<double> weights;          // lcu summand weights
  std::vector<double> defect_spectrum;  // sznagy singular structure
  std::optional<biortho::BiorthogonalOperator> op;  // biortho
  std::ptrdiff_t prep_gate_index = -1;  // biortho placeholder slot
};

struct DilationOutcome {
  ComplexVector output_state;         // renormalized post-selected state
  double simulated_probability = 0.0;
  double predicted_probability = 0.0;
  double fidelity_vs_oracle = 0.0;
  ComplexVector unnormalized_output;  // projected component before renorm
  double effective_scale = 1.0;       // unnormalized_output * effective_scale = V|Psi>
};

/// Requires op.rep unitary. The circuit is: prep placeholder on the first
/// register; rep on the first register; one value-controlled basis-prep gate
/// per index n targeting the second register; QFT on the first register.
/// Post-selection is on the first register reading zero.
DilationPlan biortho_plan(const biortho::BiorthogonalOperator& op, const Tolerances& tol = {});

DilationOutcome biortho_run(const DilationPlan& plan, const ComplexVector& psi,
                            qsim::KernelMode mode = qsim::KernelMode::Auto,
                            const Tolerances& tol = {});

/// Coefficients over the 4^N Pauli strings; negligible ones (<= 1e-12) are
/// dropped and each phase is folded into the unitary so weights stay positive.
std::vector<UnitarySummand> pauli_decompose(const ComplexMatrix& v);

DilationPlan lcu_plan(const std::vector<UnitarySummand>& summands, const Tolerances& tol = {});

DilationOutcome lcu_run(const DilationPlan& plan, const ComplexVector& psi,
                        qsim::KernelMode mode = qsim::KernelMode::Auto,
                        const Tolerances& tol = {});

/// One-ancilla dilation [[V, D_{V+}], [D_V, -V+]]; requires sigma_max(V) <= 1.
DilationPlan sznagy_plan(const ComplexMatrix& v, const Tolerances& tol = {});

DilationOutcome sznagy_run(const DilationPlan& plan, const ComplexVector& psi,
                           qsim::KernelMode mode = qsim::KernelMode::Auto,
                           const Tolerances& tol = {});

struct MethodEntry {
  Method method = Method::Biortho;
  bool applicable = false;
  std::string error;   // error-code name when not applicable
  int ancilla_qubits = 0;
  qsim::GateCensus census;
  double predicted_probability = 0.0;
  double simulated_probability = 0.0;
  double fidelity_vs_oracle = 0.0;
  std::string notes;
};

struct ComparisonReport {
  int dim = 0;
  std::vector<double> eigenvalue_moduli;  // empty when V is defective
  double sigma_max = 0.0;
  bool contraction = false;  // operator-norm notion: sigma_max <= 1
  std::vector<MethodEntry> methods;
};

/// Runs every applicable backend on the same (V, Psi); per-method failures
/// are recorded in the report instead of thrown.
ComparisonReport compare(const ComplexMatrix& v, const ComplexVector& psi,
                         biortho::KappaPolicy policy = biortho::KappaPolicy::ModulusOfEigenvalue,
                         const Tolerances& tol = {});

}  // namespace biodilate::dilate
