#include "biodilate/reproduce.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "biodilate/biortho.hpp"
#include "biodilate/dilate.hpp"
#include "biodilate/numkernel.hpp"
#include "biodilate/randgen.hpp"
#include "biodilate/version.hpp"

namespace biodilate::reproduce {

namespace {

using io::Json;

// Worked single-qubit example: V = [[1, -2], [0, -1]] with the biorthogonal
// basis u0 = |0>, zeta0 = |0> - |1>, u1 = (|0> + |1>)/sqrt(2), zeta1 =
// sqrt(2)|1>, whose representation is diag(1, -1).
ComplexMatrix worked_example_matrix() {
  ComplexMatrix v(2, 2);
  v << 1, -2, 0, -1;
  return v;
}

biortho::BiorthogonalOperator worked_example_operator(const Tolerances& tol) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<ComplexVector> u(2, ComplexVector(2));
  std::vector<ComplexVector> zeta(2, ComplexVector(2));
  u[0] << 1, 0;
  zeta[0] << 1, -1;
  u[1] << inv_sqrt2, inv_sqrt2;
  zeta[1] << 0, std::sqrt(2.0);
  biortho::BiorthogonalSystem sys = biortho::from_explicit(u, zeta, tol);
  ComplexMatrix rep(2, 2);
  rep << 1, 0, 0, -1;
  return biortho::BiorthogonalOperator{std::move(sys), std::move(rep)};
}

ComplexMatrix shear_family_matrix(double tau) {
  ComplexMatrix v(2, 2);
  v << tau, -(tau + 1.0), 0, -1;
  return v;
}

double analytic_success_probability(Complex a0, Complex a1) {
  const double num = std::norm(a0 - 2.0 * a1) + std::norm(a1);
  const double den = 2.0 * (std::norm(a0 - a1) + 2.0 * std::norm(a1));
  return num / den;
}

Json header(const char* report, std::uint64_t seed, const Tolerances& tol) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "report";
  j["report"] = report;
  j["version"] = kVersion;
  j["seed"] = seed;
  j["tolerances"] = {{"scalar_abs", tol.scalar_abs}, {"matrix_rel", tol.matrix_rel}};
  return j;
}

}  // namespace

Json success_probability_regression(std::uint64_t seed, int rows, const Tolerances& tol) {
  Json j = header("success-probability-regression", seed, tol);

  const biortho::BiorthogonalOperator op = worked_example_operator(tol);
  const dilate::DilationPlan plan = dilate::biortho_plan(op, tol);

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<ComplexVector> states;
  ComplexVector fixed(2);
  fixed << 1, 0;
  states.push_back(fixed);
  fixed << 0, 1;
  states.push_back(fixed);
  fixed << inv_sqrt2, inv_sqrt2;
  states.push_back(fixed);
  for (int r = static_cast<int>(states.size()); r < rows; ++r) {
    randgen::Rng rng = randgen::substream(seed, static_cast<std::uint64_t>(r));
    states.push_back(randgen::random_state(rng, 2));
  }

  Json table = Json::array();
  double max_dp = 0.0;
  double min_fidelity = 1.0;
  for (const ComplexVector& psi : states) {
    const dilate::DilationOutcome outcome = dilate::biortho_run(plan, psi,
                                                                qsim::KernelMode::Auto, tol);
    const double analytic = analytic_success_probability(psi[0], psi[1]);
    ComplexVector expected(2);
    expected << psi[0] - 2.0 * psi[1], -psi[1];
    const double fid = numkernel::fidelity(outcome.output_state, expected);
    max_dp = std::max(max_dp, std::abs(outcome.simulated_probability - analytic));
    min_fidelity = std::min(min_fidelity, fid);
    Json row;
    row["a0"] = Json::array({psi[0].real(), psi[0].imag()});
    row["a1"] = Json::array({psi[1].real(), psi[1].imag()});
    row["analytic_p"] = analytic;
    row["simulated_p"] = outcome.simulated_probability;
    row["abs_dp"] = std::abs(outcome.simulated_probability - analytic);
    row["fidelity"] = fid;
    table.push_back(std::move(row));
  }
  j["rows"] = std::move(table);
  j["summary"] = {{"rows", rows}, {"max_abs_dp", max_dp}, {"min_fidelity", min_fidelity}};
  return j;
}

Json tau_sweep(const Tolerances& tol) {
  Json j = header("tau-sweep", 0, tol);

  ComplexVector psi(2);
  psi << 0, 1;
  j["input_state"] = io::vector_to_json(psi);

  Json rows = Json::array();
  for (double tau : {0.5, 1.0, 2.0}) {
    const ComplexMatrix v = shear_family_matrix(tau);
    Json row;
    row["tau"] = tau;

    const numkernel::EigenSystem es = numkernel::eig(v);
    Json evs = Json::array();
    for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i) {
      evs.push_back(Json::array({es.eigenvalues[i].real(), es.eigenvalues[i].imag()}));
    }
    row["eigenvalues"] = std::move(evs);
    row["sigma_max"] = numkernel::singular_values(v).front();

    const biortho::BiorthogonalOperator op =
        biortho::from_eigen(v, biortho::KappaPolicy::ModulusOfEigenvalue, {}, tol).second;
    row["kappa"] = std::vector<double>(op.system.kappa().data(),
                                       op.system.kappa().data() + op.system.kappa().size());
    row["bi_unitary_representation"] = biortho::is_bi_unitary(op, tol);

    row["comparison"] = io::comparison_to_json(dilate::compare(v, psi,
                                                               biortho::KappaPolicy::ModulusOfEigenvalue,
                                                               tol));
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

Json lcu_vs_biortho(const Tolerances& tol) {
  Json j = header("lcu-vs-biortho", 0, tol);

  const ComplexMatrix v = worked_example_matrix();
  const std::vector<dilate::UnitarySummand> summands = dilate::pauli_decompose(v);
  const dilate::DilationPlan lcu = dilate::lcu_plan(summands, tol);
  const dilate::DilationPlan bio = dilate::biortho_plan(worked_example_operator(tol), tol);

  j["operator"] = io::matrix_to_json(v);
  Json terms = Json::array();
  for (const auto& s : summands) {
    terms.push_back({{"weight", s.weight}, {"unitary", io::matrix_to_json(s.unitary)}});
  }
  j["summands"] = std::move(terms);
  j["weight_sum"] = lcu.scale;
  j["ancillas"] = {{"lcu", lcu.ancilla_qubits}, {"biortho", bio.ancilla_qubits}};
  j["gate_census"] = {{"lcu", io::census_to_json(qsim::gate_census(lcu.circuit))},
                      {"biortho", io::census_to_json(qsim::gate_census(bio.circuit))}};

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<ComplexVector> states;
  ComplexVector s(2);
  s << 1, 0;
  states.push_back(s);
  s << 0, 1;
  states.push_back(s);
  s << inv_sqrt2, inv_sqrt2;
  states.push_back(s);

  Json rows = Json::array();
  for (const ComplexVector& psi : states) {
    const dilate::DilationOutcome lout = dilate::lcu_run(lcu, psi, qsim::KernelMode::Auto, tol);
    const dilate::DilationOutcome bout = dilate::biortho_run(bio, psi, qsim::KernelMode::Auto,
                                                             tol);
    const double norm_sq = (v * psi).squaredNorm();
    Json row;
    row["state"] = io::vector_to_json(psi);
    row["lcu_simulated_p"] = lout.simulated_probability;
    row["lcu_p_weight_sum_sq"] = norm_sq / (lcu.scale * lcu.scale);
    row["lcu_p_weight_sum"] = norm_sq / lcu.scale;
    row["lcu_deviation_factor"] = (norm_sq / lcu.scale) / lout.simulated_probability;
    row["biortho_simulated_p"] = bout.simulated_probability;
    row["biortho_analytic_p"] = analytic_success_probability(psi[0], psi[1]);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["note"] =
      "simulated LCU success probability follows |V psi|^2 / s^2 with s the summand weight "
      "sum; a 1/s normalization overestimates it by the factor s (here 3)";
  return j;
}

Json scaling_table(std::uint64_t seed, const Tolerances& tol) {
  Json j = header("ancilla-scaling", seed, tol);

  Json rows = Json::array();
  for (int n = 1; n <= 4; ++n) {
    randgen::Rng rng = randgen::substream(seed, 0xA000ULL + static_cast<std::uint64_t>(n));
    const Eigen::Index dim = Eigen::Index{1} << n;
    const ComplexMatrix v = randgen::random_diagonalizable(rng, dim);
    const biortho::BiorthogonalOperator op =
        biortho::from_eigen(v, biortho::KappaPolicy::ModulusOfEigenvalue, {}, tol).second;
    const dilate::DilationPlan plan = dilate::biortho_plan(op, tol);
    const qsim::GateCensus census = qsim::gate_census(plan.circuit);

    const long long bound = 3LL * n * n * (1LL << n);
    Json row;
    row["register_qubits"] = n;
    row["dim"] = dim;
    row["ancillas"] = plan.ancilla_qubits;
    row["controlled_basis_gates"] = census.controlled_basis;
    row["qft_gates"] = census.qft;
    row["qft_swaps"] = census.qft_swaps;
    row["elementary_estimate"] = census.elementary_estimate;
    row["bound_3_n2_2n"] = bound;
    row["within_bound"] = census.elementary_estimate <= bound;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

std::vector<std::filesystem::path> write_all(const std::filesystem::path& out_dir,
                                             std::uint64_t seed, const Tolerances& tol) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;

  const auto emit = [&](const char* name, const Json& j) {
    const std::filesystem::path path = out_dir / name;
    io::write_json(path, j);
    written.push_back(path);
  };

  emit("success_probability_regression.json", success_probability_regression(seed, 200, tol));
  emit("tau_sweep.json", tau_sweep(tol));
  emit("lcu_vs_biortho.json", lcu_vs_biortho(tol));
  emit("ancilla_scaling.json", scaling_table(seed, tol));
  return written;
}

}  // namespace biodilate::reproduce
