#pragma once

#include "catcert/catalysis.hpp"

namespace catcert {

// The hard-coded dimension-3 counterexample to the trumping constraints:
// rho = diag(0, 1/2, 1/2) -> rho' = diag(1/6, 1/6, 2/3) with catalyst
// (2/3, 1/3) and a single permutation; verifies exactly and strictly
// decreases S_alpha at large alpha.
TransitionCertificate fig2_example();

// Diagnostics of the sequential cooling protocol (all entropic quantities
// in bits).
struct CoolingReport {
  Eigen::Index pairs = 0;         // processed two-qubit blocks
  Eigen::Index n_qubits = 0;      // 2 * pairs
  Eigen::Index catalyst_dim = 0;  // dimension of the tau factor of sigma
  double target_eps_bits = 0.0;
  double achieved_eps_bits = 0.0;          // entropy of the realized cold state
  RealVector cold_spectrum;                // spectrum (1 - delta, delta) of rho'
  double cold_purity_distance = 0.0;       // trace distance of rho' to the nearest pure state
  std::vector<double> per_copy_residuals;  // || tr_{|Q_i} - rho' (x) 1_2 ||_tr per block
  std::vector<double> catalyst_residuals;  // catalyst return after each block
  Eigen::MatrixXd mutual_information_bits; // pairwise MI between cold blocks
  double lambda_min_joint = 0.0;           // lambda_min of the final joint with the catalyst
  std::vector<double> ratio_sequence;      // lambda_min(product target) / lambda_min(joint of
                                           // processed blocks), after each block
  bool majorization_ok = false;            // initial spectrum >= final joint spectrum
};

// Search limits sized for the cooling pipeline (larger catalysts than the
// generic default).
SearchBudget cooling_budget();

// Runs the catalytic cooling protocol on n_qubits copies of the given
// qubit (n even), targeting per-copy entropy eps_bits. Requires
// S(qubit) < 1/2 bit and n_qubits <= 6; errors when the denominator cap
// cannot express a cold enough target, reporting the achievable entropy.
CoolingReport cooling_run(const DensityMatrix& qubit, double eps_bits, Eigen::Index n_qubits,
                          const SearchBudget& budget = cooling_budget());

struct RateRow {
  Eigen::Index qubits;
  double achieved_cold;  // qubits driven to entropy eps: n/2
  double bound_cold;     // algorithmic-cooling bound n (1 - S) in bits
};

struct RateTable {
  double s_input_bits = 0.0;
  double eps_bits = 0.0;
  std::vector<RateRow> rows;
};

RateTable rate_table(const DensityMatrix& qubit, double eps_bits, Eigen::Index n_qubits);

}  // namespace catcert
