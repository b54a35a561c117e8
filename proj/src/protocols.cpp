#include "catcert/protocols.hpp"

#include <cmath>
#include <stdexcept>

namespace catcert {

TransitionCertificate fig2_example() {
  TransitionCertificate cert;
  cert.mode = CertMode::ClassicalConjecture;
  cert.input_c = prob_vector({Rational(0), Rational(1, 2), Rational(1, 2)});
  cert.target_c = prob_vector({Rational(1, 6), Rational(1, 6), Rational(2, 3)});
  cert.catalyst_c = as_joint(prob_vector({Rational(2, 3), Rational(1, 3)}));
  // Swaps (A0,B0) <-> (A1,B1) and (A1,B0) <-> (A2,B1) on the 3x2 table.
  cert.dynamics_perm = Permutation({3, 1, 5, 0, 4, 2});
  cert.epsilon = 0;
  return cert;
}

SearchBudget cooling_budget() {
  SearchBudget budget;
  budget.max_catalyst_dim = 24;
  budget.max_denominator = 12;
  budget.seconds = 120.0;
  return budget;
}

namespace {

double binary_entropy_bits(double delta) {
  double s = 0.0;
  if (delta > 0) s -= delta * std::log2(delta);
  if (delta < 1) s -= (1.0 - delta) * std::log2(1.0 - delta);
  return s;
}

// delta in (0, 1/2] with h2(delta) = eps, by bisection to 1e-9.
double solve_cold_delta(double eps_bits) {
  double lo = 0.0, hi = 0.5;
  for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (binary_entropy_bits(mid) < eps_bits)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Pinches the listed subsystems in the computational basis.
CMatrix pinch_subsystems(const CMatrix& m, const std::vector<Eigen::Index>& shape,
                         const std::set<Eigen::Index>& which) {
  std::vector<Eigen::Index> strides(shape.size());
  Eigen::Index acc = 1;
  for (std::size_t s = shape.size(); s-- > 0;) {
    strides[s] = acc;
    acc *= shape[s];
  }
  Eigen::Index total = m.rows();
  std::vector<Eigen::Index> key(static_cast<std::size_t>(total));
  for (Eigen::Index flat = 0; flat < total; ++flat) {
    Eigen::Index rem = flat, k = 0;
    for (std::size_t s = 0; s < shape.size(); ++s) {
      Eigen::Index digit = rem / strides[s];
      rem %= strides[s];
      if (which.count(static_cast<Eigen::Index>(s))) k = k * shape[s] + digit;
    }
    key[static_cast<std::size_t>(flat)] = k;
  }
  CMatrix out = m;
  for (Eigen::Index c = 0; c < total; ++c)
    for (Eigen::Index r = 0; r < total; ++r)
      if (key[static_cast<std::size_t>(r)] != key[static_cast<std::size_t>(c)]) out(r, c) = 0;
  return out;
}

std::set<Eigen::Index> upto(Eigen::Index k) {
  std::set<Eigen::Index> s;
  for (Eigen::Index i = 0; i < k; ++i) s.insert(i);
  return s;
}

}  // namespace

CoolingReport cooling_run(const DensityMatrix& qubit, double eps_bits, Eigen::Index n_qubits,
                          const SearchBudget& budget) {
  if (qubit.dim() != 2) throw std::invalid_argument("cooling_run: input must be a qubit");
  double s_in = vn_entropy(qubit, Units::Bits);
  if (s_in >= 0.5) throw std::invalid_argument("cooling_run: S(state) must be < 1/2 bit");
  if (eps_bits <= 0) throw std::invalid_argument("cooling_run: eps must be positive");
  if (n_qubits < 2 || n_qubits % 2 != 0) throw std::invalid_argument("cooling_run: n must be even and >= 2");
  if (n_qubits > 6) throw std::invalid_argument("cooling_run: n exceeds the desk-scale cap of 6");

  // Cold target (1 - delta, delta), delta rationalized so the classical
  // machinery stays exact. Full rank is required, hence the floor.
  double delta = solve_cold_delta(eps_bits);
  Rational delta_rat = rational_approx(delta, BigInt(10'000));
  if (delta_rat <= 0) delta_rat = Rational(1, 10'000);
  if (delta_rat >= 1) delta_rat = Rational(1, 2);
  double achieved = binary_entropy_bits(to_double(delta_rat));
  if (achieved > std::max(eps_bits * 1.5, eps_bits + 1e-3))
    throw std::runtime_error("cooling_run: denominator cap cannot reach eps; achievable eps = " +
                             std::to_string(achieved));

  RealVector cold(2);
  cold(0) = 1.0 - to_double(delta_rat);
  cold(1) = to_double(delta_rat);
  DensityMatrix rho_cold = diagonal_state(cold);

  DensityMatrix rho_pair = tensor_q(qubit, qubit);
  DensityMatrix target_pair = tensor_q(rho_cold, maximally_mixed(2));

  TransitionCertificate cert = build_theorem1_certificate(rho_pair, target_pair, budget);
  const DensityMatrix& sigma = *cert.catalyst_q;
  Eigen::Index cat_m = sigma.shape[0];

  CoolingReport report;
  report.pairs = n_qubits / 2;
  report.n_qubits = n_qubits;
  report.catalyst_dim = cat_m;
  report.target_eps_bits = eps_bits;
  report.achieved_eps_bits = achieved;
  report.cold_spectrum = cold;
  report.cold_purity_distance = to_double(delta_rat);

  // Joint state on [Q_1 .. Q_k, B, R]; every block uses the certificate's
  // rationalized input so the per-step identities are exact.
  Eigen::Index k = report.pairs;
  std::vector<Eigen::Index> shape(static_cast<std::size_t>(k), 4);
  shape.push_back(sigma.shape[0]);
  shape.push_back(sigma.shape[1]);

  CMatrix gamma = CMatrix::Identity(1, 1);
  for (Eigen::Index i = 0; i < k; ++i) gamma = kron(gamma, cert.input_q->mat);
  gamma = kron(gamma, sigma.mat);

  CMatrix target_block = cert.target_q->mat;
  double lambda_cold_block = min_eigenvalue(target_block);

  RealVector initial_spectrum;
  {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(gamma, Eigen::EigenvaluesOnly);
    initial_spectrum = es.eigenvalues();
  }

  for (Eigen::Index i = 0; i < k; ++i) {
    CMatrix u = embed(*cert.dynamics_u, shape, {i, k, k + 1});
    gamma = u * gamma * u.adjoint();
    gamma = pinch_subsystems(gamma, shape, {k, k + 1});

    CMatrix cat_marg = partial_trace(gamma, shape, {k, k + 1});
    report.catalyst_residuals.push_back(trace_distance(cat_marg, sigma.mat));

    // Eq. (B1)-(B4) ingredients after each block.
    CMatrix processed = partial_trace(gamma, shape, upto(i + 1));
    double lam_gamma = min_eigenvalue(processed);
    double lam_tilde = std::pow(lambda_cold_block, static_cast<double>(i + 1));
    report.ratio_sequence.push_back(lam_tilde / lam_gamma);
  }

  for (Eigen::Index i = 0; i < k; ++i) {
    CMatrix block = partial_trace(gamma, shape, {i});
    report.per_copy_residuals.push_back(trace_distance(block, target_block));
  }

  report.mutual_information_bits = Eigen::MatrixXd::Zero(k, k);
  DensityMatrix gamma_state{gamma, shape};
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i + 1; j < k; ++j) {
      double mi = mutual_information(gamma_state, {i}, {j}) / std::log(2.0);
      report.mutual_information_bits(i, j) = mi;
      report.mutual_information_bits(j, i) = mi;
    }

  report.lambda_min_joint = min_eigenvalue(gamma);
  {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(gamma, Eigen::EigenvaluesOnly);
    report.majorization_ok = majorizes(initial_spectrum, es.eigenvalues(), 1e-9);
  }
  return report;
}

RateTable rate_table(const DensityMatrix& qubit, double eps_bits, Eigen::Index n_qubits) {
  if (qubit.dim() != 2) throw std::invalid_argument("rate_table: input must be a qubit");
  double s_in = vn_entropy(qubit, Units::Bits);
  if (s_in >= 0.5) throw std::invalid_argument("rate_table: S(state) must be < 1/2 bit");
  if (eps_bits <= 0) throw std::invalid_argument("rate_table: eps must be positive");
  if (n_qubits < 2 || n_qubits % 2 != 0)
    throw std::invalid_argument("rate_table: n must be even and >= 2");

  RateTable table;
  table.s_input_bits = s_in;
  table.eps_bits = eps_bits;
  for (Eigen::Index n = 2; n <= n_qubits; n += 2)
    table.rows.push_back({n, static_cast<double>(n) / 2.0,
                          static_cast<double>(n) * (1.0 - s_in)});
  return table;
}

}  // namespace catcert
