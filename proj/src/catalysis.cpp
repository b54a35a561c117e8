#include "catcert/catalysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "catcert/exact_lp.hpp"

namespace catcert {

std::string to_string(CertMode mode) {
  switch (mode) {
    case CertMode::Theorem1: return "theorem1";
    case CertMode::Conjecture: return "conjecture";
    case CertMode::Lemma2: return "lemma2";
    case CertMode::ClassicalLemma3: return "classical_lemma3";
    case CertMode::ClassicalConjecture: return "classical_conjecture";
  }
  throw std::logic_error("unknown mode");
}

CertMode cert_mode_from_string(const std::string& name) {
  if (name == "theorem1") return CertMode::Theorem1;
  if (name == "conjecture") return CertMode::Conjecture;
  if (name == "lemma2") return CertMode::Lemma2;
  if (name == "classical_lemma3") return CertMode::ClassicalLemma3;
  if (name == "classical_conjecture") return CertMode::ClassicalConjecture;
  throw std::invalid_argument("unknown certificate mode: " + name);
}

namespace {

std::vector<Rational> sorted_desc(const RVector& v) {
  std::vector<Rational> s(v.data(), v.data() + v.size());
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

void entropy_table_classical(const ProbVector& before, const ProbVector& after,
                             VerificationReport& report) {
  report.s_before = shannon_entropy(before);
  report.s_after = shannon_entropy(after);
  report.s0_before = std::log(static_cast<double>(state_rank(before.entries)));
  report.s0_after = std::log(static_cast<double>(state_rank(after.entries)));
}

void entropy_table_quantum(const DensityMatrix& before, const DensityMatrix& after,
                           VerificationReport& report) {
  RealVector eb = eigenvalues_of(before), ea = eigenvalues_of(after);
  report.s_before = shannon_entropy(eb);
  report.s_after = shannon_entropy(ea);
  report.s0_before = std::log(static_cast<double>(state_rank(eb)));
  report.s0_after = std::log(static_cast<double>(state_rank(ea)));
}

std::set<Eigen::Index> range_set(Eigen::Index from, Eigen::Index to) {
  std::set<Eigen::Index> s;
  for (Eigen::Index i = from; i < to; ++i) s.insert(i);
  return s;
}

VerificationReport verify_classical_conjecture(const TransitionCertificate& cert,
                                               const VerifyOptions& opts) {
  const ProbVector& p = *cert.input_c;
  const ProbVector& target = *cert.target_c;
  const JointDist& q = *cert.catalyst_c;
  validate(p);
  validate(target);
  validate(q);
  if (target.dim() != p.dim()) throw std::invalid_argument("input/target dimension mismatch");
  if (cert.epsilon < 0) throw std::invalid_argument("negative epsilon");

  JointDist joint = tensor_dist(as_joint(p), q);
  const Permutation& perm = *cert.dynamics_perm;
  validate(perm);
  if (perm.size() != joint.dim()) throw std::invalid_argument("permutation size mismatch");

  JointDist final = apply_permutation(perm, joint);
  Eigen::Index subsystems = final.subsystems();
  JointDist x_marg = marginalize(final, {0});
  JointDist cat_marg = marginalize(final, range_set(1, subsystems));

  Rational l1_target = l1_distance(x_marg.entries, target.entries);
  Rational l1_cat = l1_distance(cat_marg.entries, q.entries);

  VerificationReport report;
  report.tolerance = opts.tolerance;
  report.transition_residual = to_double(l1_target) / 2.0;
  report.catalyst_residual = to_double(l1_cat) / 2.0;
  report.decorrelation_residual = 0.0;
  report.exact = (l1_target == 0 && l1_cat == 0);
  report.pass = (l1_cat == 0) && (l1_target <= cert.epsilon);
  entropy_table_classical(p, target, report);
  return report;
}

VerificationReport verify_classical_lemma3(const TransitionCertificate& cert,
                                           const VerifyOptions& opts) {
  const ProbVector& p = *cert.input_c;
  const ProbVector& target = *cert.target_c;
  const JointDist& q = *cert.catalyst_c;
  validate(p);
  validate(target);
  validate(q);
  if (target.dim() != p.dim()) throw std::invalid_argument("input/target dimension mismatch");
  if (cert.uniform_dim < 1) throw std::invalid_argument("uniform register dimension must be >= 1");

  JointDist joint = tensor_dist(tensor_dist(as_joint(p), as_joint(uniform_dist(cert.uniform_dim))), q);
  const Permutation& perm = *cert.dynamics_perm;
  validate(perm);
  if (perm.size() != joint.dim()) throw std::invalid_argument("permutation size mismatch");

  JointDist final = apply_permutation(perm, joint);
  Eigen::Index subsystems = final.subsystems();
  JointDist sys_marg = marginalize(final, {0, 1});
  JointDist cat_marg = marginalize(final, range_set(2, subsystems));

  JointDist sys_target = tensor_dist(as_joint(target), as_joint(uniform_dist(cert.uniform_dim)));
  Rational l1_sys = l1_distance(sys_marg.entries, sys_target.entries);
  Rational l1_cat = l1_distance(cat_marg.entries, q.entries);

  // X-Y decorrelation of the final system marginal.
  JointDist x_marg = marginalize(sys_marg, {0});
  JointDist y_marg = marginalize(sys_marg, {1});
  Rational l1_dec = l1_distance(sys_marg.entries,
                                tensor_dist(ProbVector(x_marg.entries), ProbVector(y_marg.entries)).entries);

  VerificationReport report;
  report.tolerance = opts.tolerance;
  report.transition_residual = to_double(l1_sys) / 2.0;
  report.catalyst_residual = to_double(l1_cat) / 2.0;
  report.decorrelation_residual = to_double(l1_dec) / 2.0;
  report.exact = (l1_sys == 0 && l1_cat == 0);
  report.pass = report.exact;
  entropy_table_classical(p, target, report);
  return report;
}

struct QuantumPieces {
  CMatrix final;                      // U (rho (x) [1_Y (x)] sigma) U^dag
  std::vector<Eigen::Index> shape;    // [A, (Y,) catalyst factors...]
  Eigen::Index system_factors = 1;    // 1, or 2 when a Y register is present
};

QuantumPieces quantum_final_state(const TransitionCertificate& cert, bool with_uniform) {
  const DensityMatrix& rho = *cert.input_q;
  const DensityMatrix& sigma = *cert.catalyst_q;
  if (cert.target_q->dim() != rho.dim())
    throw std::invalid_argument("input/target dimension mismatch");

  QuantumPieces out;
  out.shape.push_back(rho.dim());
  CMatrix initial = rho.mat;
  if (with_uniform) {
    if (cert.uniform_dim < 1) throw std::invalid_argument("uniform register dimension must be >= 1");
    initial = kron(initial, CMatrix::Identity(cert.uniform_dim, cert.uniform_dim) /
                                static_cast<double>(cert.uniform_dim));
    out.shape.push_back(cert.uniform_dim);
    out.system_factors = 2;
  }
  initial = kron(initial, sigma.mat);
  for (auto d : sigma.shape) out.shape.push_back(d);

  const CMatrix& u = *cert.dynamics_u;
  Eigen::Index total = initial.rows();
  if (u.rows() != total || u.cols() != total)
    throw std::invalid_argument("unitary dimension mismatch");
  out.final = u * initial * u.adjoint();
  return out;
}

double dynamics_unitarity_residual(const CMatrix& u) {
  return max_abs(u * u.adjoint() - CMatrix::Identity(u.rows(), u.cols()));
}

// Trace distance between a bipartite state and the product of its own
// marginals, splitting the given shape at factor `cut`.
double product_gap(const CMatrix& state, const std::vector<Eigen::Index>& shape, Eigen::Index cut) {
  if (shape.size() < 2) return 0.0;
  std::set<Eigen::Index> left, right;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(shape.size()); ++i)
    (i < cut ? left : right).insert(i);
  CMatrix a = partial_trace(state, shape, left);
  CMatrix b = partial_trace(state, shape, right);
  return trace_distance(state, kron(a, b));
}

VerificationReport verify_quantum(const TransitionCertificate& cert, const VerifyOptions& opts) {
  const bool lemma2 = cert.mode == CertMode::Lemma2;
  const bool theorem1 = cert.mode == CertMode::Theorem1;
  if (theorem1 && !cert.dephasing)
    throw std::invalid_argument("theorem1 certificate needs a dephasing basis");
  if (theorem1 && cert.dephasing->dim() != cert.catalyst_q->dim())
    throw std::invalid_argument("dephasing basis dimension mismatch");

  QuantumPieces pieces = quantum_final_state(cert, lemma2);
  Eigen::Index nsys = pieces.system_factors;
  Eigen::Index nfac = static_cast<Eigen::Index>(pieces.shape.size());

  VerificationReport report;
  report.tolerance = opts.tolerance;

  double unitarity = dynamics_unitarity_residual(*cert.dynamics_u);

  CMatrix sys = partial_trace(pieces.final, pieces.shape, range_set(0, nsys));
  CMatrix cat = partial_trace(pieces.final, pieces.shape, range_set(nsys, nfac));

  CMatrix sys_target = cert.target_q->mat;
  if (lemma2)
    sys_target = kron(sys_target, CMatrix::Identity(cert.uniform_dim, cert.uniform_dim) /
                                      static_cast<double>(cert.uniform_dim));
  report.transition_residual = trace_distance(sys, sys_target);

  CMatrix cat_returned = theorem1 ? decohere(cat, *cert.dephasing) : cat;
  report.catalyst_residual = trace_distance(cat_returned, cert.catalyst_q->mat);

  if (lemma2) {
    // A-Y decorrelation on the system side.
    std::vector<Eigen::Index> sys_shape = {pieces.shape[0], pieces.shape[1]};
    report.decorrelation_residual = product_gap(sys, sys_shape, 1);
  } else if (cert.catalyst_q->shape.size() >= 2) {
    // B-R decorrelation inside the returned catalyst (diagnostic).
    report.decorrelation_residual = product_gap(cat, cert.catalyst_q->shape, 1);
  }

  report.pass = report.transition_residual <= opts.tolerance &&
                report.catalyst_residual <= opts.tolerance && unitarity <= kTolUnitary;
  if (lemma2) report.pass = report.pass && report.decorrelation_residual <= 1e-8;
  entropy_table_quantum(*cert.input_q, *cert.target_q, report);
  return report;
}

void check_fields(const TransitionCertificate& cert) {
  if (cert.classical()) {
    if (!cert.input_c || !cert.target_c || !cert.catalyst_c || !cert.dynamics_perm)
      throw std::invalid_argument("classical certificate is missing fields");
  } else {
    if (!cert.input_q || !cert.target_q || !cert.catalyst_q || !cert.dynamics_u)
      throw std::invalid_argument("quantum certificate is missing fields");
  }
}

}  // namespace

VerificationReport verify_certificate(const TransitionCertificate& cert,
                                      const VerifyOptions& opts) {
  check_fields(cert);
  switch (cert.mode) {
    case CertMode::ClassicalConjecture: return verify_classical_conjecture(cert, opts);
    case CertMode::ClassicalLemma3: return verify_classical_lemma3(cert, opts);
    case CertMode::Theorem1:
    case CertMode::Conjecture:
    case CertMode::Lemma2: return verify_quantum(cert, opts);
  }
  throw std::logic_error("unknown mode");
}

void validate_witness(const ProbVector& p, const ProbVector& p_prime, const WitnessPair& witness) {
  validate(p);
  validate(p_prime);
  validate(witness.tau);
  validate(witness.joint);
  if (p_prime.dim() != p.dim()) throw std::invalid_argument("witness: p and p' dimension mismatch");
  if (witness.joint.shape != std::vector<Eigen::Index>{p.dim(), witness.tau.dim()})
    throw std::invalid_argument("witness: joint shape must be [dim(p), dim(tau)]");
  if (marginal(witness.joint, 0).entries != p_prime.entries)
    throw std::invalid_argument("witness: X marginal of joint is not p'");
  if (marginal(witness.joint, 1).entries != witness.tau.entries)
    throw std::invalid_argument("witness: Z marginal of joint is not tau");
  if (!majorizes(tensor_dist(p, witness.tau).entries, witness.joint.entries))
    throw std::invalid_argument("witness: p (x) tau does not majorize the joint");
}

WitnessPair strip_zero_catalyst_atoms(const WitnessPair& witness) {
  std::vector<Eigen::Index> live;
  for (Eigen::Index z = 0; z < witness.tau.dim(); ++z)
    if (witness.tau.entries(z) != 0) live.push_back(z);
  if (live.empty()) throw std::invalid_argument("witness catalyst is the zero vector");
  if (static_cast<Eigen::Index>(live.size()) == witness.tau.dim()) return witness;

  Eigen::Index n = witness.joint.shape[0];
  Eigen::Index m_new = static_cast<Eigen::Index>(live.size());
  RVector tau(m_new);
  RVector joint(n * m_new);
  for (Eigen::Index k = 0; k < m_new; ++k) {
    tau(k) = witness.tau.entries(live[static_cast<std::size_t>(k)]);
    for (Eigen::Index x = 0; x < n; ++x)
      joint(x * m_new + k) =
          witness.joint.entries(x * witness.tau.dim() + live[static_cast<std::size_t>(k)]);
  }
  return WitnessPair{ProbVector(std::move(tau)), JointDist(std::move(joint), {n, m_new})};
}

RVector rationalize_spectrum(const RealVector& values, const BigInt& max_den) {
  RVector out(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) < -kTolPsd) throw std::invalid_argument("rationalize_spectrum: negative entry");
    out(i) = values(i) <= kTolRank ? Rational(0) : rational_approx(values(i), max_den);
  }
  Rational sum = 0;
  for (Eigen::Index i = 0; i < out.size(); ++i) sum += out(i);
  Rational delta = Rational(1) - sum;
  if (delta != 0) {
    Eigen::Index largest = 0;
    for (Eigen::Index i = 1; i < out.size(); ++i)
      if (out(i) > out(largest)) largest = i;
    out(largest) += delta;
    if (out(largest) <= 0) throw std::runtime_error("rationalize_spectrum: repair failed");
  }
  return out;
}

namespace {

// Uniform mixture of permutations carrying x to y, found as a rational
// bistochastic matrix (exact LP vertex) followed by an integer Birkhoff
// decomposition. Fallback for chains whose stage-composed weights exceed
// the control-dimension cap.
ControlledPermutation mixture_from_lp(const RVector& x, const RVector& y) {
  const Eigen::Index n = x.size();
  // Variables D_{ij} >= 0 with row sums 1, column sums 1 and D x = y.
  RMatrix a = RMatrix::Zero(3 * n, n * n);
  RVector b(3 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      a(i, i * n + j) = 1;                // row sum
      a(n + j, i * n + j) = 1;            // column sum
      a(2 * n + i, i * n + j) = x(j);     // action on x
    }
    b(i) = 1;
    b(n + i) = 1;
    b(2 * n + i) = y(i);
  }
  auto solution = lp_feasible_point(a, b);
  if (!solution) throw std::runtime_error("mixture_from_lp: no bistochastic matrix exists");

  BigInt denom = common_denominator(*solution);
  if (denom > kMaxControlDim)
    throw std::runtime_error("mixture_from_lp: control dimension " + denom.str() + " exceeds cap");
  Eigen::Index d = denom.convert_to<Eigen::Index>();

  // Integer matrix with constant row/column sums d; peel off permutations.
  std::vector<std::vector<BigInt>> f(static_cast<std::size_t>(n),
                                     std::vector<BigInt>(static_cast<std::size_t>(n)));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          numerator((*solution)(i * n + j) * Rational(denom));

  ControlledPermutation cp;
  cp.control_dim = d;
  BigInt remaining = d;
  while (remaining > 0) {
    // Perfect matching on the support of f (augmenting paths).
    std::vector<Eigen::Index> match_col(static_cast<std::size_t>(n), -1);
    std::vector<Eigen::Index> match_row(static_cast<std::size_t>(n), -1);
    std::function<bool(Eigen::Index, std::vector<bool>&)> augment =
        [&](Eigen::Index row, std::vector<bool>& visited) {
          for (Eigen::Index j = 0; j < n; ++j) {
            if (f[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] == 0 ||
                visited[static_cast<std::size_t>(j)])
              continue;
            visited[static_cast<std::size_t>(j)] = true;
            if (match_col[static_cast<std::size_t>(j)] < 0 ||
                augment(match_col[static_cast<std::size_t>(j)], visited)) {
              match_col[static_cast<std::size_t>(j)] = row;
              match_row[static_cast<std::size_t>(row)] = j;
              return true;
            }
          }
          return false;
        };
    for (Eigen::Index i = 0; i < n; ++i) {
      std::vector<bool> visited(static_cast<std::size_t>(n), false);
      if (!augment(i, visited))
        throw std::runtime_error("mixture_from_lp: Birkhoff matching failed");
    }
    BigInt weight = remaining;
    for (Eigen::Index i = 0; i < n; ++i)
      weight = std::min(weight,
                        f[static_cast<std::size_t>(i)][static_cast<std::size_t>(match_row[static_cast<std::size_t>(i)])]);
    std::vector<Eigen::Index> image(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      // D_{ij} moves mass from slot j to slot i.
      image[static_cast<std::size_t>(match_row[static_cast<std::size_t>(i)])] = i;
      f[static_cast<std::size_t>(i)][static_cast<std::size_t>(match_row[static_cast<std::size_t>(i)])] -= weight;
    }
    for (BigInt c = 0; c < weight; ++c) cp.branches.push_back(Permutation(image));
    remaining -= weight;
  }
  return cp;
}

}  // namespace

TransitionCertificate build_classical_lemma3(const ProbVector& p, const ProbVector& p_prime,
                                             const WitnessPair& witness_in) {
  validate_witness(p, p_prime, witness_in);
  WitnessPair witness = strip_zero_catalyst_atoms(witness_in);

  Eigen::Index n = p.dim();
  Eigen::Index m = witness.tau.dim();
  JointDist v = tensor_dist(p, witness.tau);

  TTransformChain chain = hlp_chain(v.entries, witness.joint.entries);
  ControlledPermutation cp;
  try {
    cp = chain_to_controlled_permutation(chain, n * m);
  } catch (const std::runtime_error&) {
    // Chain weights can have large composed denominators; realize the same
    // exact mixture from a bistochastic LP vertex instead.
    cp = mixture_from_lp(v.entries, witness.joint.entries);
  }
  Eigen::Index d = cp.control_dim;

  // Global permutation on [X, Y, A, Z]: branch P_a on (X, Z) controlled by
  // A, then the cyclic shift of A controlled by Y.
  Eigen::Index total = n * d * d * m;
  std::vector<Eigen::Index> image(static_cast<std::size_t>(total));
  for (Eigen::Index ix = 0; ix < n; ++ix)
    for (Eigen::Index iy = 0; iy < d; ++iy)
      for (Eigen::Index ia = 0; ia < d; ++ia)
        for (Eigen::Index iz = 0; iz < m; ++iz) {
          Eigen::Index from = ((ix * d + iy) * d + ia) * m + iz;
          Eigen::Index moved = cp.branches[static_cast<std::size_t>(ia)](ix * m + iz);
          Eigen::Index jx = moved / m, jz = moved % m;
          Eigen::Index ja = (ia + iy) % d;
          image[static_cast<std::size_t>(from)] = ((jx * d + iy) * d + ja) * m + jz;
        }

  TransitionCertificate cert;
  cert.mode = CertMode::ClassicalLemma3;
  cert.input_c = p;
  cert.target_c = p_prime;
  cert.uniform_dim = d;
  cert.catalyst_c = tensor_dist(uniform_dist(d), witness.tau);
  cert.dynamics_perm = Permutation(std::move(image));
  cert.metadata["control_dim"] = static_cast<double>(d);
  cert.metadata["chain_length"] = static_cast<double>(chain.size());

  VerificationReport report = verify_certificate(cert);
  if (!report.pass || !report.exact)
    throw std::runtime_error("build_classical_lemma3: certificate failed exact verification");
  return cert;
}

namespace {

struct SpectralData {
  Spectrum eig;
  RVector rational;  // rationalized spectrum, positionally matching eig
};

SpectralData rationalized_eig(const DensityMatrix& rho) {
  SpectralData out;
  out.eig = hermitian_eig(rho.mat);
  out.rational = rationalize_spectrum(out.eig.values);
  return out;
}

DensityMatrix rebuild_state(const SpectralData& s) {
  Eigen::Index n = s.eig.values.size();
  CMatrix lambda = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) lambda(i, i) = to_double(s.rational(i));
  CMatrix m = s.eig.vectors * lambda * s.eig.vectors.adjoint();
  return density_matrix(0.5 * (m + m.adjoint()), {n});
}

void check_builder_preconditions(const DensityMatrix& rho, const DensityMatrix& rho_prime,
                                 const SpectralData& in, const SpectralData& out) {
  if (rho.dim() != rho_prime.dim())
    throw std::invalid_argument("builder: states must have the same dimension");
  RealVector a = in.eig.values, b = out.eig.values;
  bool same = true;
  for (Eigen::Index i = 0; i < a.size() && same; ++i)
    if (std::abs(a(i) - b(i)) > 1e-12) same = false;
  if (same) throw std::invalid_argument("builder: states have equal spectra");
  if (state_rank(out.rational) < state_rank(in.rational))
    throw std::invalid_argument("builder: rank must not decrease");
  if (compare_shannon(out.rational, in.rational) <= 0)
    throw std::invalid_argument("builder: entropy must strictly increase");
}

struct CorePieces {
  SpectralData in, out;
  WitnessPair witness;
  Eigen::Index n = 0, m = 0;
  CMatrix w;  // W_{A,B} in the computational layout [A, B]
  DensityMatrix rho_rat, rho_prime_rat;
};

// Shared first half of both quantum builders: rationalize spectra, check
// the witness, synthesize W_{A,B} through the Schur-Horn route.
CorePieces build_core(const DensityMatrix& rho, const DensityMatrix& rho_prime,
                      const WitnessPair& witness_in) {
  CorePieces core;
  core.in = rationalized_eig(rho);
  core.out = rationalized_eig(rho_prime);
  check_builder_preconditions(rho, rho_prime, core.in, core.out);

  validate_witness(ProbVector(core.in.rational), ProbVector(core.out.rational), witness_in);
  core.witness = strip_zero_catalyst_atoms(witness_in);

  core.n = rho.dim();
  core.m = core.witness.tau.dim();
  JointDist v = tensor_dist(ProbVector(core.in.rational), core.witness.tau);

  CMatrix mixer = schur_horn_unitary(to_double_vector(v.entries),
                                     to_double_vector(core.witness.joint.entries));
  CMatrix left = kron(core.out.eig.vectors, CMatrix::Identity(core.m, core.m));
  CMatrix right = kron(core.in.eig.vectors, CMatrix::Identity(core.m, core.m));
  core.w = left * mixer * right.adjoint();

  core.rho_rat = rebuild_state(core.in);
  core.rho_prime_rat = rebuild_state(core.out);
  return core;
}

DensityMatrix catalyst_state(const CorePieces& core) {
  Eigen::Index n = core.n, m = core.m;
  CMatrix tau = CMatrix::Zero(m, m);
  for (Eigen::Index z = 0; z < m; ++z) tau(z, z) = to_double(core.witness.tau.entries(z));
  CMatrix sigma = kron(tau, CMatrix::Identity(n, n) / static_cast<double>(n));
  return DensityMatrix{std::move(sigma), {m, n}};
}

void record_metadata(TransitionCertificate& cert, const CorePieces& core,
                     const DensityMatrix& rho, const DensityMatrix& rho_prime) {
  cert.metadata["rationalization_distance_input"] = trace_distance(core.rho_rat, rho);
  cert.metadata["rationalization_distance_target"] = trace_distance(core.rho_prime_rat, rho_prime);
  cert.metadata["catalyst_dim"] = static_cast<double>(core.m);
  cert.metadata["dilation_dim"] = static_cast<double>(core.n);
}

std::string residual_text(const VerificationReport& r) {
  return "transition=" + std::to_string(r.transition_residual) +
         " catalyst=" + std::to_string(r.catalyst_residual) +
         " decorrelation=" + std::to_string(r.decorrelation_residual);
}

}  // namespace

TransitionCertificate build_theorem1_certificate(const DensityMatrix& rho,
                                                 const DensityMatrix& rho_prime,
                                                 const WitnessPair& witness_in) {
  CorePieces core = build_core(rho, rho_prime, witness_in);
  Eigen::Index n = core.n, m = core.m;

  CMatrix dilation = dephasing_dilation(n, Basis{core.out.eig.vectors});
  std::vector<Eigen::Index> shape = {n, m, n};
  CMatrix u = embed(dilation, shape, {0, 2}) * embed(core.w, shape, {0, 1});

  TransitionCertificate cert;
  cert.mode = CertMode::Theorem1;
  cert.input_q = core.rho_rat;
  cert.target_q = core.rho_prime_rat;
  cert.catalyst_q = catalyst_state(core);
  cert.dynamics_u = std::move(u);
  cert.dephasing = computational_basis(m * n);
  record_metadata(cert, core, rho, rho_prime);

  VerificationReport report = verify_certificate(cert, {.tolerance = 1e-7});
  if (!report.pass)
    throw std::runtime_error("build_theorem1_certificate: verification failed: " +
                             residual_text(report));
  return cert;
}

TransitionCertificate build_lemma2_certificate(const DensityMatrix& rho,
                                               const DensityMatrix& rho_prime,
                                               const WitnessPair& witness_in) {
  CorePieces core = build_core(rho, rho_prime, witness_in);
  Eigen::Index n = core.n, m = core.m;

  // Layout [A, Y, B, R]: W on (A, B), the A-dephasing dilation on (A, R),
  // then the B-dephasing dilation on (B, Y) to return the catalyst exactly.
  std::vector<Eigen::Index> shape = {n, m, m, n};
  CMatrix v_ar = dephasing_dilation(n, Basis{core.out.eig.vectors});
  CMatrix v_by = dephasing_dilation(m, computational_basis(m));
  CMatrix u = embed(v_by, shape, {2, 1}) * embed(v_ar, shape, {0, 3}) *
              embed(core.w, shape, {0, 2});

  TransitionCertificate cert;
  cert.mode = CertMode::Lemma2;
  cert.input_q = core.rho_rat;
  cert.target_q = core.rho_prime_rat;
  cert.uniform_dim = m;
  cert.catalyst_q = catalyst_state(core);
  cert.dynamics_u = std::move(u);
  record_metadata(cert, core, rho, rho_prime);

  VerificationReport report = verify_certificate(cert, {.tolerance = 1e-7});
  if (!report.pass)
    throw std::runtime_error("build_lemma2_certificate: verification failed: " +
                             residual_text(report));
  return cert;
}

namespace {

WitnessPair witness_or_throw(const DensityMatrix& rho, const DensityMatrix& rho_prime,
                             const SearchBudget& budget) {
  RVector p = rationalize_spectrum(hermitian_eig(rho.mat).values);
  RVector q = rationalize_spectrum(hermitian_eig(rho_prime.mat).values);
  auto witness = find_correlating_witness(ProbVector(p), ProbVector(q), budget);
  if (!witness) throw std::runtime_error("no correlating witness found within budget");
  return *witness;
}

}  // namespace

TransitionCertificate build_theorem1_certificate(const DensityMatrix& rho,
                                                 const DensityMatrix& rho_prime,
                                                 const SearchBudget& budget) {
  return build_theorem1_certificate(rho, rho_prime, witness_or_throw(rho, rho_prime, budget));
}

TransitionCertificate build_lemma2_certificate(const DensityMatrix& rho,
                                               const DensityMatrix& rho_prime,
                                               const SearchBudget& budget) {
  return build_lemma2_certificate(rho, rho_prime, witness_or_throw(rho, rho_prime, budget));
}

}  // namespace catcert
