#pragma once

#include <map>
#include <optional>
#include <string>

#include "catcert/classical.hpp"
#include "catcert/constructions.hpp"
#include "catcert/entropy.hpp"
#include "catcert/quantum.hpp"

namespace catcert {

// Certificate modes.
//   Theorem1            quantum, quasi-classical catalyst returned after dephasing
//   Conjecture          quantum, catalyst returned exactly, no dephasing anywhere
//   Lemma2              quantum, extra uniform register Y on the system side,
//                       catalyst returned exactly
//   ClassicalLemma3     exact rational version of Lemma2 (permutation dynamics)
//   ClassicalConjecture exact rational version of Conjecture (permutation
//                       dynamics, l1 tolerance epsilon on the target marginal)
enum class CertMode { Theorem1, Conjecture, Lemma2, ClassicalLemma3, ClassicalConjecture };

std::string to_string(CertMode mode);
CertMode cert_mode_from_string(const std::string& name);

// A verifiable transition certificate. The flat tensor order is always
// [ system A | uniform register Y (when uniform_dim > 1) | catalyst factors ].
// Quantum modes fill the _q fields and dynamics_u; classical modes fill the
// _c fields and dynamics_perm.
struct TransitionCertificate {
  CertMode mode = CertMode::Conjecture;

  std::optional<ProbVector> input_c;
  std::optional<ProbVector> target_c;
  std::optional<JointDist> catalyst_c;
  std::optional<Permutation> dynamics_perm;

  std::optional<DensityMatrix> input_q;
  std::optional<DensityMatrix> target_q;
  std::optional<DensityMatrix> catalyst_q;
  std::optional<CMatrix> dynamics_u;
  std::optional<Basis> dephasing;  // Theorem1: basis pinching the catalyst

  Eigen::Index uniform_dim = 1;  // Y register (Lemma2 / ClassicalLemma3)
  Rational epsilon = 0;          // ClassicalConjecture target tolerance

  // Builder diagnostics (e.g. spectrum rationalization distances).
  std::map<std::string, double> metadata;

  bool classical() const {
    return mode == CertMode::ClassicalLemma3 || mode == CertMode::ClassicalConjecture;
  }
};

struct VerifyOptions {
  double tolerance = 1e-8;  // per-condition trace-distance tolerance (quantum)
};

struct VerificationReport {
  bool pass = false;
  bool exact = false;  // classical modes: all residuals identically zero
  double tolerance = 0.0;
  // Residuals are trace distances (half the l1 norm on the classical path).
  double transition_residual = 0.0;
  double catalyst_residual = 0.0;
  double decorrelation_residual = 0.0;
  // Entropy table in nats: S_1 and S_0 of input and target.
  double s_before = 0.0, s_after = 0.0;
  double s0_before = 0.0, s0_after = 0.0;

  std::map<std::string, double> residuals() const {
    return {{"transition", transition_residual},
            {"catalyst", catalyst_residual},
            {"decorrelation", decorrelation_residual}};
  }
};

// Checks the certificate's marginal conditions for its mode. Structural
// inconsistencies (wrong dimensions, missing fields, invalid dynamics)
// throw; condition failures come back as pass = false.
VerificationReport verify_certificate(const TransitionCertificate& cert,
                                      const VerifyOptions& opts = {});

// Search limits: catalyst dimension, catalyst entry denominator, atom count
// of the searched joint distributions, and wall-clock budget.
struct SearchBudget {
  Eigen::Index max_catalyst_dim = 6;
  Eigen::Index max_denominator = 12;
  long max_atoms = 1'000'000;
  double seconds = 30.0;
};

// Theorem 3 data: catalyst tau and a correlated joint r on X x Z with
// p (x) tau >= r, r_X = p', r_Z = tau (all exact).
struct WitnessPair {
  ProbVector tau;
  JointDist joint;  // shape [dim(p), dim(tau)]
};

// Checks the WitnessPair invariants against (p, p'); throws on violation.
void validate_witness(const ProbVector& p, const ProbVector& p_prime, const WitnessPair& witness);

// Drops zero-probability catalyst atoms (and their joint columns).
WitnessPair strip_zero_catalyst_atoms(const WitnessPair& witness);

// Bounded search for a correlating-catalytic witness. Requires
// S(p') > S(p), rank(p') >= rank(p) and different spectra (throws
// otherwise). Returns nullopt on budget exhaustion; that is not a disproof.
std::optional<WitnessPair> find_correlating_witness(const ProbVector& p,
                                                    const ProbVector& p_prime,
                                                    const SearchBudget& budget = {});

// Exact rational certificate for the classical weak lemma: permutation on
// X x Y x (A x Z) built from the witness via the T-transform chain, its
// controlled-permutation realization and the cyclic-shift decorrelator.
TransitionCertificate build_classical_lemma3(const ProbVector& p, const ProbVector& p_prime,
                                             const WitnessPair& witness);

// Spectrum rationalization for the quantum builders: continued fractions
// with denominator <= max_den, zeros preserved exactly, sum repaired to 1.
RVector rationalize_spectrum(const RealVector& values, const BigInt& max_den = BigInt(10'000));

// Quantum certificate for the dephasing theorem. The witness must match
// the rationalized spectra of rho and rho' (as produced by
// rationalize_spectrum); the certificate stores the rationalized states and
// records their trace distance to the inputs in metadata.
TransitionCertificate build_theorem1_certificate(const DensityMatrix& rho,
                                                 const DensityMatrix& rho_prime,
                                                 const WitnessPair& witness);

// Quantum certificate for the weak lemma: extra uniform register on the
// system side, catalyst returned exactly without dephasing.
TransitionCertificate build_lemma2_certificate(const DensityMatrix& rho,
                                               const DensityMatrix& rho_prime,
                                               const WitnessPair& witness);

// Convenience: witness search on the rationalized spectra followed by the
// builder. Throws when the search comes back empty.
TransitionCertificate build_theorem1_certificate(const DensityMatrix& rho,
                                                 const DensityMatrix& rho_prime,
                                                 const SearchBudget& budget);
TransitionCertificate build_lemma2_certificate(const DensityMatrix& rho,
                                               const DensityMatrix& rho_prime,
                                               const SearchBudget& budget);

struct ConjectureSearchOutcome {
  std::optional<TransitionCertificate> certificate;
  bool provably_impossible = false;
  std::string reason;
};

// Bounded search for a single-permutation certificate of the classical
// conjecture: [P(p (x) q)]_Y = q exactly and || [P(p (x) q)]_X - p' ||_1
// <= epsilon. Searches catalysts by dimension and denominator over the
// atom representation. When epsilon = 0 and S(p') < S(p) (or S matches on
// different spectra) the outcome is flagged provably impossible.
ConjectureSearchOutcome search_conjecture_certificate(const ProbVector& p,
                                                      const ProbVector& p_prime,
                                                      const SearchBudget& budget = {},
                                                      const Rational& epsilon = Rational(0));

}  // namespace catcert
