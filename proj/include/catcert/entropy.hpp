#pragma once

#include <optional>
#include <string>
#include <vector>

#include "catcert/classical.hpp"
#include "catcert/quantum.hpp"

namespace catcert {

struct TransitionCertificate;  // catalysis.hpp

enum class Units { Nats, Bits };

inline constexpr double kTolRank = 1e-9;    // rank cutoff for float spectra
inline constexpr double kTolMajor = 1e-12;  // partial-sum slack for float majorization

// A Renyi entropy evaluation. alpha uses +-infinity for the limits and 0
// for the alpha -> 0+ limit (log rank). For alpha < 0 on rank-deficient
// states the value is flagged infinite rather than raising an error.
struct EntropyValue {
  double value = 0.0;
  Units units = Units::Nats;
  double alpha = 1.0;
  bool infinite = false;
};

EntropyValue renyi_entropy(const RealVector& spectrum, double alpha, Units units = Units::Nats);
EntropyValue renyi_entropy(const DensityMatrix& rho, double alpha, Units units = Units::Nats);
EntropyValue renyi_entropy(const ProbVector& p, double alpha, Units units = Units::Nats);

// Shannon / von Neumann entropy (alpha = 1) as a plain number.
double shannon_entropy(const RealVector& spectrum, Units units = Units::Nats);
double shannon_entropy(const ProbVector& p, Units units = Units::Nats);
double vn_entropy(const DensityMatrix& rho, Units units = Units::Nats);

// log n - S(rho), additive under tensor products.
double negentropy(const DensityMatrix& rho);
double negentropy(const ProbVector& p);

// Number of nonzero eigenvalues (exact for rationals, kTolRank for floats).
Eigen::Index state_rank(const RealVector& spectrum);
Eigen::Index state_rank(const RVector& entries);

// Exact rational Shannon entropy comparison: sign of S(a) - S(b), computed
// with enough precision that the sign is reliable unless the entropies agree
// to ~50 digits (returns 0 in that case).
int compare_shannon(const RVector& a, const RVector& b);

// Majorization x >= y: every top-k partial sum of x dominates y's.
// Inputs must sum to 1 (exactly for rationals, within kTolTrace for floats);
// shorter vectors are zero-padded. Rational overload is exact; float
// overload allows kTolMajor slack.
bool majorizes(const RVector& x, const RVector& y);
bool majorizes(const RealVector& x, const RealVector& y, double slack = kTolMajor);

// Multiset majorization without the sum-to-1 requirement (sums must agree).
bool majorizes_unnormalized(const RVector& x, const RVector& y);

struct TrumpingViolation {
  double alpha;
  EntropyValue before;  // S_alpha(rho)
  EntropyValue after;   // S_alpha(rho')
};

// Result of checking the Renyi family on a finite grid. A finite grid can
// refute but never certify the full all-alpha condition, so grid_only
// stays true on every verdict.
struct TrumpingVerdict {
  std::vector<double> alpha_grid;
  std::vector<TrumpingViolation> rows;  // one per grid point
  std::vector<TrumpingViolation> violations;
  bool pass = false;
  bool grid_only = true;
};

// The fixed alpha grid {-inf, -4, -2, -1, -1/2, 0+, 1/2, 1, 2, 4, inf}.
const std::vector<double>& default_alpha_grid();

TrumpingVerdict trumping_check(const RealVector& before, const RealVector& after,
                               const std::vector<double>& extra_alphas = {});
TrumpingVerdict trumping_check(const DensityMatrix& rho, const DensityMatrix& rho_prime,
                               const std::vector<double>& extra_alphas = {});
TrumpingVerdict trumping_check(const ProbVector& p, const ProbVector& p_prime,
                               const std::vector<double>& extra_alphas = {});

struct MonotoneRow {
  double alpha;
  EntropyValue before;
  EntropyValue after;
  int sign;  // sign of S_alpha(after) - S_alpha(before), 0 within kTolMajor
};

// Per-alpha report of entropy changes along a verified catalytic
// transition; violation_alphas lists every alpha where S_alpha strictly
// decreased, i.e. where S_alpha fails to be a monotone.
struct MonotoneScan {
  std::vector<MonotoneRow> rows;
  std::vector<double> violation_alphas;
};

// Requires a certificate accepted by verify_certificate; throws otherwise.
MonotoneScan monotone_violation_scan(const TransitionCertificate& cert);

}  // namespace catcert
