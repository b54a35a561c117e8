#include <cmath>
#include <stdexcept>

#include "catcert/catalysis.hpp"
#include "catcert/entropy.hpp"

namespace catcert {

namespace {

RealVector spectrum_before(const TransitionCertificate& cert) {
  return cert.classical() ? to_double_vector(cert.input_c->entries)
                          : eigenvalues_of(*cert.input_q);
}

RealVector spectrum_after(const TransitionCertificate& cert) {
  return cert.classical() ? to_double_vector(cert.target_c->entries)
                          : eigenvalues_of(*cert.target_q);
}

int delta_sign(const EntropyValue& before, const EntropyValue& after) {
  if (before.infinite && after.infinite) return 0;
  if (before.infinite) return -1;  // finite < infinite: a strict decrease
  if (after.infinite) return 1;
  double diff = after.value - before.value;
  if (std::abs(diff) <= kTolMajor) return 0;
  return diff > 0 ? 1 : -1;
}

}  // namespace

MonotoneScan monotone_violation_scan(const TransitionCertificate& cert) {
  VerificationReport report = verify_certificate(cert);
  if (!report.pass)
    throw std::invalid_argument("monotone_violation_scan: certificate does not verify");

  RealVector before = spectrum_before(cert);
  RealVector after = spectrum_after(cert);

  MonotoneScan scan;
  for (double alpha : default_alpha_grid()) {
    MonotoneRow row;
    row.alpha = alpha;
    row.before = renyi_entropy(before, alpha);
    row.after = renyi_entropy(after, alpha);
    row.sign = delta_sign(row.before, row.after);
    if (row.sign < 0) scan.violation_alphas.push_back(alpha);
    scan.rows.push_back(row);
  }
  return scan;
}

}  // namespace catcert
