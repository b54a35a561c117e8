#pragma once

#include <json.hpp>

#include <concepts>
#include <string>

#include "catcert/catalysis.hpp"
#include "catcert/protocols.hpp"

namespace catcert {

using Json = nlohmann::json;

// Wire conventions: rationals are "num/den" strings, complex entries
// [re, im] pairs, matrices row-major nested arrays, joint distributions
// { "shape": [...], "entries": [...] }, permutations image arrays and
// controlled permutations cycle-notation strings.

// Constrained template: the boost number type has a greedy converting
// constructor, so a plain overload would drag every other argument type
// through its conversion machinery.
template <typename T>
  requires std::same_as<T, Rational>
Json to_json(const T& r) {
  return format_rational(r);
}
Rational rational_from_json(const Json& j);

Json to_json(const RVector& v);
RVector rvector_from_json(const Json& j);

Json to_json(const ProbVector& p);
ProbVector prob_vector_from_json(const Json& j);

Json to_json(const JointDist& d);
JointDist joint_dist_from_json(const Json& j);

Json to_json(const Permutation& p);
Permutation permutation_from_json(const Json& j);

std::string cycle_notation(const Permutation& p);
Permutation permutation_from_cycles(const std::string& text, Eigen::Index size);

Json to_json(const ControlledPermutation& cp);
ControlledPermutation controlled_permutation_from_json(const Json& j);

Json to_json(const CMatrix& m);
CMatrix cmatrix_from_json(const Json& j);

Json to_json(const DensityMatrix& rho);
DensityMatrix density_matrix_from_json(const Json& j);

Json to_json(const TransitionCertificate& cert);
TransitionCertificate certificate_from_json(const Json& j);

Json to_json(const VerificationReport& report);
Json to_json(const EntropyValue& value);
Json to_json(const TrumpingVerdict& verdict);
Json to_json(const MonotoneScan& scan);
Json to_json(const WitnessPair& witness);
Json to_json(const ConjectureSearchOutcome& outcome);
Json to_json(const CoolingReport& report);
Json to_json(const RateTable& table);

std::string trumping_csv(const TrumpingVerdict& verdict);
std::string scan_csv(const MonotoneScan& scan);
std::string rate_csv(const RateTable& table);

}  // namespace catcert
