#include "catcert/serialize.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace catcert {

namespace {

constexpr const char* kCertSchema = "catcert-cert/1";

// JSON has no infinities; alphas and entropy values use "inf"/"-inf".
Json finite_or_string(double x) {
  if (std::isinf(x)) return x > 0 ? Json("inf") : Json("-inf");
  return Json(x);
}

Json alpha_list(const std::vector<double>& alphas) {
  Json arr = Json::array();
  for (double a : alphas) arr.push_back(finite_or_string(a));
  return arr;
}

}  // namespace


Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  return parse_rational(j.get<std::string>());
}

Json to_json(const RVector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(to_json(v(i)));
  return arr;
}

RVector rvector_from_json(const Json& j) {
  RVector v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const auto& item : j) v(i++) = rational_from_json(item);
  return v;
}

Json to_json(const ProbVector& p) { return to_json(p.entries); }

ProbVector prob_vector_from_json(const Json& j) {
  ProbVector p(rvector_from_json(j));
  validate(p);
  return p;
}

Json to_json(const JointDist& d) {
  return Json{{"shape", d.shape}, {"entries", to_json(d.entries)}};
}

JointDist joint_dist_from_json(const Json& j) {
  JointDist d(rvector_from_json(j.at("entries")),
              j.at("shape").get<std::vector<Eigen::Index>>());
  validate(d);
  return d;
}

Json to_json(const Permutation& p) { return Json(p.image); }

Permutation permutation_from_json(const Json& j) {
  Permutation p(j.get<std::vector<Eigen::Index>>());
  validate(p);
  return p;
}

std::string cycle_notation(const Permutation& p) {
  std::ostringstream out;
  std::vector<bool> seen(p.image.size(), false);
  bool any = false;
  for (Eigen::Index start = 0; start < p.size(); ++start) {
    if (seen[static_cast<std::size_t>(start)] || p(start) == start) continue;
    any = true;
    out << "(";
    Eigen::Index cur = start;
    bool first = true;
    while (!seen[static_cast<std::size_t>(cur)]) {
      seen[static_cast<std::size_t>(cur)] = true;
      if (!first) out << " ";
      out << cur;
      first = false;
      cur = p(cur);
    }
    out << ")";
  }
  if (!any) return "()";
  return out.str();
}

Permutation permutation_from_cycles(const std::string& text, Eigen::Index size) {
  Permutation p = Permutation::identity(size);
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] != '(') {
      ++pos;
      continue;
    }
    std::size_t close = text.find(')', pos);
    if (close == std::string::npos) throw std::invalid_argument("unbalanced cycle notation");
    std::istringstream cycle(text.substr(pos + 1, close - pos - 1));
    std::vector<Eigen::Index> members;
    long long v;
    while (cycle >> v) members.push_back(static_cast<Eigen::Index>(v));
    for (std::size_t k = 0; k < members.size(); ++k) {
      Eigen::Index from = members[k];
      Eigen::Index to = members[(k + 1) % members.size()];
      if (from < 0 || from >= size) throw std::invalid_argument("cycle element out of range");
      p.image[static_cast<std::size_t>(from)] = to;
    }
    pos = close + 1;
  }
  validate(p);
  return p;
}

Json to_json(const ControlledPermutation& cp) {
  Json perms = Json::array();
  for (const auto& p : cp.branches) perms.push_back(cycle_notation(p));
  Eigen::Index dim = cp.branches.empty() ? 0 : cp.branches.front().size();
  return Json{{"control_dim", cp.control_dim}, {"target_dim", dim}, {"perms", perms}};
}

ControlledPermutation controlled_permutation_from_json(const Json& j) {
  ControlledPermutation cp;
  cp.control_dim = j.at("control_dim").get<Eigen::Index>();
  Eigen::Index dim = j.at("target_dim").get<Eigen::Index>();
  for (const auto& item : j.at("perms"))
    cp.branches.push_back(permutation_from_cycles(item.get<std::string>(), dim));
  return cp;
}

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix cmatrix_from_json(const Json& j) {
  Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j.at(0).size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j.at(static_cast<std::size_t>(r));
    if (static_cast<Eigen::Index>(row.size()) != cols)
      throw std::invalid_argument("ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& entry = row.at(static_cast<std::size_t>(c));
      m(r, c) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
  }
  return m;
}

Json to_json(const DensityMatrix& rho) {
  return Json{{"shape", rho.shape}, {"matrix", to_json(rho.mat)}};
}

DensityMatrix density_matrix_from_json(const Json& j) {
  if (j.is_array() && (j.empty() || !j.at(0).is_array())) {
    // Shorthand: a bare array of probabilities is a diagonal state.
    RealVector diag(static_cast<Eigen::Index>(j.size()));
    Eigen::Index i = 0;
    for (const auto& item : j)
      diag(i++) = item.is_string() ? to_double(parse_rational(item.get<std::string>()))
                                   : item.get<double>();
    return diagonal_state(diag);
  }
  return density_matrix(cmatrix_from_json(j.at("matrix")),
                        j.at("shape").get<std::vector<Eigen::Index>>());
}

Json to_json(const TransitionCertificate& cert) {
  Json j;
  j["schema"] = kCertSchema;
  j["mode"] = to_string(cert.mode);
  j["uniform_dim"] = cert.uniform_dim;
  j["epsilon"] = to_json(cert.epsilon);
  if (cert.classical()) {
    j["input"] = to_json(*cert.input_c);
    j["target"] = to_json(*cert.target_c);
    j["catalyst"] = to_json(*cert.catalyst_c);
    j["dynamics"] = Json{{"type", "permutation"}, {"image", to_json(*cert.dynamics_perm)}};
  } else {
    j["input"] = to_json(*cert.input_q);
    j["target"] = to_json(*cert.target_q);
    j["catalyst"] = to_json(*cert.catalyst_q);
    j["dynamics"] = Json{{"type", "unitary"}, {"matrix", to_json(*cert.dynamics_u)}};
    if (cert.dephasing) j["dephasing_basis"] = to_json(cert.dephasing->kets);
  }
  if (!cert.metadata.empty()) j["metadata"] = cert.metadata;
  return j;
}

TransitionCertificate certificate_from_json(const Json& j) {
  if (j.value("schema", "") != kCertSchema)
    throw std::invalid_argument("unsupported certificate schema");
  TransitionCertificate cert;
  cert.mode = cert_mode_from_string(j.at("mode").get<std::string>());
  cert.uniform_dim = j.value("uniform_dim", Eigen::Index{1});
  if (j.contains("epsilon")) cert.epsilon = rational_from_json(j.at("epsilon"));
  if (cert.classical()) {
    cert.input_c = prob_vector_from_json(j.at("input"));
    cert.target_c = prob_vector_from_json(j.at("target"));
    cert.catalyst_c = joint_dist_from_json(j.at("catalyst"));
    cert.dynamics_perm = permutation_from_json(j.at("dynamics").at("image"));
  } else {
    cert.input_q = density_matrix_from_json(j.at("input"));
    cert.target_q = density_matrix_from_json(j.at("target"));
    cert.catalyst_q = density_matrix_from_json(j.at("catalyst"));
    cert.dynamics_u = cmatrix_from_json(j.at("dynamics").at("matrix"));
    if (j.contains("dephasing_basis"))
      cert.dephasing = basis_from_unitary(cmatrix_from_json(j.at("dephasing_basis")));
  }
  if (j.contains("metadata"))
    cert.metadata = j.at("metadata").get<std::map<std::string, double>>();
  return cert;
}

Json to_json(const VerificationReport& report) {
  return Json{{"pass", report.pass},
              {"exact", report.exact},
              {"tolerance", report.tolerance},
              {"residuals", report.residuals()},
              {"entropy",
               {{"S_before_nats", report.s_before},
                {"S_after_nats", report.s_after},
                {"S0_before_nats", report.s0_before},
                {"S0_after_nats", report.s0_after}}}};
}

Json to_json(const EntropyValue& value) {
  Json j{{"alpha", finite_or_string(value.alpha)},
         {"units", value.units == Units::Bits ? "bits" : "nats"}};
  j["value"] = value.infinite ? Json("inf") : finite_or_string(value.value);
  return j;
}

Json to_json(const TrumpingVerdict& verdict) {
  auto row_json = [](const TrumpingViolation& v) {
    return Json{{"alpha", finite_or_string(v.alpha)},
                {"S_before", to_json(v.before)},
                {"S_after", to_json(v.after)}};
  };
  Json rows = Json::array();
  for (const auto& v : verdict.rows) rows.push_back(row_json(v));
  Json violations = Json::array();
  for (const auto& v : verdict.violations) violations.push_back(row_json(v));
  return Json{{"pass", verdict.pass},
              {"grid_only", verdict.grid_only},
              {"alpha_grid", alpha_list(verdict.alpha_grid)},
              {"rows", rows},
              {"violations", violations}};
}

Json to_json(const MonotoneScan& scan) {
  Json rows = Json::array();
  for (const auto& row : scan.rows)
    rows.push_back(Json{{"alpha", finite_or_string(row.alpha)},
                        {"S_before", to_json(row.before)},
                        {"S_after", to_json(row.after)},
                        {"sign", row.sign}});
  return Json{{"rows", rows}, {"violation_alphas", alpha_list(scan.violation_alphas)}};
}

Json to_json(const WitnessPair& witness) {
  return Json{{"tau", to_json(witness.tau)}, {"joint", to_json(witness.joint)}};
}

Json to_json(const ConjectureSearchOutcome& outcome) {
  Json j{{"found", outcome.certificate.has_value()},
         {"provably_impossible", outcome.provably_impossible},
         {"reason", outcome.reason}};
  if (outcome.certificate) j["certificate"] = to_json(*outcome.certificate);
  return j;
}

Json to_json(const CoolingReport& report) {
  std::vector<double> cold(report.cold_spectrum.data(),
                           report.cold_spectrum.data() + report.cold_spectrum.size());
  Json mi = Json::array();
  for (Eigen::Index i = 0; i < report.mutual_information_bits.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j2 = 0; j2 < report.mutual_information_bits.cols(); ++j2)
      row.push_back(report.mutual_information_bits(i, j2));
    mi.push_back(std::move(row));
  }
  return Json{{"pairs", report.pairs},
              {"n_qubits", report.n_qubits},
              {"catalyst_dim", report.catalyst_dim},
              {"target_eps_bits", report.target_eps_bits},
              {"achieved_eps_bits", report.achieved_eps_bits},
              {"cold_spectrum", cold},
              {"cold_purity_distance", report.cold_purity_distance},
              {"per_copy_residuals", report.per_copy_residuals},
              {"catalyst_residuals", report.catalyst_residuals},
              {"mutual_information_bits", mi},
              {"lambda_min_joint", report.lambda_min_joint},
              {"ratio_sequence", report.ratio_sequence},
              {"majorization_ok", report.majorization_ok},
              {"units", "bits"}};
}

Json to_json(const RateTable& table) {
  Json rows = Json::array();
  for (const auto& row : table.rows)
    rows.push_back(Json{{"qubits", row.qubits},
                        {"achieved_cold", row.achieved_cold},
                        {"bound_cold", row.bound_cold}});
  return Json{{"S_input_bits", table.s_input_bits}, {"eps_bits", table.eps_bits}, {"rows", rows}};
}

namespace {

std::string entropy_csv_cell(const EntropyValue& v) {
  if (v.infinite) return "inf";
  std::ostringstream out;
  out.precision(15);
  out << v.value;
  return out.str();
}

std::string alpha_csv_cell(double alpha) {
  if (std::isinf(alpha)) return alpha > 0 ? "inf" : "-inf";
  std::ostringstream out;
  out << alpha;
  return out.str();
}

}  // namespace

std::string trumping_csv(const TrumpingVerdict& verdict) {
  std::ostringstream out;
  out << "alpha,S_before,S_after,violation\n";
  std::set<double> violated;
  for (const auto& v : verdict.violations) violated.insert(v.alpha);
  for (const auto& row : verdict.rows)
    out << alpha_csv_cell(row.alpha) << "," << entropy_csv_cell(row.before) << ","
        << entropy_csv_cell(row.after) << "," << (violated.count(row.alpha) ? 1 : 0) << "\n";
  return out.str();
}

std::string scan_csv(const MonotoneScan& scan) {
  std::ostringstream out;
  out << "alpha,S_before,S_after,sign\n";
  for (const auto& row : scan.rows)
    out << alpha_csv_cell(row.alpha) << "," << entropy_csv_cell(row.before) << ","
        << entropy_csv_cell(row.after) << "," << row.sign << "\n";
  return out.str();
}

std::string rate_csv(const RateTable& table) {
  std::ostringstream out;
  out << "qubits,achieved_cold,bound_cold\n";
  for (const auto& row : table.rows)
    out << row.qubits << "," << row.achieved_cold << "," << row.bound_cold << "\n";
  return out.str();
}

}  // namespace catcert
