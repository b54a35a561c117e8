// Command-line front end: verify and inspect transition certificates,
// search for classical ones, build the quantum constructions, and run the
// demonstration protocols. JSON goes to stdout; exit code 0 means
// pass/found, 1 fail/not-found, 2 error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "catcert/serialize.hpp"

namespace {

using namespace catcert;

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

// "1/2,1/3,1/6" or @file.json
ProbVector parse_dist(const std::string& text) {
  if (!text.empty() && text.front() == '@') return prob_vector_from_json(load_json(text.substr(1)));
  RVector entries(std::count(text.begin(), text.end(), ',') + 1);
  std::istringstream in(text);
  std::string item;
  Eigen::Index i = 0;
  while (std::getline(in, item, ',')) entries(i++) = parse_rational(item);
  ProbVector p(std::move(entries));
  validate(p);
  return p;
}

DensityMatrix parse_state(const std::string& text) {
  if (!text.empty() && text.front() == '@') return density_matrix_from_json(load_json(text.substr(1)));
  if (text.find(',') != std::string::npos || text.find('/') != std::string::npos) {
    std::istringstream in(text);
    std::string item;
    std::vector<double> diag;
    while (std::getline(in, item, ','))
      diag.push_back(item.find('/') != std::string::npos ? to_double(parse_rational(item))
                                                         : std::stod(item));
    RealVector v(static_cast<Eigen::Index>(diag.size()));
    for (std::size_t k = 0; k < diag.size(); ++k) v(static_cast<Eigen::Index>(k)) = diag[k];
    return diagonal_state(v);
  }
  return density_matrix_from_json(load_json(text));
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

struct BudgetFlags {
  SearchBudget budget;
  void attach(CLI::App* cmd) {
    cmd->add_option("--max-dim", budget.max_catalyst_dim, "largest catalyst dimension");
    cmd->add_option("--max-den", budget.max_denominator, "largest catalyst denominator");
    cmd->add_option("--max-atoms", budget.max_atoms, "atom cap for the searched joints");
    cmd->add_option("--seconds", budget.seconds, "wall-clock budget in seconds");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"catalytic state-transition certificates"};
  app.require_subcommand(1);
  int exit_code = 0;

  std::string cert_path, a_text, b_text, state_text;
  double eps = 0.05;
  Eigen::Index pairs = 2;
  bool csv = false;
  double tolerance = 1e-8;
  std::string eps_rational = "0";

  auto* verify_cmd = app.add_subcommand("verify", "verify a certificate file");
  verify_cmd->add_option("cert", cert_path, "certificate JSON")->required();
  verify_cmd->add_option("--tolerance", tolerance, "quantum trace-distance tolerance");
  verify_cmd->callback([&] {
    auto cert = certificate_from_json(load_json(cert_path));
    auto report = verify_certificate(cert, {.tolerance = tolerance});
    emit(to_json(report));
    exit_code = report.pass ? 0 : 1;
  });

  BudgetFlags search_budget;
  auto* search_cmd = app.add_subcommand("search-classical",
                                        "search for a classical conjecture certificate");
  search_cmd->add_option("p", a_text, "input distribution, e.g. 1/2,1/3,1/6")->required();
  search_cmd->add_option("p_prime", b_text, "target distribution")->required();
  search_cmd->add_option("--eps", eps_rational, "l1 tolerance on the target marginal (rational)");
  search_budget.attach(search_cmd);
  search_cmd->callback([&] {
    auto outcome = search_conjecture_certificate(parse_dist(a_text), parse_dist(b_text),
                                                 search_budget.budget,
                                                 parse_rational(eps_rational));
    emit(to_json(outcome));
    exit_code = outcome.certificate ? 0 : 1;
  });

  BudgetFlags thm1_budget;
  auto* thm1_cmd = app.add_subcommand("build-thm1", "build a dephasing-theorem certificate");
  thm1_cmd->add_option("rho", a_text, "input state (JSON file or diagonal list)")->required();
  thm1_cmd->add_option("rho_prime", b_text, "target state")->required();
  thm1_budget.attach(thm1_cmd);
  thm1_cmd->callback([&] {
    auto cert = build_theorem1_certificate(parse_state(a_text), parse_state(b_text),
                                           thm1_budget.budget);
    emit(to_json(cert));
  });

  BudgetFlags lemma2_budget;
  auto* lemma2_cmd = app.add_subcommand("build-lemma2", "build a weak-lemma certificate");
  lemma2_cmd->add_option("rho", a_text, "input state")->required();
  lemma2_cmd->add_option("rho_prime", b_text, "target state")->required();
  lemma2_budget.attach(lemma2_cmd);
  lemma2_cmd->callback([&] {
    auto cert = build_lemma2_certificate(parse_state(a_text), parse_state(b_text),
                                         lemma2_budget.budget);
    emit(to_json(cert));
  });

  auto* fig2_cmd = app.add_subcommand("fig2", "emit the dimension-3 counterexample certificate");
  fig2_cmd->callback([&] {
    auto cert = fig2_example();
    auto report = verify_certificate(cert);
    Json j = to_json(cert);
    j["verification"] = to_json(report);
    j["monotone_scan"] = to_json(monotone_violation_scan(cert));
    emit(j);
    exit_code = report.pass ? 0 : 1;
  });

  BudgetFlags cool_budget;
  cool_budget.budget = cooling_budget();
  auto* cool_cmd = app.add_subcommand("cool", "run the catalytic cooling protocol");
  cool_cmd->add_option("--state", state_text, "warm qubit, e.g. 0.9,0.1")->required();
  cool_cmd->add_option("--eps", eps, "target per-copy entropy in bits");
  cool_cmd->add_option("--pairs", pairs, "number of two-qubit blocks");
  cool_cmd->add_flag("--csv", csv, "emit the rate table as CSV");
  cool_budget.attach(cool_cmd);
  cool_cmd->callback([&] {
    DensityMatrix qubit = parse_state(state_text);
    if (csv) {
      std::cout << rate_csv(rate_table(qubit, eps, 2 * pairs));
      return;
    }
    auto report = cooling_run(qubit, eps, 2 * pairs, cool_budget.budget);
    Json j = to_json(report);
    j["rate_table"] = to_json(rate_table(qubit, eps, 2 * pairs));
    emit(j);
  });

  auto* trump_cmd = app.add_subcommand("trumping", "Renyi-grid trumping check");
  trump_cmd->add_option("a", a_text, "first distribution")->required();
  trump_cmd->add_option("b", b_text, "second distribution")->required();
  trump_cmd->add_flag("--csv", csv, "emit per-alpha rows as CSV");
  trump_cmd->callback([&] {
    auto verdict = trumping_check(parse_dist(a_text), parse_dist(b_text));
    if (csv)
      std::cout << trumping_csv(verdict);
    else
      emit(to_json(verdict));
    exit_code = verdict.pass ? 0 : 1;
  });

  auto* major_cmd = app.add_subcommand("majorize", "exact majorization check");
  major_cmd->add_option("a", a_text, "first distribution")->required();
  major_cmd->add_option("b", b_text, "second distribution")->required();
  major_cmd->callback([&] {
    bool result = majorizes(parse_dist(a_text).entries, parse_dist(b_text).entries);
    emit(Json{{"majorizes", result}});
    exit_code = result ? 0 : 1;
  });

  auto* scan_cmd = app.add_subcommand("scan-monotones", "entropy-monotone scan of a certificate");
  scan_cmd->add_option("cert", cert_path, "certificate JSON")->required();
  scan_cmd->add_flag("--csv", csv, "emit per-alpha rows as CSV");
  scan_cmd->callback([&] {
    auto scan = monotone_violation_scan(certificate_from_json(load_json(cert_path)));
    if (csv)
      std::cout << scan_csv(scan);
    else
      emit(to_json(scan));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
