#include <algorithm>
#include <chrono>
#include <functional>
#include <set>
#include <stdexcept>

#include "catcert/catalysis.hpp"
#include "catcert/exact_lp.hpp"

namespace catcert {

namespace {

using Clock = std::chrono::steady_clock;

Clock::time_point deadline_after(double seconds) {
  return Clock::now() +
         std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
}

bool same_multiset(const RVector& a, const RVector& b) {
  if (a.size() != b.size()) return false;
  std::vector<Rational> x(a.data(), a.data() + a.size());
  std::vector<Rational> y(b.data(), b.data() + b.size());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

// Partitions of total into exactly parts positive integers, descending.
void partitions_into(Eigen::Index total, Eigen::Index parts, Eigen::Index max_part,
                     std::vector<Eigen::Index>& current,
                     std::vector<std::vector<Eigen::Index>>& out) {
  if (parts == 0) {
    if (total == 0) out.push_back(current);
    return;
  }
  for (Eigen::Index first = std::min(max_part, total - (parts - 1)); first >= 1; --first) {
    if (first * parts < total) break;
    current.push_back(first);
    partitions_into(total - first, parts - 1, first, current, out);
    current.pop_back();
  }
}

std::vector<RVector> catalyst_candidates(Eigen::Index m, const SearchBudget& budget) {
  std::vector<RVector> out;
  std::set<std::vector<Rational>> seen;
  auto push = [&](RVector tau) {
    std::vector<Rational> key(tau.data(), tau.data() + tau.size());
    if (seen.insert(key).second) out.push_back(std::move(tau));
  };

  RVector uniform(m);
  for (Eigen::Index i = 0; i < m; ++i) uniform(i) = Rational(1, m);
  push(std::move(uniform));

  for (Eigen::Index q = m; q <= budget.max_denominator; ++q) {
    std::vector<std::vector<Eigen::Index>> parts;
    std::vector<Eigen::Index> current;
    partitions_into(q, m, q, current, parts);
    for (const auto& part : parts) {
      RVector tau(m);
      for (Eigen::Index i = 0; i < m; ++i) tau(i) = Rational(part[static_cast<std::size_t>(i)], q);
      push(std::move(tau));
    }
  }

  // Geometric profiles reach spread-out catalysts that small denominators
  // cannot express; useful once m grows past the partition range.
  for (const Rational& ratio : {Rational(1, 2), Rational(1, 3), Rational(2, 3), Rational(1, 4),
                                Rational(3, 4), Rational(4, 5)}) {
    RVector tau(m);
    Rational power = 1, sum = 0;
    for (Eigen::Index i = 0; i < m; ++i) {
      tau(i) = power;
      sum += power;
      power *= ratio;
    }
    for (Eigen::Index i = 0; i < m; ++i) tau(i) /= sum;
    push(std::move(tau));
  }
  return out;
}

// Decides whether some coupling r with marginals (p', tau) is majorized by
// v = p (x) tau, via exact LP feasibility with lazily separated top-k cuts.
std::optional<RVector> coupling_below(const RVector& p_prime, const RVector& tau,
                                      const RVector& v) {
  const Eigen::Index n = p_prime.size();
  const Eigen::Index m = tau.size();
  const Eigen::Index cells = n * m;

  std::vector<Rational> v_sorted(v.data(), v.data() + v.size());
  std::sort(v_sorted.begin(), v_sorted.end(), std::greater<>());
  std::vector<Rational> v_prefix(v_sorted.size());
  {
    Rational acc = 0;
    for (std::size_t k = 0; k < v_sorted.size(); ++k) {
      acc += v_sorted[k];
      v_prefix[k] = acc;
    }
  }

  struct Cut {
    std::vector<Eigen::Index> cells;
    Rational cap;
  };
  std::vector<Cut> cuts;

  for (int round = 0; round < 400; ++round) {
    const Eigen::Index rows = n + m + static_cast<Eigen::Index>(cuts.size());
    const Eigen::Index cols = cells + static_cast<Eigen::Index>(cuts.size());
    RMatrix a = RMatrix::Zero(rows, cols);
    RVector b(rows);
    for (Eigen::Index x = 0; x < n; ++x) {
      for (Eigen::Index z = 0; z < m; ++z) a(x, x * m + z) = 1;
      b(x) = p_prime(x);
    }
    for (Eigen::Index z = 0; z < m; ++z) {
      for (Eigen::Index x = 0; x < n; ++x) a(n + z, x * m + z) = 1;
      b(n + z) = tau(z);
    }
    for (std::size_t c = 0; c < cuts.size(); ++c) {
      Eigen::Index row = n + m + static_cast<Eigen::Index>(c);
      for (auto cell : cuts[c].cells) a(row, cell) = 1;
      a(row, cells + static_cast<Eigen::Index>(c)) = 1;  // slack
      b(row) = cuts[c].cap;
    }

    auto point = lp_feasible_point(a, b);
    if (!point) return std::nullopt;
    RVector r = point->head(cells);

    // Exact majorization check; a violated prefix becomes a new cut over
    // the currently largest cells.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(cells));
    for (Eigen::Index i = 0; i < cells; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index lhs, Eigen::Index rhs) { return r(lhs) > r(rhs); });
    Rational acc = 0;
    Eigen::Index violated = -1;
    for (Eigen::Index k = 0; k < cells; ++k) {
      acc += r(order[static_cast<std::size_t>(k)]);
      if (acc > v_prefix[static_cast<std::size_t>(k)]) {
        violated = k;
        break;
      }
    }
    if (violated < 0) return r;

    Cut cut;
    cut.cells.assign(order.begin(), order.begin() + violated + 1);
    std::sort(cut.cells.begin(), cut.cells.end());
    cut.cap = v_prefix[static_cast<std::size_t>(violated)];
    cuts.push_back(std::move(cut));
  }
  return std::nullopt;
}

void check_witness_preconditions(const ProbVector& p, const ProbVector& p_prime) {
  validate(p);
  validate(p_prime);
  if (p_prime.dim() != p.dim())
    throw std::invalid_argument("find_correlating_witness: dimension mismatch");
  if (same_multiset(p.entries, p_prime.entries))
    throw std::invalid_argument("find_correlating_witness: equal spectra are excluded");
  if (state_rank(p_prime.entries) < state_rank(p.entries))
    throw std::invalid_argument("find_correlating_witness: rank(p') < rank(p)");
  if (compare_shannon(p_prime.entries, p.entries) <= 0)
    throw std::invalid_argument("find_correlating_witness: S(p') must strictly exceed S(p)");
}

}  // namespace

std::optional<WitnessPair> find_correlating_witness(const ProbVector& p,
                                                    const ProbVector& p_prime,
                                                    const SearchBudget& budget) {
  check_witness_preconditions(p, p_prime);
  const auto deadline = deadline_after(budget.seconds);
  const Eigen::Index n = p.dim();

  // Dimension-1 catalyst: r = p' works exactly when p majorizes p'.
  if (majorizes(p.entries, p_prime.entries)) {
    RVector one(1);
    one(0) = 1;
    return WitnessPair{ProbVector(one), JointDist(p_prime.entries, {n, 1})};
  }

  for (Eigen::Index m = 2; m <= budget.max_catalyst_dim; ++m) {
    for (const RVector& tau : catalyst_candidates(m, budget)) {
      if (Clock::now() > deadline) return std::nullopt;
      RVector v = tensor_dist(p, ProbVector(tau)).entries;
      auto r = coupling_below(p_prime.entries, tau, v);
      if (!r) continue;
      WitnessPair witness{ProbVector(tau), JointDist(*r, {n, m})};
      validate_witness(p, p_prime, witness);
      return witness;
    }
  }
  return std::nullopt;
}

namespace {

// Exact search for an n x m table using each value of the multiset v once,
// with column sums fixed to the catalyst and row sums within eps (l1) of
// the target. Cells are filled row-major with marginal pruning.
struct TableSearch {
  Eigen::Index n, m;
  std::vector<Rational> values;  // distinct, descending
  std::vector<int> counts;
  RVector row_target;
  std::vector<Rational> col_rem;
  std::vector<Rational> row_sum;
  Rational eps;
  Rational slack_used = 0;
  std::vector<Eigen::Index> choice;  // distinct-value index per cell
  long nodes = 0;
  long node_cap = 2'000'000;
  Clock::time_point deadline;

  bool solve(Eigen::Index cell) {
    if (++nodes > node_cap || (nodes % 4096 == 0 && Clock::now() > deadline)) return false;
    if (cell == n * m) return true;
    Eigen::Index x = cell / m, z = cell % m;
    for (std::size_t vi = 0; vi < values.size(); ++vi) {
      if (counts[vi] == 0) continue;
      const Rational& w = values[vi];
      if (w > col_rem[static_cast<std::size_t>(z)]) continue;
      if (x == n - 1 && w != col_rem[static_cast<std::size_t>(z)]) continue;  // last row closes columns
      Rational new_row = row_sum[static_cast<std::size_t>(x)] + w;
      Rational extra_slack = 0;
      if (eps == 0) {
        if (new_row > row_target(x)) continue;
        if (z == m - 1 && new_row != row_target(x)) continue;
      } else {
        if (z == m - 1) {
          Rational gap = new_row - row_target(x);
          if (gap < 0) gap = -gap;
          extra_slack = gap;
          if (slack_used + extra_slack > eps) continue;
        } else if (new_row > row_target(x) + eps) {
          continue;
        }
      }

      counts[vi]--;
      col_rem[static_cast<std::size_t>(z)] -= w;
      row_sum[static_cast<std::size_t>(x)] = new_row;
      slack_used += extra_slack;
      choice[static_cast<std::size_t>(cell)] = static_cast<Eigen::Index>(vi);
      if (solve(cell + 1)) return true;
      slack_used -= extra_slack;
      row_sum[static_cast<std::size_t>(x)] = new_row - w;
      col_rem[static_cast<std::size_t>(z)] += w;
      counts[vi]++;
    }
    return false;
  }
};

// Pairs up equal-valued cells of the source and solution tables into a
// permutation of the sample space.
Permutation permutation_between(const RVector& source, const RVector& destination) {
  std::map<Rational, std::vector<Eigen::Index>> slots;
  for (Eigen::Index i = 0; i < destination.size(); ++i) slots[destination(i)].push_back(i);
  std::vector<Eigen::Index> image(static_cast<std::size_t>(source.size()));
  for (Eigen::Index i = 0; i < source.size(); ++i) {
    auto& list = slots.at(source(i));
    image[static_cast<std::size_t>(i)] = list.back();
    list.pop_back();
  }
  return Permutation(std::move(image));
}

TransitionCertificate conjecture_cert(const ProbVector& p, const ProbVector& p_prime,
                                      const ProbVector& catalyst, Permutation perm,
                                      const Rational& eps) {
  TransitionCertificate cert;
  cert.mode = CertMode::ClassicalConjecture;
  cert.input_c = p;
  cert.target_c = p_prime;
  cert.catalyst_c = as_joint(catalyst);
  cert.dynamics_perm = std::move(perm);
  cert.epsilon = eps;
  return cert;
}

}  // namespace

ConjectureSearchOutcome search_conjecture_certificate(const ProbVector& p,
                                                      const ProbVector& p_prime,
                                                      const SearchBudget& budget,
                                                      const Rational& epsilon) {
  validate(p);
  validate(p_prime);
  if (p_prime.dim() != p.dim())
    throw std::invalid_argument("search_conjecture_certificate: dimension mismatch");
  if (epsilon < 0) throw std::invalid_argument("negative epsilon");

  ConjectureSearchOutcome outcome;
  const auto deadline = deadline_after(budget.seconds);
  const Eigen::Index n = p.dim();

  if (p.entries == p_prime.entries) {
    auto cert = conjecture_cert(p, p_prime, uniform_dist(1), Permutation::identity(n), epsilon);
    verify_certificate(cert);
    outcome.certificate = std::move(cert);
    outcome.reason = "identity transition";
    return outcome;
  }
  if (same_multiset(p.entries, p_prime.entries)) {
    auto cert = conjecture_cert(p, p_prime, uniform_dist(1),
                                permutation_between(p.entries, p_prime.entries), epsilon);
    verify_certificate(cert);
    outcome.certificate = std::move(cert);
    outcome.reason = "target is a rearrangement of the input";
    return outcome;
  }

  if (epsilon == 0) {
    int cs = compare_shannon(p_prime.entries, p.entries);
    if (cs < 0) {
      outcome.provably_impossible = true;
      outcome.reason =
          "S(p') < S(p): additivity and subadditivity of the Shannon entropy force "
          "S(p') >= S(p) for any exactly returned catalyst";
      return outcome;
    }
    if (cs == 0) {
      outcome.provably_impossible = true;
      outcome.reason = "S(p') = S(p) with different spectra is impossible exactly";
      return outcome;
    }
    if (state_rank(p_prime.entries) < state_rank(p.entries)) {
      outcome.provably_impossible = true;
      outcome.reason = "rank(p') < rank(p) is impossible for exact permutation transitions";
      return outcome;
    }
  }

  for (Eigen::Index m = 1; m <= budget.max_catalyst_dim; ++m) {
    for (const RVector& tau : catalyst_candidates(m, budget)) {
      if (Clock::now() > deadline) {
        outcome.reason = "budget exhausted";
        return outcome;
      }
      JointDist v = tensor_dist(p, ProbVector(tau));
      if (common_denominator(v.entries) > budget.max_atoms) continue;

      TableSearch search;
      search.n = n;
      search.m = m;
      search.deadline = deadline;
      search.eps = epsilon;
      search.row_target = p_prime.entries;
      search.row_sum.assign(static_cast<std::size_t>(n), Rational(0));
      search.col_rem.assign(tau.data(), tau.data() + tau.size());
      search.choice.assign(static_cast<std::size_t>(n * m), 0);
      {
        std::map<Rational, int, std::greater<>> histogram;
        for (Eigen::Index i = 0; i < v.dim(); ++i) histogram[v.entries(i)]++;
        for (const auto& [value, count] : histogram) {
          search.values.push_back(value);
          search.counts.push_back(count);
        }
      }
      if (!search.solve(0)) continue;

      RVector table(n * m);
      for (Eigen::Index i = 0; i < n * m; ++i)
        table(i) = search.values[static_cast<std::size_t>(search.choice[static_cast<std::size_t>(i)])];
      auto cert = conjecture_cert(p, p_prime, ProbVector(tau),
                                  permutation_between(v.entries, table), epsilon);
      VerificationReport report = verify_certificate(cert);
      if (!report.pass)
        throw std::runtime_error("search_conjecture_certificate: internal verification failure");
      outcome.certificate = std::move(cert);
      outcome.reason = "found";
      return outcome;
    }
  }
  outcome.reason = "budget exhausted";
  return outcome;
}

}  // namespace catcert
