#include "catcert/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "catcert/entropy.hpp"

namespace catcert {

Basis computational_basis(Eigen::Index d) {
  if (d < 1) throw std::invalid_argument("basis dimension must be >= 1");
  return Basis{CMatrix::Identity(d, d)};
}

Basis basis_from_unitary(CMatrix kets) {
  if (!is_unitary(kets)) throw std::invalid_argument("basis columns are not orthonormal");
  return Basis{std::move(kets)};
}

CMatrix decohere(const CMatrix& m, const Basis& basis) {
  if (m.rows() != basis.dim() || m.cols() != basis.dim())
    throw std::invalid_argument("decohere: dimension mismatch");
  const CMatrix& b = basis.kets;
  CMatrix in_basis = b.adjoint() * m * b;
  CMatrix pinched = in_basis.diagonal().asDiagonal();
  return b * pinched * b.adjoint();
}

DensityMatrix decohere(const DensityMatrix& rho, const Basis& basis) {
  return DensityMatrix{decohere(rho.mat, basis), rho.shape};
}

std::vector<CMatrix> clock_unitary_basis(Eigen::Index d) {
  if (d < 1) throw std::invalid_argument("clock basis dimension must be >= 1");
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index j = 0; j < d; ++j) {
    CMatrix u = CMatrix::Zero(d, d);
    for (Eigen::Index m = 0; m < d; ++m) {
      double phase = 2.0 * std::numbers::pi * static_cast<double>(m) * static_cast<double>(j) /
                     static_cast<double>(d);
      u(m, m) = Complex(std::cos(phase), std::sin(phase));
    }
    out.push_back(std::move(u));
  }
  return out;
}

CMatrix dephasing_dilation(Eigen::Index d, const Basis& basis) {
  if (basis.dim() != d) throw std::invalid_argument("dephasing_dilation: basis dimension mismatch");
  auto clocks = clock_unitary_basis(d);
  CMatrix v = CMatrix::Zero(d * d, d * d);
  for (Eigen::Index j = 0; j < d; ++j) {
    CMatrix proj = basis.kets.col(j) * basis.kets.col(j).adjoint();
    v += kron(proj, clocks[static_cast<std::size_t>(j)]);
  }
  return v;
}

RVector apply_chain(const TTransformChain& chain, RVector v) {
  for (const auto& tt : chain) {
    Rational vi = v(tt.i), vj = v(tt.j);
    v(tt.i) = (Rational(1) - tt.t) * vi + tt.t * vj;
    v(tt.j) = tt.t * vi + (Rational(1) - tt.t) * vj;
  }
  return v;
}

namespace {

bool multiset_majorizes(std::vector<Rational> a, std::vector<Rational> b) {
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  Rational sa = 0, sb = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    sa += a[k];
    sb += b[k];
    if (sa < sb) return false;
  }
  return sa == sb;
}

// Depth-first construction of a positional T-transform chain. Every move
// finalizes the target value at one position; the partner choice is
// backtracked over, pruned by multiset majorization of the remaining
// positions.
struct ChainSearch {
  std::vector<Rational> v;
  const RVector& y;
  std::vector<Eigen::Index> active;
  TTransformChain chain;
  long nodes = 0;
  static constexpr long kNodeCap = 500'000;

  explicit ChainSearch(const RVector& x, const RVector& target) : y(target) {
    v.assign(x.data(), x.data() + x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) active.push_back(i);
  }

  bool residual_ok(const std::vector<Eigen::Index>& act) const {
    std::vector<Rational> a, b;
    a.reserve(act.size());
    b.reserve(act.size());
    for (auto i : act) {
      a.push_back(v[static_cast<std::size_t>(i)]);
      b.push_back(y(i));
    }
    return multiset_majorizes(std::move(a), std::move(b));
  }

  bool solve() {
    if (++nodes > kNodeCap) throw std::runtime_error("hlp_chain: search budget exhausted");

    std::vector<Eigen::Index> act;
    for (auto i : active)
      if (v[static_cast<std::size_t>(i)] != y(i)) act.push_back(i);
    if (act.empty()) return true;
    if (!residual_ok(act)) return false;

    if (act.size() == 2) {
      Eigen::Index a = act[0], b = act[1];
      Rational va = v[static_cast<std::size_t>(a)], vb = v[static_cast<std::size_t>(b)];
      if (va == vb) return false;  // both differ from targets yet sums match
      Rational t = (va - y(a)) / (va - vb);
      if (t < 0 || t > 1) return false;
      chain.push_back({a, b, t});
      v[static_cast<std::size_t>(a)] = y(a);
      v[static_cast<std::size_t>(b)] = va + vb - y(a);
      return true;
    }

    struct Move {
      Eigen::Index m, b;
      Rational t;
      Rational new_b;
      bool double_lock;
      Rational gap;  // |v_b - y_m|, tighter brackets first
    };
    std::vector<Move> moves;
    for (auto m : act) {
      Rational vm = v[static_cast<std::size_t>(m)];
      Rational ym = y(m);
      for (auto b : act) {
        if (b == m) continue;
        Rational vb = v[static_cast<std::size_t>(b)];
        if (vm == vb) continue;
        bool bracket = (vm >= ym && vb <= ym) || (vm <= ym && vb >= ym);
        if (!bracket) continue;
        Rational t = (vm - ym) / (vm - vb);
        Rational nb = vm + vb - ym;
        Rational gap = vb - ym;
        if (gap < 0) gap = -gap;
        moves.push_back({m, b, t, nb, nb == y(b), gap});
      }
    }
    std::sort(moves.begin(), moves.end(), [&](const Move& lhs, const Move& rhs) {
      if (lhs.double_lock != rhs.double_lock) return lhs.double_lock;
      if (y(lhs.m) != y(rhs.m)) return y(lhs.m) > y(rhs.m);
      if (lhs.gap != rhs.gap) return lhs.gap < rhs.gap;
      if (lhs.m != rhs.m) return lhs.m < rhs.m;
      return lhs.b < rhs.b;
    });

    std::vector<Eigen::Index> saved_active = active;
    for (const auto& mv : moves) {
      Rational vm = v[static_cast<std::size_t>(mv.m)];
      Rational vb = v[static_cast<std::size_t>(mv.b)];
      v[static_cast<std::size_t>(mv.m)] = y(mv.m);
      v[static_cast<std::size_t>(mv.b)] = mv.new_b;
      chain.push_back({mv.m, mv.b, mv.t});
      active = act;
      active.erase(std::remove(active.begin(), active.end(), mv.m), active.end());
      if (solve()) return true;
      chain.pop_back();
      v[static_cast<std::size_t>(mv.m)] = vm;
      v[static_cast<std::size_t>(mv.b)] = vb;
      active = saved_active;
    }
    return false;
  }
};

}  // namespace

TTransformChain hlp_chain(const RVector& x, const RVector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("hlp_chain: dimension mismatch");
  std::vector<Rational> a(x.data(), x.data() + x.size());
  std::vector<Rational> b(y.data(), y.data() + y.size());
  if (!multiset_majorizes(a, b))
    throw std::invalid_argument("hlp_chain: x does not majorize y");

  ChainSearch search(x, y);
  if (!search.solve()) throw std::runtime_error("hlp_chain: no chain found");
  if (static_cast<Eigen::Index>(search.chain.size()) >= x.size() && x.size() > 0)
    throw std::runtime_error("hlp_chain: chain longer than n-1");
  // Exact replay check.
  RVector replay = apply_chain(search.chain, x);
  for (Eigen::Index i = 0; i < y.size(); ++i)
    if (replay(i) != y(i)) throw std::runtime_error("hlp_chain: replay mismatch");
  return search.chain;
}

RVector mixed_action(const ControlledPermutation& cp, const RVector& v) {
  RVector acc = RVector::Zero(v.size());
  for (const auto& p : cp.branches) {
    if (p.size() != v.size()) throw std::invalid_argument("mixed_action: size mismatch");
    for (Eigen::Index i = 0; i < v.size(); ++i) acc(p(i)) += v(i);
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) acc(i) /= Rational(cp.control_dim);
  return acc;
}

ControlledPermutation chain_to_controlled_permutation(const TTransformChain& chain,
                                                      Eigen::Index dim) {
  // Weight map over distinct permutations, composed stage by stage.
  std::map<std::vector<Eigen::Index>, Rational> weights;
  weights[Permutation::identity(dim).image] = 1;
  for (const auto& tt : chain) {
    if (tt.t < 0 || tt.t > 1) throw std::invalid_argument("chain weight outside [0, 1]");
    if (tt.i < 0 || tt.i >= dim || tt.j < 0 || tt.j >= dim)
      throw std::invalid_argument("chain index outside dimension");
    std::map<std::vector<Eigen::Index>, Rational> next;
    for (const auto& [img, w] : weights) {
      if (tt.t < 1) next[img] += w * (Rational(1) - tt.t);
      if (tt.t > 0) {
        // transposition after the accumulated permutation
        std::vector<Eigen::Index> swapped = img;
        for (auto& target : swapped) {
          if (target == tt.i)
            target = tt.j;
          else if (target == tt.j)
            target = tt.i;
        }
        next[swapped] += w * tt.t;
      }
    }
    weights = std::move(next);
  }

  BigInt control = 1;
  for (const auto& [img, w] : weights) control = lcm(control, denominator(w));
  if (control > kMaxControlDim)
    throw std::runtime_error("chain_to_controlled_permutation: control dimension " +
                             control.str() + " exceeds cap");

  ControlledPermutation cp;
  cp.control_dim = control.convert_to<Eigen::Index>();
  for (const auto& [img, w] : weights) {
    BigInt copies = numerator(w * Rational(control));
    for (BigInt c = 0; c < copies; ++c) cp.branches.push_back(Permutation(img));
  }
  return cp;
}

Permutation assemble_controlled_permutation(const ControlledPermutation& cp) {
  if (cp.branches.size() != static_cast<std::size_t>(cp.control_dim))
    throw std::invalid_argument("controlled permutation branch count != control dimension");
  Eigen::Index dim = cp.branches.empty() ? 0 : cp.branches.front().size();
  std::vector<Eigen::Index> image(static_cast<std::size_t>(cp.control_dim * dim));
  for (Eigen::Index c = 0; c < cp.control_dim; ++c) {
    const Permutation& p = cp.branches[static_cast<std::size_t>(c)];
    if (p.size() != dim) throw std::invalid_argument("controlled permutation branch size mismatch");
    for (Eigen::Index k = 0; k < dim; ++k)
      image[static_cast<std::size_t>(c * dim + k)] = c * dim + p(k);
  }
  return Permutation(std::move(image));
}

namespace {

// Exact repair of float rounding: returns y' with sum(y') = sum(x),
// x >= y' exactly, and |y' - y| bounded by the input violation.
RVector exact_majorized_target(const RVector& x, const RVector& y) {
  Eigen::Index n = x.size();
  std::vector<Rational> xs(x.data(), x.data() + n);
  std::sort(xs.begin(), xs.end(), std::greater<>());

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (y(a) != y(b)) return y(a) > y(b);
    return a < b;
  });

  Rational sum_x = 0, sum_y = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    sum_x += x(i);
    sum_y += y(i);
  }

  // Prefix sums A of sorted x and B of sorted y (with the sum mismatch
  // folded into the largest y entry); C = min(A, B) is concave, so its
  // increments form the repaired sorted target.
  std::vector<Rational> repaired(static_cast<std::size_t>(n));
  Rational a = 0, b = sum_x - sum_y, c_prev = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    a += xs[static_cast<std::size_t>(k)];
    b += y(order[static_cast<std::size_t>(k)]);
    Rational c = std::min(a, b);
    repaired[static_cast<std::size_t>(k)] = c - c_prev;
    c_prev = c;
  }

  RVector out(n);
  for (Eigen::Index k = 0; k < n; ++k) out(order[static_cast<std::size_t>(k)]) = repaired[static_cast<std::size_t>(k)];
  return out;
}

}  // namespace

CMatrix schur_horn_unitary(const RealVector& spectrum, const RealVector& target_diag) {
  Eigen::Index n = spectrum.size();
  if (target_diag.size() != n) throw std::invalid_argument("schur_horn_unitary: dimension mismatch");
  if (std::abs(spectrum.sum() - target_diag.sum()) > 1e-9)
    throw std::invalid_argument("schur_horn_unitary: sums differ");

  RVector x(n), y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x(i) = rational_from_double_exact(spectrum(i));
    y(i) = rational_from_double_exact(target_diag(i));
  }
  {
    // Precondition: majorization within kTolMajor (exact up to float slack).
    std::vector<Rational> a(x.data(), x.data() + n), b(y.data(), y.data() + n);
    std::sort(a.begin(), a.end(), std::greater<>());
    std::sort(b.begin(), b.end(), std::greater<>());
    Rational slack = rational_from_double_exact(kTolMajor);
    Rational sa = 0, sb = 0;
    for (Eigen::Index k = 0; k < n; ++k) {
      sa += a[static_cast<std::size_t>(k)];
      sb += b[static_cast<std::size_t>(k)];
      if (sa < sb - slack)
        throw std::invalid_argument("schur_horn_unitary: spectrum does not majorize target");
    }
  }

  RVector y_fixed = exact_majorized_target(x, y);
  TTransformChain chain = hlp_chain(x, y_fixed);

  CMatrix u = CMatrix::Identity(n, n);
  for (const auto& tt : chain) {
    double t = to_double(tt.t);
    double c = std::sqrt(1.0 - t), s = std::sqrt(t);
    CMatrix g = CMatrix::Identity(n, n);
    g(tt.i, tt.i) = c;
    g(tt.i, tt.j) = s;
    g(tt.j, tt.i) = -s;
    g(tt.j, tt.j) = c;
    u = g * u;
  }

  CMatrix lambda = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) lambda(i, i) = spectrum(i);
  CMatrix realized = u * lambda * u.adjoint();
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(realized(i, i).real() - target_diag(i)) > 1e-8 ||
        std::abs(realized(i, i).imag()) > 1e-8)
      throw std::runtime_error("schur_horn_unitary: diagonal residual exceeds 1e-8");
  return u;
}

}  // namespace catcert
