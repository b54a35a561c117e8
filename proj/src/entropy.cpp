#include "catcert/entropy.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace catcert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double unit_scale(Units units) { return units == Units::Bits ? 1.0 / std::log(2.0) : 1.0; }

// Clamp float spectra: tiny negatives (within kTolPsd) go to zero.
RealVector clamp_spectrum(const RealVector& spectrum) {
  RealVector out = spectrum;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out(i) < -kTolPsd) throw std::invalid_argument("spectrum has a negative eigenvalue");
    if (out(i) < 0) out(i) = 0.0;
  }
  return out;
}

}  // namespace

Eigen::Index state_rank(const RealVector& spectrum) {
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i)
    if (spectrum(i) > kTolRank) ++r;
  return r;
}

Eigen::Index state_rank(const RVector& entries) {
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < entries.size(); ++i)
    if (entries(i) != 0) ++r;
  return r;
}

EntropyValue renyi_entropy(const RealVector& spectrum, double alpha, Units units) {
  RealVector p = clamp_spectrum(spectrum);
  double scale = unit_scale(units);
  EntropyValue out;
  out.units = units;
  out.alpha = alpha;

  Eigen::Index rank = state_rank(p);
  if (rank == 0) throw std::invalid_argument("zero state");
  double lmax = p.maxCoeff();

  if (alpha == 0.0) {
    out.value = std::log(static_cast<double>(rank)) * scale;
  } else if (alpha == 1.0) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i)
      if (p(i) > 0) s -= p(i) * std::log(p(i));
    out.value = s * scale;
  } else if (alpha == kInf) {
    out.value = -std::log(lmax) * scale;
  } else if (alpha == -kInf) {
    if (rank < p.size()) {
      out.infinite = true;
      out.value = kInf;
    } else {
      double lmin = p.minCoeff();
      out.value = -std::log(lmin) * scale;
    }
  } else if (alpha < 0.0 && rank < p.size()) {
    out.infinite = true;
    out.value = kInf;
  } else {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i)
      if (p(i) > 0) sum += std::pow(p(i), alpha);
    out.value = std::log(sum) / (1.0 - alpha) * scale;
  }
  return out;
}

EntropyValue renyi_entropy(const DensityMatrix& rho, double alpha, Units units) {
  return renyi_entropy(eigenvalues_of(rho), alpha, units);
}

EntropyValue renyi_entropy(const ProbVector& p, double alpha, Units units) {
  validate(p);
  // Rank decisions are exact for rationals; the zero pattern survives the
  // conversion to double, so the float path gives the same branch.
  return renyi_entropy(to_double_vector(p.entries), alpha, units);
}

double shannon_entropy(const RealVector& spectrum, Units units) {
  return renyi_entropy(spectrum, 1.0, units).value;
}

double shannon_entropy(const ProbVector& p, Units units) {
  return renyi_entropy(p, 1.0, units).value;
}

double vn_entropy(const DensityMatrix& rho, Units units) {
  return renyi_entropy(rho, 1.0, units).value;
}

double negentropy(const DensityMatrix& rho) {
  return std::log(static_cast<double>(rho.dim())) - vn_entropy(rho);
}

double negentropy(const ProbVector& p) {
  return std::log(static_cast<double>(p.dim())) - shannon_entropy(p);
}

int compare_shannon(const RVector& a, const RVector& b) {
  using BF = boost::multiprecision::cpp_bin_float_50;
  auto entropy = [](const RVector& v) {
    BF s = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (v(i) == 0) continue;
      BF p = BF(numerator(v(i))) / BF(denominator(v(i)));
      s -= p * boost::multiprecision::log(p);
    }
    return s;
  };
  BF diff = entropy(a) - entropy(b);
  BF eps("1e-45");
  if (diff > eps) return 1;
  if (diff < -eps) return -1;
  return 0;
}

namespace {

template <typename Vec, typename Scalar>
bool majorizes_impl(const Vec& x, const Vec& y, const Scalar& slack) {
  Eigen::Index n = std::max(x.size(), y.size());
  std::vector<Scalar> xs(static_cast<std::size_t>(n), Scalar(0));
  std::vector<Scalar> ys(static_cast<std::size_t>(n), Scalar(0));
  for (Eigen::Index i = 0; i < x.size(); ++i) xs[static_cast<std::size_t>(i)] = x(i);
  for (Eigen::Index i = 0; i < y.size(); ++i) ys[static_cast<std::size_t>(i)] = y(i);
  std::sort(xs.begin(), xs.end(), std::greater<>());
  std::sort(ys.begin(), ys.end(), std::greater<>());
  Scalar sx(0), sy(0);
  for (Eigen::Index k = 0; k < n; ++k) {
    sx += xs[static_cast<std::size_t>(k)];
    sy += ys[static_cast<std::size_t>(k)];
    if (sx < sy - slack) return false;
  }
  return true;
}

}  // namespace

bool majorizes(const RVector& x, const RVector& y) {
  Rational sx = 0, sy = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) sx += x(i);
  for (Eigen::Index i = 0; i < y.size(); ++i) sy += y(i);
  if (sx != 1 || sy != 1) throw std::invalid_argument("majorizes: inputs must sum to 1");
  return majorizes_impl(x, y, Rational(0));
}

bool majorizes(const RealVector& x, const RealVector& y, double slack) {
  if (std::abs(x.sum() - 1.0) > 1e-8 || std::abs(y.sum() - 1.0) > 1e-8)
    throw std::invalid_argument("majorizes: inputs must sum to 1");
  return majorizes_impl(x, y, slack);
}

bool majorizes_unnormalized(const RVector& x, const RVector& y) {
  Rational sx = 0, sy = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) sx += x(i);
  for (Eigen::Index i = 0; i < y.size(); ++i) sy += y(i);
  if (sx != sy) throw std::invalid_argument("majorizes_unnormalized: sums differ");
  return majorizes_impl(x, y, Rational(0));
}

const std::vector<double>& default_alpha_grid() {
  static const std::vector<double> grid = {-kInf, -4.0, -2.0, -1.0, -0.5, 0.0,
                                           0.5,   1.0,  2.0,  4.0,  kInf};
  return grid;
}

TrumpingVerdict trumping_check(const RealVector& before, const RealVector& after,
                               const std::vector<double>& extra_alphas) {
  if (before.size() != after.size())
    throw std::invalid_argument("trumping_check: dimension mismatch");
  TrumpingVerdict verdict;
  verdict.alpha_grid = default_alpha_grid();
  verdict.alpha_grid.insert(verdict.alpha_grid.end(), extra_alphas.begin(), extra_alphas.end());
  for (double alpha : verdict.alpha_grid) {
    EntropyValue sb = renyi_entropy(before, alpha);
    EntropyValue sa = renyi_entropy(after, alpha);
    bool ok;
    if (sb.infinite)
      ok = sa.infinite;  // +inf >= +inf; finite < +inf is a violation
    else if (sa.infinite)
      ok = true;
    else
      ok = sa.value >= sb.value - kTolMajor;
    verdict.rows.push_back({alpha, sb, sa});
    if (!ok) verdict.violations.push_back({alpha, sb, sa});
  }
  verdict.pass = verdict.violations.empty();
  return verdict;
}

TrumpingVerdict trumping_check(const DensityMatrix& rho, const DensityMatrix& rho_prime,
                               const std::vector<double>& extra_alphas) {
  return trumping_check(eigenvalues_of(rho), eigenvalues_of(rho_prime), extra_alphas);
}

TrumpingVerdict trumping_check(const ProbVector& p, const ProbVector& p_prime,
                               const std::vector<double>& extra_alphas) {
  validate(p);
  validate(p_prime);
  return trumping_check(to_double_vector(p.entries), to_double_vector(p_prime.entries),
                        extra_alphas);
}

}  // namespace catcert
