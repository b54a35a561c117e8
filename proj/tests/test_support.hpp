#pragma once

// Shared generators and independent oracles for the test suites. The
// oracles deliberately avoid the library's own code paths: entropies are
// direct summations, majorization is the raw partial-sum definition.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "catcert/classical.hpp"
#include "catcert/constructions.hpp"
#include "catcert/quantum.hpp"

namespace catcert::testing {

using Rng = std::mt19937_64;

inline CMatrix random_gaussian_complex(Rng& rng, Eigen::Index d) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix m(d, d);
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index r = 0; r < d; ++r) m(r, c) = Complex(gauss(rng), gauss(rng));
  return m;
}

inline CMatrix random_unitary(Rng& rng, Eigen::Index d) {
  CMatrix g = random_gaussian_complex(rng, d);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < d; ++i) {
    Complex diag = r(i, i);
    if (std::abs(diag) > 1e-12) q.col(i) *= diag / std::abs(diag);
  }
  return q;
}

inline RealVector random_spectrum(Rng& rng, Eigen::Index d) {
  std::exponential_distribution<double> expd(1.0);
  RealVector v(d);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    v(i) = expd(rng);
    sum += v(i);
  }
  v /= sum;
  std::sort(v.data(), v.data() + d, std::greater<>());
  return v;
}

inline DensityMatrix random_density(Rng& rng, Eigen::Index d) {
  RealVector spec = random_spectrum(rng, d);
  CMatrix u = random_unitary(rng, d);
  CMatrix m = u * spec.asDiagonal().toDenseMatrix().cast<Complex>() * u.adjoint();
  return density_matrix(0.5 * (m + m.adjoint()), {d});
}

// Random exact distribution with common denominator <= max_den.
inline ProbVector random_rational_dist(Rng& rng, Eigen::Index dim, Eigen::Index max_den,
                                       bool full_support = false) {
  std::uniform_int_distribution<Eigen::Index> den_pick(full_support ? std::max<Eigen::Index>(dim, 2) : 2,
                                                       max_den);
  for (;;) {
    Eigen::Index den = den_pick(rng);
    std::vector<Eigen::Index> counts(static_cast<std::size_t>(dim), full_support ? 1 : 0);
    Eigen::Index remaining = den - (full_support ? dim : 0);
    if (remaining < 0) continue;
    std::uniform_int_distribution<Eigen::Index> slot(0, dim - 1);
    for (Eigen::Index k = 0; k < remaining; ++k) counts[static_cast<std::size_t>(slot(rng))]++;
    RVector entries(dim);
    bool ok = true;
    for (Eigen::Index i = 0; i < dim; ++i) {
      entries(i) = Rational(counts[static_cast<std::size_t>(i)], den);
      if (full_support && entries(i) == 0) ok = false;
    }
    if (!ok) continue;
    Rational sum = 0;
    for (Eigen::Index i = 0; i < dim; ++i) sum += entries(i);
    if (sum != 1) continue;
    return ProbVector(std::move(entries));
  }
}

// y obtained from x by random exact T-transforms: x majorizes y by
// construction, positions deliberately scrambled.
inline RVector random_majorized_below(Rng& rng, const RVector& x, int steps) {
  RVector y = x;
  std::uniform_int_distribution<Eigen::Index> pick(0, x.size() - 1);
  std::uniform_int_distribution<int> num(0, 16);
  for (int s = 0; s < steps; ++s) {
    Eigen::Index i = pick(rng), j = pick(rng);
    if (i == j) continue;
    Rational t(num(rng), 16);
    Rational yi = y(i), yj = y(j);
    y(i) = (Rational(1) - t) * yi + t * yj;
    y(j) = t * yi + (Rational(1) - t) * yj;
  }
  return y;
}

inline RealVector random_majorized_below(Rng& rng, const RealVector& x, int steps) {
  RealVector y = x;
  std::uniform_int_distribution<Eigen::Index> pick(0, x.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int s = 0; s < steps; ++s) {
    Eigen::Index i = pick(rng), j = pick(rng);
    if (i == j) continue;
    double t = unit(rng);
    double yi = y(i), yj = y(j);
    y(i) = (1.0 - t) * yi + t * yj;
    y(j) = t * yi + (1.0 - t) * yj;
  }
  return y;
}

// Independent oracles.

inline double shannon_oracle_nats(const std::vector<double>& p) {
  double s = 0.0;
  for (double v : p)
    if (v > 1e-15) s -= v * std::log(v);
  return s;
}

inline double shannon_oracle_nats(const RVector& p) {
  std::vector<double> v;
  for (Eigen::Index i = 0; i < p.size(); ++i) v.push_back(to_double(p(i)));
  return shannon_oracle_nats(v);
}

inline bool majorize_oracle(std::vector<Rational> a, std::vector<Rational> b) {
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

inline Eigen::Index rank_oracle(const RVector& p) {
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p(i) != 0) ++r;
  return r;
}

}  // namespace catcert::testing
