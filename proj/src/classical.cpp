#include "catcert/classical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace catcert {

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
}

std::string format_rational(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational rational_from_double_exact(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
  return Rational(x);
}

Rational rational_approx(double x, const BigInt& max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
  if (max_den < 1) throw std::invalid_argument("max_den must be >= 1");
  // Continued-fraction convergents h/k of the exact binary value of x; the
  // last convergent with denominator <= max_den is kept.
  BigInt h_prev = 1, h_prev2 = 0;  // h_{-1}, h_{-2}
  BigInt k_prev = 0, k_prev2 = 1;  // k_{-1}, k_{-2}
  Rational rem = rational_from_double_exact(x);
  BigInt best_num = 0, best_den = 1;
  for (int iter = 0; iter < 256; ++iter) {
    BigInt a = numerator(rem) / denominator(rem);
    if (rem < 0 && a * denominator(rem) != numerator(rem)) a -= 1;  // floor
    BigInt h = a * h_prev + h_prev2;
    BigInt k = a * k_prev + k_prev2;
    if (k > max_den) break;
    best_num = h;
    best_den = k;
    h_prev2 = h_prev; h_prev = h;
    k_prev2 = k_prev; k_prev = k;
    Rational frac = rem - Rational(a);
    if (frac == 0) break;
    rem = Rational(1) / frac;
  }
  return Rational(best_num, best_den);
}

BigInt lcm(const BigInt& a, const BigInt& b) { return boost::multiprecision::lcm(a, b); }

BigInt common_denominator(const RVector& v) {
  BigInt l = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) l = lcm(l, denominator(v(i)));
  return l;
}

Permutation Permutation::identity(Eigen::Index n) {
  std::vector<Eigen::Index> img(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = i;
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<Eigen::Index> inv(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) inv[static_cast<std::size_t>(image[i])] = static_cast<Eigen::Index>(i);
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (size() != other.size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<Eigen::Index> img(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) img[i] = image[static_cast<std::size_t>(other.image[i])];
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < image.size(); ++i)
    if (image[i] != static_cast<Eigen::Index>(i)) return false;
  return true;
}

void validate(const Permutation& p) {
  std::vector<bool> hit(p.image.size(), false);
  for (auto t : p.image) {
    if (t < 0 || t >= p.size() || hit[static_cast<std::size_t>(t)])
      throw std::invalid_argument("permutation image is not a bijection");
    hit[static_cast<std::size_t>(t)] = true;
  }
}

namespace {

void check_distribution(const RVector& e) {
  Rational sum = 0;
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    if (e(i) < 0) throw std::invalid_argument("negative probability entry");
    sum += e(i);
  }
  if (sum != 1) throw std::invalid_argument("probabilities do not sum to 1");
}

}  // namespace

void validate(const ProbVector& p) {
  if (p.dim() == 0) throw std::invalid_argument("empty distribution");
  check_distribution(p.entries);
}

void validate(const JointDist& j) {
  if (j.shape.empty()) throw std::invalid_argument("joint distribution needs at least one subsystem");
  for (auto d : j.shape)
    if (d < 1) throw std::invalid_argument("subsystem dimension must be >= 1");
  if (shape_product(j.shape) != j.dim())
    throw std::invalid_argument("flat length does not match shape product");
  check_distribution(j.entries);
}

ProbVector prob_vector(std::initializer_list<Rational> entries) {
  RVector e(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (const auto& r : entries) e(i++) = r;
  return ProbVector(std::move(e));
}

ProbVector uniform_dist(Eigen::Index d) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  RVector e(d);
  for (Eigen::Index i = 0; i < d; ++i) e(i) = Rational(1, d);
  return ProbVector(std::move(e));
}

JointDist as_joint(const ProbVector& p) { return JointDist(p.entries, {p.dim()}); }

Eigen::Index shape_product(const std::vector<Eigen::Index>& shape) {
  Eigen::Index n = 1;
  for (auto d : shape) n *= d;
  return n;
}

JointDist tensor_dist(const JointDist& a, const JointDist& b) {
  RVector e(a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i)
    for (Eigen::Index j = 0; j < b.dim(); ++j) e(i * b.dim() + j) = a.entries(i) * b.entries(j);
  std::vector<Eigen::Index> shape = a.shape;
  shape.insert(shape.end(), b.shape.begin(), b.shape.end());
  return JointDist(std::move(e), std::move(shape));
}

JointDist tensor_dist(const ProbVector& a, const ProbVector& b) { return tensor_dist(as_joint(a), as_joint(b)); }
JointDist tensor_dist(const ProbVector& a, const JointDist& b) { return tensor_dist(as_joint(a), b); }
JointDist tensor_dist(const JointDist& a, const ProbVector& b) { return tensor_dist(a, as_joint(b)); }

namespace {

// Strides for row-major flattening with subsystem 0 slowest.
std::vector<Eigen::Index> strides_of(const std::vector<Eigen::Index>& shape) {
  std::vector<Eigen::Index> s(shape.size());
  Eigen::Index acc = 1;
  for (std::size_t k = shape.size(); k-- > 0;) {
    s[k] = acc;
    acc *= shape[k];
  }
  return s;
}

}  // namespace

JointDist marginalize(const JointDist& j, const std::set<Eigen::Index>& keep) {
  if (keep.empty()) throw std::invalid_argument("cannot marginalize onto zero subsystems");
  for (auto k : keep)
    if (k < 0 || k >= j.subsystems()) throw std::invalid_argument("keep index out of range");

  std::vector<Eigen::Index> kept(keep.begin(), keep.end());
  std::vector<Eigen::Index> out_shape;
  for (auto k : kept) out_shape.push_back(j.shape[static_cast<std::size_t>(k)]);

  auto in_strides = strides_of(j.shape);
  auto out_strides = strides_of(out_shape);

  RVector out = RVector::Zero(shape_product(out_shape));
  for (Eigen::Index flat = 0; flat < j.dim(); ++flat) {
    Eigen::Index rem = flat, target = 0;
    for (std::size_t s = 0; s < j.shape.size(); ++s) {
      Eigen::Index idx = rem / in_strides[s];
      rem %= in_strides[s];
      auto pos = std::find(kept.begin(), kept.end(), static_cast<Eigen::Index>(s));
      if (pos != kept.end()) target += idx * out_strides[static_cast<std::size_t>(pos - kept.begin())];
    }
    out(target) += j.entries(flat);
  }
  return JointDist(std::move(out), std::move(out_shape));
}

ProbVector marginal(const JointDist& j, Eigen::Index subsystem) {
  return ProbVector(marginalize(j, {subsystem}).entries);
}

JointDist apply_permutation(const Permutation& p, const JointDist& j) {
  if (p.size() != j.dim()) throw std::invalid_argument("permutation size does not match distribution");
  RVector out(j.dim());
  for (Eigen::Index i = 0; i < j.dim(); ++i) out(p(i)) = j.entries(i);
  return JointDist(std::move(out), j.shape);
}

ProbVector apply_permutation(const Permutation& p, const ProbVector& v) {
  if (p.size() != v.dim()) throw std::invalid_argument("permutation size does not match distribution");
  RVector out(v.dim());
  for (Eigen::Index i = 0; i < v.dim(); ++i) out(p(i)) = v.entries(i);
  return ProbVector(std::move(out));
}

Permutation cycle_shift(Eigen::Index d, Eigen::Index power) {
  if (d < 1) throw std::invalid_argument("cycle dimension must be >= 1");
  std::vector<Eigen::Index> img(static_cast<std::size_t>(d));
  Eigen::Index shift = ((power % d) + d) % d;
  for (Eigen::Index i = 0; i < d; ++i) img[static_cast<std::size_t>(i)] = (i + shift) % d;
  return Permutation(std::move(img));
}

Rational l1_distance(const RVector& a, const RVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  Rational sum = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    Rational d = a(i) - b(i);
    sum += d < 0 ? Rational(-d) : d;
  }
  return sum;
}

}  // namespace catcert
