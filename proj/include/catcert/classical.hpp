#pragma once

#include <set>
#include <vector>

#include "catcert/rational.hpp"

namespace catcert {

// Exact classical distributions and permutation dynamics. Multi-indices
// flatten row-major with subsystem 0 slowest, so (i, j) on shape [a, b]
// maps to flat index i * b + j.

struct ProbVector {
  RVector entries;

  ProbVector() = default;
  explicit ProbVector(RVector e) : entries(std::move(e)) {}

  Eigen::Index dim() const { return entries.size(); }
};

struct JointDist {
  RVector entries;                   // flat, row-major
  std::vector<Eigen::Index> shape;   // subsystem dimensions

  JointDist() = default;
  JointDist(RVector e, std::vector<Eigen::Index> s) : entries(std::move(e)), shape(std::move(s)) {}

  Eigen::Index dim() const { return entries.size(); }
  Eigen::Index subsystems() const { return static_cast<Eigen::Index>(shape.size()); }
};

// Bijection on {0, ..., size-1}; image[i] is where i goes.
struct Permutation {
  std::vector<Eigen::Index> image;

  Permutation() = default;
  explicit Permutation(std::vector<Eigen::Index> img) : image(std::move(img)) {}
  static Permutation identity(Eigen::Index n);

  Eigen::Index size() const { return static_cast<Eigen::Index>(image.size()); }
  Eigen::Index operator()(Eigen::Index i) const { return image[static_cast<std::size_t>(i)]; }

  Permutation inverse() const;
  // (a.compose(b))(i) == a(b(i))
  Permutation compose(const Permutation& other) const;
  bool is_identity() const;
};

// Throws std::invalid_argument when entries are negative, do not sum to
// exactly 1, or the shape does not match the flat length.
void validate(const ProbVector& p);
void validate(const JointDist& j);
void validate(const Permutation& p);

ProbVector prob_vector(std::initializer_list<Rational> entries);
ProbVector uniform_dist(Eigen::Index d);
JointDist as_joint(const ProbVector& p);

Eigen::Index shape_product(const std::vector<Eigen::Index>& shape);

// Exact tensor product; shape is the concatenation of the operand shapes.
JointDist tensor_dist(const JointDist& a, const JointDist& b);
JointDist tensor_dist(const ProbVector& a, const ProbVector& b);
JointDist tensor_dist(const ProbVector& a, const JointDist& b);
JointDist tensor_dist(const JointDist& a, const ProbVector& b);

// Exact sum over the discarded subsystems (classical partial trace). The
// kept subsystems stay in their original order. Empty keep set is an error.
JointDist marginalize(const JointDist& j, const std::set<Eigen::Index>& keep);

// Marginal onto a single subsystem.
ProbVector marginal(const JointDist& j, Eigen::Index subsystem);

// Output entry k equals input entry p^{-1}(k).
JointDist apply_permutation(const Permutation& p, const JointDist& j);
ProbVector apply_permutation(const Permutation& p, const ProbVector& v);

// j -> (j + power) mod d. Negative powers allowed.
Permutation cycle_shift(Eigen::Index d, Eigen::Index power);

// l1 distance between distributions of equal dimension.
Rational l1_distance(const RVector& a, const RVector& b);

}  // namespace catcert
