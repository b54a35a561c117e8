#pragma once

#include <utility>
#include <vector>

#include "catcert/classical.hpp"
#include "catcert/quantum.hpp"

namespace catcert {

// Orthonormal basis given by the columns of a unitary.
struct Basis {
  CMatrix kets;

  Eigen::Index dim() const { return kets.rows(); }
};

Basis computational_basis(Eigen::Index d);
Basis basis_from_unitary(CMatrix kets);  // validates orthonormality

// Pinching: sum_j <j|rho|j> |j><j|.
DensityMatrix decohere(const DensityMatrix& rho, const Basis& basis);
CMatrix decohere(const CMatrix& m, const Basis& basis);

// d pairwise trace-orthogonal unitaries U_j = Z^j with
// Z = diag(1, w, ..., w^{d-1}), w = exp(2 pi i / d).
std::vector<CMatrix> clock_unitary_basis(Eigen::Index d);

// V = sum_j |j><j| (x) U_j on system (x) ancilla, both of dimension d.
// Tracing the ancilla of V (rho (x) 1_d/d) V^dag pinches rho in the basis
// while the ancilla marginal stays maximally mixed.
CMatrix dephasing_dilation(Eigen::Index d, const Basis& basis);

// Convex mix of identity and the transposition (i j): position i receives
// (1-t) v_i + t v_j and position j the complement.
struct TTransform {
  Eigen::Index i = 0;
  Eigen::Index j = 0;
  Rational t;
};

using TTransformChain = std::vector<TTransform>;

RVector apply_chain(const TTransformChain& chain, RVector v);

// Exact T-transform chain carrying x to y in place (positions matter),
// at most n-1 transforms. Requires x >= y in the majorization order with
// matching total sums; throws otherwise.
TTransformChain hlp_chain(const RVector& x, const RVector& y);

// Mixture of permutations with a uniform control register: applying branch
// P_i with probability 1/control_dim.
struct ControlledPermutation {
  Eigen::Index control_dim = 1;
  std::vector<Permutation> branches;
};

// Average action of a controlled permutation on a distribution.
RVector mixed_action(const ControlledPermutation& cp, const RVector& v);

inline constexpr Eigen::Index kMaxControlDim = 1'000'000;

// Realizes the chain as a uniform mixture of permutations: the chain's
// branch weights are composed stage by stage and put over their least
// common denominator, which becomes the control dimension. Errors when the
// control dimension would exceed kMaxControlDim.
ControlledPermutation chain_to_controlled_permutation(const TTransformChain& chain,
                                                      Eigen::Index dim);

// Lifts the controlled permutation to a single permutation on
// control (x) target with the control register slowest.
Permutation assemble_controlled_permutation(const ControlledPermutation& cp);

// Unitary with diag(U diag(spectrum) U^dag) = target_diag, built by lifting
// the exact T-transform chain to Givens rotations. Requires
// spectrum >= target_diag within kTolMajor.
CMatrix schur_horn_unitary(const RealVector& spectrum, const RealVector& target_diag);

}  // namespace catcert
