#pragma once

#include <Eigen/Dense>

#include <complex>
#include <set>
#include <vector>

namespace catcert {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Default tolerances for the dense float path.
inline constexpr double kTolHermitian = 1e-9;
inline constexpr double kTolTrace = 1e-10;
inline constexpr double kTolPsd = 1e-9;
inline constexpr double kTolUnitary = 1e-10;

// Finite-dimensional state with subsystem shape metadata. The matrix is
// Hermitian within kTolHermitian, has unit trace within kTolTrace and
// eigenvalues >= -kTolPsd; density_matrix() enforces all three.
struct DensityMatrix {
  CMatrix mat;
  std::vector<Eigen::Index> shape;

  Eigen::Index dim() const { return mat.rows(); }
  Eigen::Index subsystems() const { return static_cast<Eigen::Index>(shape.size()); }
};

// Eigenvalues sorted descending; columns of vectors are the matching
// eigenvectors with a fixed phase convention (first significant component
// real positive), so the decomposition is deterministic.
struct Spectrum {
  RealVector values;
  CMatrix vectors;
};

double max_abs(const CMatrix& m);
bool is_hermitian(const CMatrix& m, double tol = kTolHermitian);
bool is_unitary(const CMatrix& m, double tol = kTolUnitary);

// Validating constructors.
DensityMatrix density_matrix(CMatrix m, std::vector<Eigen::Index> shape);
DensityMatrix density_matrix(CMatrix m);
DensityMatrix diagonal_state(const RealVector& probs);
DensityMatrix maximally_mixed(Eigen::Index d);

// Hermitian eigendecomposition. Throws on non-Hermitian input and on solver
// failure; the reconstruction V diag(v) V^dag matches h within 1e-10 * n.
Spectrum hermitian_eig(const CMatrix& h);

RealVector eigenvalues_of(const DensityMatrix& rho);

// Kronecker product, shapes concatenated.
DensityMatrix tensor_q(const DensityMatrix& a, const DensityMatrix& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Partial trace keeping the listed subsystems (in their original order).
DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<Eigen::Index>& keep);
CMatrix partial_trace(const CMatrix& m, const std::vector<Eigen::Index>& shape,
                      const std::set<Eigen::Index>& keep);

// (1/2) sum |eig(a - b)|, in [0, 1] for states.
double trace_distance(const CMatrix& a, const CMatrix& b);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

double min_eigenvalue(const DensityMatrix& rho);
double min_eigenvalue(const CMatrix& h);

// Lifts op acting on the listed subsystems (in that order) to the full
// space described by shape. Subsystems need not be adjacent.
CMatrix embed(const CMatrix& op, const std::vector<Eigen::Index>& shape,
              const std::vector<Eigen::Index>& subsystems);

// Mutual information between two subsystem groups in nats.
double mutual_information(const DensityMatrix& rho, const std::set<Eigen::Index>& part_a,
                          const std::set<Eigen::Index>& part_b);

}  // namespace catcert
