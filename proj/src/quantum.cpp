#include "catcert/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace catcert {

double max_abs(const CMatrix& m) {
  double best = 0.0;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r) best = std::max(best, std::abs(m(r, c)));
  return best;
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  CMatrix id = CMatrix::Identity(m.rows(), m.cols());
  return max_abs(m * m.adjoint() - id) <= tol;
}

namespace {

Eigen::Index shape_product(const std::vector<Eigen::Index>& shape) {
  Eigen::Index n = 1;
  for (auto d : shape) n *= d;
  return n;
}

void check_finite(const CMatrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag()))
        throw std::invalid_argument("matrix has non-finite entries");
}

}  // namespace

DensityMatrix density_matrix(CMatrix m, std::vector<Eigen::Index> shape) {
  if (m.rows() != m.cols()) throw std::invalid_argument("density matrix must be square");
  if (shape.empty()) throw std::invalid_argument("density matrix needs a shape");
  if (shape_product(shape) != m.rows())
    throw std::invalid_argument("shape product does not match matrix dimension");
  check_finite(m);
  if (!is_hermitian(m)) throw std::invalid_argument("density matrix not Hermitian");
  if (std::abs(m.trace().real() - 1.0) > kTolTrace || std::abs(m.trace().imag()) > kTolTrace)
    throw std::invalid_argument("density matrix trace != 1");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kTolPsd)
    throw std::invalid_argument("density matrix has negative eigenvalues");
  return DensityMatrix{std::move(m), std::move(shape)};
}

DensityMatrix density_matrix(CMatrix m) {
  Eigen::Index n = m.rows();
  return density_matrix(std::move(m), {n});
}

DensityMatrix diagonal_state(const RealVector& probs) {
  CMatrix m = CMatrix::Zero(probs.size(), probs.size());
  for (Eigen::Index i = 0; i < probs.size(); ++i) m(i, i) = probs(i);
  return density_matrix(std::move(m));
}

DensityMatrix maximally_mixed(Eigen::Index d) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  CMatrix m = CMatrix::Identity(d, d) / static_cast<double>(d);
  return DensityMatrix{std::move(m), {d}};
}

Spectrum hermitian_eig(const CMatrix& h) {
  if (!is_hermitian(h)) throw std::invalid_argument("hermitian_eig: input not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver did not converge");

  Eigen::Index n = h.rows();
  Spectrum out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  // Eigen sorts ascending; we want descending.
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = es.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  // Phase convention: first component of significant magnitude made real
  // positive, so repeated runs produce the same Spectrum.
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      Complex z = out.vectors(r, c);
      if (std::abs(z) > 1e-10) {
        out.vectors.col(c) *= std::conj(z) / std::abs(z);
        break;
      }
    }
  }
  double residual = max_abs(out.vectors * out.values.asDiagonal().toDenseMatrix().cast<Complex>() *
                                out.vectors.adjoint() -
                            h);
  if (residual > 1e-10 * static_cast<double>(n))
    throw std::runtime_error("hermitian_eig: reconstruction residual " + std::to_string(residual));
  return out;
}

RealVector eigenvalues_of(const DensityMatrix& rho) { return hermitian_eig(rho.mat).values; }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DensityMatrix tensor_q(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<Eigen::Index> shape = a.shape;
  shape.insert(shape.end(), b.shape.begin(), b.shape.end());
  return DensityMatrix{kron(a.mat, b.mat), std::move(shape)};
}

namespace {

// Splits every flat index into (kept part, traced part) once.
struct TraceIndex {
  std::vector<Eigen::Index> kept;
  std::vector<Eigen::Index> traced;
  Eigen::Index kept_dim = 1;
};

TraceIndex trace_index(const std::vector<Eigen::Index>& shape, const std::set<Eigen::Index>& keep) {
  Eigen::Index total = shape_product(shape);
  TraceIndex t;
  t.kept.resize(static_cast<std::size_t>(total));
  t.traced.resize(static_cast<std::size_t>(total));
  for (auto k : keep) t.kept_dim *= shape[static_cast<std::size_t>(k)];

  std::vector<Eigen::Index> strides(shape.size());
  Eigen::Index acc = 1;
  for (std::size_t s = shape.size(); s-- > 0;) {
    strides[s] = acc;
    acc *= shape[s];
  }
  for (Eigen::Index flat = 0; flat < total; ++flat) {
    Eigen::Index rem = flat, kept = 0, traced = 0;
    for (std::size_t s = 0; s < shape.size(); ++s) {
      Eigen::Index idx = rem / strides[s];
      rem %= strides[s];
      if (keep.count(static_cast<Eigen::Index>(s)))
        kept = kept * shape[s] + idx;
      else
        traced = traced * std::max<Eigen::Index>(shape[s], 1) + idx;
    }
    t.kept[static_cast<std::size_t>(flat)] = kept;
    t.traced[static_cast<std::size_t>(flat)] = traced;
  }
  return t;
}

}  // namespace

CMatrix partial_trace(const CMatrix& m, const std::vector<Eigen::Index>& shape,
                      const std::set<Eigen::Index>& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be non-empty");
  for (auto k : keep)
    if (k < 0 || k >= static_cast<Eigen::Index>(shape.size()))
      throw std::invalid_argument("partial_trace: keep index out of range");
  if (shape_product(shape) != m.rows() || m.rows() != m.cols())
    throw std::invalid_argument("partial_trace: shape does not match matrix");

  TraceIndex t = trace_index(shape, keep);
  CMatrix out = CMatrix::Zero(t.kept_dim, t.kept_dim);
  Eigen::Index total = m.rows();
  for (Eigen::Index c = 0; c < total; ++c) {
    for (Eigen::Index r = 0; r < total; ++r) {
      if (t.traced[static_cast<std::size_t>(r)] == t.traced[static_cast<std::size_t>(c)])
        out(t.kept[static_cast<std::size_t>(r)], t.kept[static_cast<std::size_t>(c)]) += m(r, c);
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<Eigen::Index>& keep) {
  CMatrix m = partial_trace(rho.mat, rho.shape, keep);
  std::vector<Eigen::Index> out_shape;
  for (auto k : keep) out_shape.push_back(rho.shape[static_cast<std::size_t>(k)]);
  return DensityMatrix{std::move(m), std::move(out_shape)};
}

double trace_distance(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * ((a - b) + (a - b).adjoint()),
                                            Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return trace_distance(a.mat, b.mat);
}

double min_eigenvalue(const CMatrix& h) {
  if (!is_hermitian(h)) throw std::invalid_argument("min_eigenvalue: input not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double min_eigenvalue(const DensityMatrix& rho) { return min_eigenvalue(rho.mat); }

CMatrix embed(const CMatrix& op, const std::vector<Eigen::Index>& shape,
              const std::vector<Eigen::Index>& subsystems) {
  Eigen::Index total = shape_product(shape);
  Eigen::Index op_dim = 1;
  for (auto s : subsystems) {
    if (s < 0 || s >= static_cast<Eigen::Index>(shape.size()))
      throw std::invalid_argument("embed: subsystem index out of range");
    op_dim *= shape[static_cast<std::size_t>(s)];
  }
  if (op.rows() != op_dim || op.cols() != op_dim)
    throw std::invalid_argument("embed: operator dimension does not match subsystems");

  std::vector<Eigen::Index> strides(shape.size());
  Eigen::Index acc = 1;
  for (std::size_t s = shape.size(); s-- > 0;) {
    strides[s] = acc;
    acc *= shape[s];
  }

  // full index = sum over subsystems of op-part plus a passive rest-part.
  std::vector<Eigen::Index> op_part(static_cast<std::size_t>(total));
  std::vector<Eigen::Index> rest_part(static_cast<std::size_t>(total));
  for (Eigen::Index flat = 0; flat < total; ++flat) {
    Eigen::Index rem = flat;
    std::vector<Eigen::Index> digits(shape.size());
    for (std::size_t s = 0; s < shape.size(); ++s) {
      digits[s] = rem / strides[s];
      rem %= strides[s];
    }
    Eigen::Index op_idx = 0;
    for (auto s : subsystems) op_idx = op_idx * shape[static_cast<std::size_t>(s)] + digits[static_cast<std::size_t>(s)];
    Eigen::Index rest_idx = 0;
    for (std::size_t s = 0; s < shape.size(); ++s) {
      if (std::find(subsystems.begin(), subsystems.end(), static_cast<Eigen::Index>(s)) ==
          subsystems.end())
        rest_idx = rest_idx * shape[s] + digits[s];
    }
    op_part[static_cast<std::size_t>(flat)] = op_idx;
    rest_part[static_cast<std::size_t>(flat)] = rest_idx;
  }

  CMatrix out = CMatrix::Zero(total, total);
  for (Eigen::Index c = 0; c < total; ++c)
    for (Eigen::Index r = 0; r < total; ++r)
      if (rest_part[static_cast<std::size_t>(r)] == rest_part[static_cast<std::size_t>(c)])
        out(r, c) = op(op_part[static_cast<std::size_t>(r)], op_part[static_cast<std::size_t>(c)]);
  return out;
}

namespace {

double shannon_nats(const RealVector& spectrum) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    double p = spectrum(i);
    if (p > 1e-15) s -= p * std::log(p);
  }
  return s;
}

}  // namespace

double mutual_information(const DensityMatrix& rho, const std::set<Eigen::Index>& part_a,
                          const std::set<Eigen::Index>& part_b) {
  for (auto a : part_a)
    if (part_b.count(a)) throw std::invalid_argument("mutual_information: overlapping parts");
  std::set<Eigen::Index> both = part_a;
  both.insert(part_b.begin(), part_b.end());
  double sa = shannon_nats(eigenvalues_of(partial_trace(rho, part_a)));
  double sb = shannon_nats(eigenvalues_of(partial_trace(rho, part_b)));
  double sab = shannon_nats(eigenvalues_of(partial_trace(rho, both)));
  return sa + sb - sab;
}

}  // namespace catcert
