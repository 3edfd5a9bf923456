#include "qwalk/matrixcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qwalk {

namespace {

constexpr double kPi = std::numbers::pi;

// Phases (or real eigenvalues) within this distance are treated as one
// degenerate eigenvalue and share a grouped projector.
constexpr double kClusterTol = 1e-8;

void require_supported_dim(const Matrix& m, const char* who) {
  if (m.rows() != m.cols())
    throw DimensionMismatch(std::string(who) + ": matrix must be square");
  long d = m.rows();
  if (d != 2 && d != 3 && d != 4 && d != 6)
    throw DimensionUnsupported(std::string(who) + ": dimension " + std::to_string(d) +
                               " not in {2, 3, 4, 6}");
}

// Principal argument in (-pi, pi], with phases within kClusterTol of the
// branch endpoint -pi snapped up to +pi so that a numerically perturbed
// eigenvalue -1 lands on the documented +pi side of the cut.
double principal_phase(Complex z) {
  double theta = std::arg(z);
  if (theta <= -kPi + kClusterTol) theta += 2.0 * kPi;
  return theta;
}

// Groups indices whose sort keys lie within kClusterTol of their neighbour.
// keys must be sorted ascending; returns [begin, end) index ranges.
std::vector<std::pair<int, int>> cluster_sorted(const std::vector<double>& keys) {
  std::vector<std::pair<int, int>> groups;
  int n = static_cast<int>(keys.size());
  for (int b = 0; b < n;) {
    int e = b + 1;
    while (e < n && keys[e] - keys[e - 1] < kClusterTol) ++e;
    groups.emplace_back(b, e);
    b = e;
  }
  return groups;
}

SpectralDecomposition decompose_from_columns(const Matrix& basis, const Vector& lambdas,
                                             const std::vector<double>& keys) {
  // Sort eigenpairs by key so degenerate clusters become contiguous.
  int n = static_cast<int>(lambdas.size());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return keys[a] < keys[b]; });

  std::vector<double> sorted_keys(n);
  for (int i = 0; i < n; ++i) sorted_keys[i] = keys[order[i]];
  auto groups = cluster_sorted(sorted_keys);

  SpectralDecomposition out;
  out.eigenvalues.resize(static_cast<long>(groups.size()));
  out.projectors.reserve(groups.size());
  for (size_t g = 0; g < groups.size(); ++g) {
    auto [b, e] = groups[g];
    Matrix cols(n, e - b);
    Complex mean = 0.0;
    for (int j = b; j < e; ++j) {
      cols.col(j - b) = basis.col(order[j]);
      mean += lambdas[order[j]];
    }
    mean /= static_cast<double>(e - b);
    out.eigenvalues[static_cast<long>(g)] = mean;
    out.projectors.push_back(cols * cols.adjoint());
  }
  return out;
}

}  // namespace

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("mat_mul: " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " times " + std::to_string(b.rows()) +
                            "x" + std::to_string(b.cols()));
  return a * b;
}

Matrix mat_kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

SpectralDecomposition spectral_decompose(const Matrix& m, MatrixKind kind) {
  require_supported_dim(m, "spectral_decompose");
  if (!is_normal(m, 1e-8)) throw NotNormal("spectral_decompose: input is not normal");

  if (kind == MatrixKind::hermitian) {
    if (!is_hermitian(m, 1e-8))
      throw NotHermitian("spectral_decompose: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    Vector lambdas = es.eigenvalues().cast<Complex>();
    std::vector<double> keys(static_cast<size_t>(lambdas.size()));
    for (long i = 0; i < lambdas.size(); ++i) keys[static_cast<size_t>(i)] = lambdas[i].real();
    auto out = decompose_from_columns(es.eigenvectors(), lambdas, keys);
    out.eigenvalues = out.eigenvalues.real().cast<Complex>();  // drop stray imaginary dust
    return out;
  }

  if (!is_unitary(m, 1e-8)) throw NotUnitary("spectral_decompose: input is not unitary");
  // For a normal matrix the Schur form is diagonal, so the Schur basis columns
  // are orthonormal eigenvectors and may be grouped freely by eigenvalue.
  Eigen::ComplexSchur<Matrix> schur(m);
  Vector lambdas = schur.matrixT().diagonal();
  std::vector<double> keys(static_cast<size_t>(lambdas.size()));
  for (long i = 0; i < lambdas.size(); ++i)
    keys[static_cast<size_t>(i)] = principal_phase(lambdas[i]);
  auto out = decompose_from_columns(schur.matrixU(), lambdas, keys);
  // Unit-circle cleanup: each representative is the cluster mean, which for a
  // tight cluster of unit-modulus values sits negligibly inside the circle.
  for (long i = 0; i < out.eigenvalues.size(); ++i) {
    double r = std::abs(out.eigenvalues[i]);
    if (r > 0) out.eigenvalues[i] /= r;
  }
  return out;
}

Matrix principal_log_unitary(const Matrix& u) {
  require_supported_dim(u, "principal_log_unitary");
  if (!is_unitary(u, 1e-8)) throw NotUnitary("principal_log_unitary: input is not unitary");
  SpectralDecomposition d = spectral_decompose(u, MatrixKind::unitary);
  Matrix log = Matrix::Zero(u.rows(), u.cols());
  for (long k = 0; k < d.eigenvalues.size(); ++k) {
    double theta = principal_phase(d.eigenvalues[k]);
    log += Complex(0.0, theta) * d.projectors[static_cast<size_t>(k)];
  }
  // Exact anti-Hermitian projection removes O(eps) symmetric dust so that
  // i*log is Hermitian to working precision.
  return 0.5 * (log - log.adjoint().eval());
}

Matrix exp_minus_i_hermitian(const Matrix& h, double t) {
  require_supported_dim(h, "exp_minus_i_hermitian");
  if (!is_hermitian(h, 1e-8))
    throw NotHermitian("exp_minus_i_hermitian: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Vector phase(es.eigenvalues().size());
  for (long i = 0; i < phase.size(); ++i)
    phase[i] = std::exp(Complex(0.0, -es.eigenvalues()[i] * t));
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace qwalk
