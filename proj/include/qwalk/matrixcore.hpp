#pragma once

// Dense complex linear algebra for small normal matrices (dims 2, 3, 4, 6):
// spectral decompositions with grouped projectors, the principal logarithm of
// a unitary, and Hermitian exponentials. These underpin the derivation of the
// Hermitian walk generator H = i ln S from a coin unitary S and its inverse
// check e^{-iH} = S. All operations are pure functions of their inputs and
// safe to call concurrently.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <complex>
#include <vector>

#include "qwalk/errors.hpp"

namespace qwalk {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class MatrixKind { unitary, hermitian };

// Largest absolute entry; the norm used by every tolerance check here.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.derived().cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& m, double tol = 1e-10) {
  if (m.rows() != m.cols()) return false;
  Matrix mm = m.derived();
  return max_abs(Matrix(mm.adjoint() * mm - Matrix::Identity(mm.rows(), mm.cols()))) <= tol;
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = 1e-10) {
  if (m.rows() != m.cols()) return false;
  Matrix mm = m.derived();
  return max_abs(Matrix(mm - mm.adjoint())) <= tol;
}

template <typename Derived>
bool is_normal(const Eigen::MatrixBase<Derived>& m, double tol = 1e-8) {
  if (m.rows() != m.cols()) return false;
  Matrix mm = m.derived();
  return max_abs(Matrix(mm * mm.adjoint() - mm.adjoint() * mm)) <= tol;
}

// Product with an explicit shape check (throws DimensionMismatch).
Matrix mat_mul(const Matrix& a, const Matrix& b);

inline Matrix mat_adjoint(const Matrix& a) { return a.adjoint(); }

// Kronecker product; result dimension is the product of the input dimensions.
Matrix mat_kron(const Matrix& a, const Matrix& b);

// Eigenvalues with grouped orthogonal projectors: eigenvalues closer than the
// clustering tolerance are merged into one projector, so degenerate spectra
// (e.g. involutions with eigenvalues ±1) come back with one projector per
// distinct eigenvalue. Invariants: sum of projectors = identity, projectors
// idempotent and mutually annihilating, and sum(lambda_k P_k) reconstructs the
// input, all within 1e-10 for well-conditioned normal inputs.
struct SpectralDecomposition {
  Vector eigenvalues;               // one representative per cluster
  std::vector<Matrix> projectors;   // same order as eigenvalues
};

// kind describes what the caller asserts about m; the routine verifies it
// (NotUnitary / NotHermitian at 1e-8) on top of normality (NotNormal at 1e-8).
// Dimensions outside {2, 3, 4, 6} throw DimensionUnsupported.
SpectralDecomposition spectral_decompose(const Matrix& m, MatrixKind kind);

// Principal logarithm of a unitary: returns L with e^L = u and every
// eigenvalue i*theta of L satisfying theta in (-pi, pi]. Eigenvalue -1 maps to
// phase +pi (the branch endpoint is included, never ambiguous: phases within
// 1e-8 of -pi are snapped up to +pi). i*L is Hermitian.
Matrix principal_log_unitary(const Matrix& u);

// e^{-i h t} for Hermitian h; the returned matrix is unitary.
Matrix exp_minus_i_hermitian(const Matrix& h, double t);

}  // namespace qwalk
