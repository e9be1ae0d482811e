#pragma once

#include "types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace gframe {

// Eigendecomposition of a real symmetric matrix: m = eigenvectors * diag(eigenvalues) * eigenvectors^T.
template <typename Scalar> struct SymmetricSpectrum
{
  VectorX<Scalar> eigenvalues; // non-increasing
  MatrixX<Scalar> eigenvectors; // column j pairs with eigenvalues(j)
  Scalar zero_tol;              // |lambda| <= zero_tol counts as 0

  Index size() const { return eigenvalues.size(); }
  bool isZero(Index j) const { return std::abs(eigenvalues(j)) <= zero_tol; }
  Index nonzeroCount() const
  {
    Index count = 0;
    for (Index j = 0; j < size(); ++j) { count += isZero(j) ? 0 : 1; }
    return count;
  }
};

struct JacobiOptions
{
  double symmetry_tol = 1e-12;    // relative to max(1, max|m_ij|)
  double convergence_tol = 1e-12; // off-diagonal Frobenius norm relative to ||m||_F
  int max_sweeps = 100;
  double zero_tol_factor = 1e-9;  // zero_tol = factor * max(1, max|lambda|)
};

namespace detail {

template <typename Scalar> Scalar offDiagonalNorm(MatrixX<Scalar> const &a)
{
  Scalar sum = 0;
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (i != j) { sum += a(i, j) * a(i, j); }
    }
  }
  return std::sqrt(sum);
}

// Flip each column so its largest-magnitude entry is positive (first index wins near-ties).
template <typename Scalar> void canonicalizeSigns(MatrixX<Scalar> &v)
{
  for (Index j = 0; j < v.cols(); ++j) {
    Scalar const peak = v.col(j).cwiseAbs().maxCoeff();
    for (Index i = 0; i < v.rows(); ++i) {
      if (std::abs(v(i, j)) >= peak * (1 - Scalar(1e-9))) {
        if (v(i, j) < 0) { v.col(j) = -v.col(j); }
        break;
      }
    }
  }
}

} // namespace detail

// Cyclic Jacobi eigensolver. The input is symmetrized by averaging with its
// transpose; rotations sweep (p, q) in row-major order until the off-diagonal
// mass is negligible.
template <typename Derived>
SymmetricSpectrum<typename Derived::Scalar> eigh_symmetric(Eigen::MatrixBase<Derived> const &m,
                                                           JacobiOptions const &opts = {})
{
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("eigh_symmetric: matrix is " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + ", not square");
  }
  Index const n = m.rows();
  Scalar const scale = std::max(Scalar(1), n > 0 ? m.cwiseAbs().maxCoeff() : Scalar(0));
  if (n > 0 && (m - m.transpose()).cwiseAbs().maxCoeff() > Scalar(opts.symmetry_tol) * scale) {
    throw std::invalid_argument("eigh_symmetric: matrix is not symmetric");
  }

  MatrixX<Scalar> a = (m + m.transpose()) / Scalar(2);
  MatrixX<Scalar> v = MatrixX<Scalar>::Identity(n, n);
  Scalar const target = Scalar(opts.convergence_tol) * a.norm();

  int sweep = 0;
  while (detail::offDiagonalNorm(a) > target) {
    if (++sweep > opts.max_sweeps) {
      throw NumericalError("eigh_symmetric: Jacobi iteration did not converge in " +
                           std::to_string(opts.max_sweeps) + " sweeps");
    }
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        Scalar const apq = a(p, q);
        if (apq == Scalar(0)) { continue; }
        Scalar const theta = (a(q, q) - a(p, p)) / (2 * apq);
        Scalar const t = (theta >= 0 ? Scalar(1) : Scalar(-1)) / (std::abs(theta) + std::sqrt(1 + theta * theta));
        Scalar const c = 1 / std::sqrt(1 + t * t);
        Scalar const s = t * c;
        // a <- J^T a J with J the (p, q) rotation [c s; -s c]
        for (Index k = 0; k < n; ++k) {
          Scalar const akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Index k = 0; k < n; ++k) {
          Scalar const apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0;
        for (Index k = 0; k < n; ++k) {
          Scalar const vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) { return a(i, i) > a(j, j); });

  SymmetricSpectrum<Scalar> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Index j = 0; j < n; ++j) {
    out.eigenvalues(j) = a(order[j], order[j]);
    out.eigenvectors.col(j) = v.col(order[j]);
  }
  detail::canonicalizeSigns(out.eigenvectors);
  Scalar const peak = n > 0 ? out.eigenvalues.cwiseAbs().maxCoeff() : Scalar(0);
  out.zero_tol = Scalar(opts.zero_tol_factor) * std::max(Scalar(1), peak);
  return out;
}

// Reassemble eigenvectors * diag(f(lambda)) * eigenvectors^T.
template <typename Scalar, typename Fn>
MatrixX<Scalar> spectral_function(SymmetricSpectrum<Scalar> const &spec, Fn &&f)
{
  VectorX<Scalar> mapped(spec.size());
  for (Index j = 0; j < spec.size(); ++j) { mapped(j) = f(spec.eigenvalues(j), spec.isZero(j)); }
  return spec.eigenvectors * mapped.asDiagonal() * spec.eigenvectors.transpose();
}

template <typename Scalar> MatrixX<Scalar> moore_penrose(SymmetricSpectrum<Scalar> const &spec)
{
  return spectral_function(spec, [](Scalar lambda, bool zero) { return zero ? Scalar(0) : 1 / lambda; });
}

// Pseudoinverse of a symmetric matrix: nonzero eigenvalues inverted, the rest zeroed.
template <typename Derived> MatrixX<typename Derived::Scalar> moore_penrose(Eigen::MatrixBase<Derived> const &m)
{
  return moore_penrose(eigh_symmetric(m));
}

// Largest singular value, sqrt of the top eigenvalue of the smaller Gram product.
template <typename Derived> typename Derived::Scalar spectral_norm(Eigen::MatrixBase<Derived> const &m)
{
  using Scalar = typename Derived::Scalar;
  if (m.size() == 0) { return Scalar(0); }
  MatrixX<Scalar> const gram = m.rows() <= m.cols() ? MatrixX<Scalar>(m * m.transpose())
                                                    : MatrixX<Scalar>(m.transpose() * m);
  auto const spec = eigh_symmetric(gram);
  return std::sqrt(std::max(Scalar(0), spec.eigenvalues(0)));
}

// Count of singular values above tol * max(1, sigma_max).
template <typename Derived> Index numerical_rank(Eigen::MatrixBase<Derived> const &m, double tol = 1e-8)
{
  using Scalar = typename Derived::Scalar;
  if (m.size() == 0) { return 0; }
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(m.eval());
  auto const &sigma = svd.singularValues();
  Scalar const cut = Scalar(tol) * std::max(Scalar(1), sigma(0));
  return (sigma.array() > cut).count();
}

// a_1 ... a_n * prod_{i>j} (a_i - a_j): determinant of the matrix with rows (a_1^p, ..., a_n^p), p = 1..n.
template <typename Scalar> Scalar generalized_vandermonde_det(std::span<Scalar const> a)
{
  Scalar det = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    det *= a[i];
    for (std::size_t j = 0; j < i; ++j) { det *= a[i] - a[j]; }
  }
  return det;
}

enum class PowerArithmetic
{
  Auto,     // exact when every entry is an integer
  Exact,
  Floating
};

// Diagonal of m^p by repeated multiplication.
std::vector<double> matrix_power_diagonal(DenseMatrix const &m, int p, PowerArithmetic mode = PowerArithmetic::Auto);

// Diagonals of m^1 .. m^p_max in exact 64-bit arithmetic; throws NumericalError on overflow.
std::vector<std::vector<std::int64_t>> integer_power_diagonals(IntMatrix const &m, int p_max);

// Product with overflow detection.
IntMatrix checked_product(IntMatrix const &a, IntMatrix const &b);

bool is_integral(DenseMatrix const &m);

} // namespace gframe
