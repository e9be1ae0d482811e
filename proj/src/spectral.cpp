#include "gframe/spectral.hpp"

#include <limits>

namespace gframe {

bool is_integral(DenseMatrix const &m)
{
  constexpr double limit = 9007199254740992.0; // 2^53
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      double const x = m(i, j);
      if (!std::isfinite(x) || std::abs(x) >= limit || x != std::round(x)) { return false; }
    }
  }
  return true;
}

IntMatrix checked_product(IntMatrix const &a, IntMatrix const &b)
{
  if (a.cols() != b.rows()) { throw std::invalid_argument("checked_product: inner dimensions differ"); }
  IntMatrix c(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < b.cols(); ++j) {
      std::int64_t sum = 0;
      for (Index k = 0; k < a.cols(); ++k) {
        std::int64_t term;
        if (__builtin_mul_overflow(a(i, k), b(k, j), &term) || __builtin_add_overflow(sum, term, &sum)) {
          throw NumericalError("integer overflow in matrix power; use a smaller power or the floating path");
        }
      }
      c(i, j) = sum;
    }
  }
  return c;
}

std::vector<std::vector<std::int64_t>> integer_power_diagonals(IntMatrix const &m, int p_max)
{
  if (m.rows() != m.cols()) { throw std::invalid_argument("integer_power_diagonals: matrix is not square"); }
  if (p_max < 1) { throw std::invalid_argument("integer_power_diagonals: power must be >= 1"); }
  std::vector<std::vector<std::int64_t>> diagonals;
  diagonals.reserve(p_max);
  IntMatrix power = m;
  for (int p = 1; p <= p_max; ++p) {
    if (p > 1) { power = checked_product(power, m); }
    auto const d = power.diagonal();
    diagonals.emplace_back(d.begin(), d.end());
  }
  return diagonals;
}

std::vector<double> matrix_power_diagonal(DenseMatrix const &m, int p, PowerArithmetic mode)
{
  if (m.rows() != m.cols()) { throw std::invalid_argument("matrix_power_diagonal: matrix is not square"); }
  if (p < 1) { throw std::invalid_argument("matrix_power_diagonal: power must be >= 1"); }
  bool const exact = mode == PowerArithmetic::Exact || (mode == PowerArithmetic::Auto && is_integral(m));
  if (exact) {
    if (!is_integral(m)) { throw std::invalid_argument("matrix_power_diagonal: exact mode needs integer entries"); }
    IntMatrix const im = m.cast<std::int64_t>();
    IntMatrix power = im;
    for (int k = 1; k < p; ++k) { power = checked_product(power, im); }
    std::vector<double> out(m.rows());
    for (Index i = 0; i < m.rows(); ++i) { out[i] = static_cast<double>(power(i, i)); }
    return out;
  }
  DenseMatrix power = m;
  for (int k = 1; k < p; ++k) { power = power * m; }
  return {power.diagonal().begin(), power.diagonal().end()};
}

} // namespace gframe
