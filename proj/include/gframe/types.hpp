#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gframe {

using Index = Eigen::Index;

template <typename Scalar> using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar> using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Real dense matrix; houses A(G), L(G), synthesis matrices, Gramians.
using DenseMatrix = MatrixX<double>;
using Vector = VectorX<double>;
// Exact walk counts.
using IntMatrix = MatrixX<std::int64_t>;

// Malformed input text. line is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error
{
public:
  ParseError(std::string const &what, int line = 0)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what)
    , line_(line)
  {
  }
  int line() const { return line_; }

private:
  int line_;
};

// Solver non-convergence, integer overflow in walk counts, failed internal identities.
class NumericalError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Exhaustive enumeration refused because it would exceed the configured subset budget.
class GuardExceeded : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

} // namespace gframe
