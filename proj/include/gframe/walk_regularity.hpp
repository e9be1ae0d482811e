#pragma once

#include "graph.hpp"
#include "spectral.hpp"

#include <optional>
#include <vector>

namespace gframe {

struct WalkViolation
{
  int power;                 // smallest p with a non-constant diagonal of A^p
  int first_vertex;          // 0-based; lexicographically first differing pair
  int second_vertex;
  std::int64_t first_count;  // closed p-walks at first_vertex
  std::int64_t second_count;
};

struct PowerDiagonal
{
  int power;
  std::vector<std::int64_t> diagonal;
};

struct WalkRegularityReport
{
  enum class Method
  {
    Spectral,  // powers 1..k, k = distinct nonzero adjacency eigenvalues
    Definition // powers 1..p_max
  };

  bool is_walk_regular = true;
  Method method = Method::Spectral;
  int distinct_nonzero_eigenvalues = 0;
  std::vector<PowerDiagonal> checked_powers;
  std::optional<WalkViolation> first_violation;
};

// Number of distinct nonzero values among eigenvalues sorted non-increasing.
// Values within grouping_tol * max|lambda| of each other count once.
int count_distinct_nonzero(VectorX<double> const &eigenvalues, double zero_tol, double grouping_tol = 1e-8);

// Certified check: constant closed-walk counts for p = 1..k suffice.
WalkRegularityReport is_walk_regular(Graph const &g, double grouping_tol = 1e-8);

// Definition-based census over p = 1..p_max (a finite oracle).
WalkRegularityReport is_walk_regular_definition(Graph const &g, int p_max);

struct DiagonalSpread
{
  bool equal;
  double spread; // max - min of the diagonal
};

DiagonalSpread equal_diagonal_check(DenseMatrix const &m, double tol);

} // namespace gframe
