#include "gframe/walk_regularity.hpp"

namespace gframe {

namespace {

WalkRegularityReport census(Graph const &g, int p_max, WalkRegularityReport::Method method)
{
  WalkRegularityReport report;
  report.method = method;
  if (p_max < 1) { return report; }
  auto diagonals = integer_power_diagonals(adjacency_counts(g), p_max);
  for (int p = 1; p <= p_max; ++p) {
    auto &d = diagonals[p - 1];
    if (!report.first_violation) {
      for (std::size_t j = 1; j < d.size(); ++j) {
        if (d[j] != d[0]) {
          report.first_violation = WalkViolation{p, 0, static_cast<int>(j), d[0], d[j]};
          break;
        }
      }
    }
    report.checked_powers.push_back({p, std::move(d)});
  }
  report.is_walk_regular = !report.first_violation.has_value();
  return report;
}

} // namespace

int count_distinct_nonzero(VectorX<double> const &eigenvalues, double zero_tol, double grouping_tol)
{
  if (eigenvalues.size() == 0) { return 0; }
  double const gap = grouping_tol * eigenvalues.cwiseAbs().maxCoeff();
  int count = 0;
  bool have_last = false;
  double last = 0;
  for (Index j = 0; j < eigenvalues.size(); ++j) {
    double const lambda = eigenvalues(j);
    if (std::abs(lambda) <= zero_tol) { continue; }
    if (!have_last || std::abs(lambda - last) > gap) { ++count; }
    last = lambda;
    have_last = true;
  }
  return count;
}

WalkRegularityReport is_walk_regular(Graph const &g, double grouping_tol)
{
  auto const spec = eigh_symmetric(adjacency_matrix(g));
  int const k = count_distinct_nonzero(spec.eigenvalues, spec.zero_tol, grouping_tol);
  auto report = census(g, k, WalkRegularityReport::Method::Spectral);
  report.distinct_nonzero_eigenvalues = k;
  return report;
}

WalkRegularityReport is_walk_regular_definition(Graph const &g, int p_max)
{
  if (p_max < 1) { throw std::invalid_argument("is_walk_regular_definition: p_max must be >= 1"); }
  auto const spec = eigh_symmetric(adjacency_matrix(g));
  auto report = census(g, p_max, WalkRegularityReport::Method::Definition);
  report.distinct_nonzero_eigenvalues = count_distinct_nonzero(spec.eigenvalues, spec.zero_tol);
  return report;
}

DiagonalSpread equal_diagonal_check(DenseMatrix const &m, double tol)
{
  if (m.rows() != m.cols()) { throw std::invalid_argument("equal_diagonal_check: matrix is not square"); }
  if (m.rows() == 0) { return {true, 0.0}; }
  auto const d = m.diagonal();
  double const spread = d.maxCoeff() - d.minCoeff();
  return {spread <= tol, spread};
}

} // namespace gframe
