#pragma once

// Fixtures, independent oracles and generators shared by the unit tests and
// the acceptance runner.

#include "gframe/frames.hpp"
#include "gframe/graph.hpp"
#include "gframe/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#ifndef GFRAME_FIXTURE_DIR
#error "GFRAME_FIXTURE_DIR must point at the fixtures directory"
#endif

namespace gframe::testing {

inline std::string fixture_path(std::string const &name)
{
  return std::string(GFRAME_FIXTURE_DIR) + "/" + name + ".edges";
}

inline Graph fixture(std::string const &name) { return load_edge_list(fixture_path(name)); }

inline std::vector<std::string> const &fixture_names()
{
  static std::vector<std::string> const names{"figure1", "figure2", "k3", "c4", "path3", "two_triangles", "petersen", "k33"};
  return names;
}

inline std::vector<std::string> const &walk_regular_fixture_names()
{
  static std::vector<std::string> const names{"k3", "c4", "petersen", "k33", "two_triangles"};
  return names;
}

// The 7x7 Laplacian printed for the two-component example graph.
inline DenseMatrix figure1_laplacian()
{
  DenseMatrix l(7, 7);
  l << 2, -1, -1, 0, 0, 0, 0, //
    -1, 2, -1, 0, 0, 0, 0,    //
    -1, -1, 2, 0, 0, 0, 0,    //
    0, 0, 0, 2, -1, 0, -1,    //
    0, 0, 0, -1, 2, -1, 0,    //
    0, 0, 0, 0, -1, 2, -1,    //
    0, 0, 0, -1, 0, -1, 2;
  return l;
}

// The printed 5x7 synthesis matrix of the two-component example frame; the
// first three coordinates carry the 4-cycle, the last two the triangle.
inline DenseMatrix figure1_printed_frame()
{
  double const a = std::sqrt(6.0) / 2;
  double const b = std::sqrt(18.0) / 6;
  DenseMatrix f(5, 7);
  f << 0, 0, 0, 1, -1, 1, -1, //
    0, 0, 0, 1, 0, -1, 0,     //
    0, 0, 0, 0, 1, 0, -1,     //
    a, 0, -a, 0, 0, 0, 0,     //
    -b, 2 * b, -b, 0, 0, 0, 0;
  return f;
}

// The 8x8 Laplacian printed for the 3-regular example graph.
inline DenseMatrix figure2_laplacian()
{
  DenseMatrix l(8, 8);
  l << 3, -1, 0, 0, -1, -1, 0, 0, //
    -1, 3, -1, 0, 0, 0, 0, -1,    //
    0, -1, 3, -1, 0, 0, 0, -1,    //
    0, 0, -1, 3, -1, 0, -1, 0,    //
    -1, 0, 0, -1, 3, 0, -1, 0,    //
    -1, 0, 0, 0, 0, 3, -1, -1,    //
    0, 0, 0, -1, -1, -1, 3, 0,    //
    0, -1, -1, 0, 0, -1, 0, 3;
  return l;
}

// The printed eigenbasis M and eigenvalues D of the 3-regular example Laplacian.
inline DenseMatrix figure2_printed_basis()
{
  double const s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
  double const p = 1 / (2 * std::sqrt(3 - s3));
  double const q = 1 / (2 * std::sqrt(3 + s3));
  DenseMatrix m(8, 8);
  m << s3 / 6, -s6 / 12, 0.5, 0.5, 0.5, 0, 0, s2 / 4,                              //
    0, s6 / 4, 0, s2 / 4, -s2 / 4, p, q, s2 / 4,                                     //
    s3 / 6, -s6 / 12, -0.5, 0, 0, (s3 - 1) * p, -(s3 + 1) * q, s2 / 4,               //
    s3 / 6, -s6 / 12, -0.5, 0, 0, (1 - s3) * p, (s3 + 1) * q, s2 / 4,                //
    -s3 / 3, -s6 / 12, 0, s2 / 4, -s2 / 4, -p, -q, s2 / 4,                           //
    s3 / 6, -s6 / 12, 0.5, -0.5, -0.5, 0, 0, s2 / 4,                                 //
    0, s6 / 4, 0, -s2 / 4, s2 / 4, -p, -q, s2 / 4,                                   //
    -s3 / 3, -s6 / 12, 0, -s2 / 4, s2 / 4, p, q, s2 / 4;
  return m;
}

inline Vector figure2_printed_eigenvalues()
{
  double const s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
  Vector d(8);
  d << 4, 4, 2, 4 - s2, 4 + s2, 3 - s3, 3 + s3, 0;
  return d;
}

// Fraction-free (Bareiss) elimination with row pivoting, in long double.
inline long double bareiss_determinant(Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> a)
{
  Index const n = a.rows();
  long double sign = 1, previous = 1;
  for (Index k = 0; k + 1 < n; ++k) {
    Index pivot = k;
    for (Index r = k + 1; r < n; ++r) {
      if (std::abs(a(r, k)) > std::abs(a(pivot, k))) { pivot = r; }
    }
    if (a(pivot, k) == 0) { return 0; }
    if (pivot != k) {
      a.row(pivot).swap(a.row(k));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j) { a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / previous; }
      a(i, k) = 0;
    }
    previous = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// Closed walks of length p from v, counted by explicit path enumeration.
inline std::int64_t closed_walks_by_enumeration(Graph const &g, int v, int p)
{
  auto walk = [&](auto &&self, int at, int remaining) -> std::int64_t {
    if (remaining == 0) { return at == v ? 1 : 0; }
    std::int64_t total = 0;
    for (int w : g.neighbors(at)) { total += self(self, w, remaining - 1); }
    return total;
  };
  return walk(walk, v, p);
}

// Random orthogonal matrix from the QR factorization of a Gaussian matrix.
inline DenseMatrix random_orthogonal(Index n, std::mt19937_64 &rng)
{
  std::normal_distribution<double> normal;
  DenseMatrix g(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) { g(i, j) = normal(rng); }
  }
  Eigen::HouseholderQR<DenseMatrix> qr(g);
  DenseMatrix q = qr.householderQ();
  for (Index j = 0; j < n; ++j) {
    if (qr.matrixQR()(j, j) < 0) { q.col(j) = -q.col(j); }
  }
  return q;
}

// Another valid spectrum of the same matrix: each eigenspace gets a random
// orthonormal basis and each vector a random sign.
inline SymmetricSpectrum<double> rotate_within_eigenspaces(SymmetricSpectrum<double> spec, std::mt19937_64 &rng,
                                                           double grouping_tol = 1e-8)
{
  Index const n = spec.size();
  double const scale = std::max(1.0, spec.eigenvalues.cwiseAbs().maxCoeff());
  Index begin = 0;
  while (begin < n) {
    Index end = begin + 1;
    while (end < n && spec.eigenvalues(begin) - spec.eigenvalues(end) <= grouping_tol * scale) { ++end; }
    Index const size = end - begin;
    spec.eigenvectors.middleCols(begin, size) =
      (spec.eigenvectors.middleCols(begin, size) * random_orthogonal(size, rng)).eval();
    begin = end;
  }
  std::bernoulli_distribution flip;
  for (Index j = 0; j < n; ++j) {
    if (flip(rng)) { spec.eigenvectors.col(j) = -spec.eigenvectors.col(j); }
  }
  return spec;
}

// Random connected simple graph on n vertices: a random spanning tree plus
// independent extra edges with probability density.
inline Graph random_connected_graph(int n, double density, std::mt19937_64 &rng)
{
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<char>> present(n, std::vector<char>(n, 0));
  std::vector<Graph::Edge> edges;
  auto add = [&](int u, int v) {
    if (u > v) { std::swap(u, v); }
    if (present[u][v]) { return; }
    present[u][v] = 1;
    edges.emplace_back(u, v);
  };
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    add(order[i], order[pick(rng)]);
  }
  std::bernoulli_distribution extra(density);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!present[u][v] && extra(rng)) { add(u, v); }
    }
  }
  return Graph(n, std::move(edges));
}

// Random connected circulant graph: vertex-transitive, hence walk-regular.
inline Graph random_circulant_graph(int n, std::mt19937_64 &rng)
{
  std::vector<int> jumps{1};
  std::bernoulli_distribution keep(0.4);
  for (int s = 2; s <= n / 2; ++s) {
    if (keep(rng)) { jumps.push_back(s); }
  }
  std::vector<Graph::Edge> edges;
  std::vector<std::vector<char>> present(n, std::vector<char>(n, 0));
  for (int v = 0; v < n; ++v) {
    for (int s : jumps) {
      int a = v, b = (v + s) % n;
      if (a > b) { std::swap(a, b); }
      if (!present[a][b]) {
        present[a][b] = 1;
        edges.emplace_back(a, b);
      }
    }
  }
  return Graph(n, std::move(edges));
}

// The property-suite graph stream: mostly random graphs, with roughly one in
// eight a random circulant so that constant-product cases are exercised.
inline Graph property_graph(std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(4, 10);
  int const n = size(rng);
  if (std::uniform_int_distribution<int>(0, 7)(rng) == 0) { return random_circulant_graph(n, rng); }
  std::uniform_real_distribution<double> density(0.05, 0.6);
  return random_connected_graph(n, density(rng), rng);
}

} // namespace gframe::testing
