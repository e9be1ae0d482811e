#pragma once

#include "frames.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gframe {

// sum_{i in erased} h_i f_i^T: the reconstruction error when the coefficients in `erased` are lost.
DenseMatrix error_operator(Frame const &f, DenseMatrix const &dual, std::span<int const> erased);

struct ErasureMax
{
  double value;
  std::vector<int> erased; // maximizing subset, lexicographically smallest among exact ties
};

struct ErasureOptions
{
  std::uint64_t subset_budget = 1'000'000;
  int workers = 1;
};

// D^r: worst spectral norm of the error operator over all r-subsets.
// Throws GuardExceeded when C(n, r) exceeds the budget.
ErasureMax d_r(Frame const &f, DenseMatrix const &dual, int r, ErasureOptions const &opts = {});

// Monte-Carlo lower bound on D^r from `samples` seeded random r-subsets.
ErasureMax d_r_lower_bound(Frame const &f, DenseMatrix const &dual, int r, int samples, std::uint64_t seed);

struct D1
{
  double value;
  std::vector<double> products; // |f_i| * |h_i|
};

// D^1 through the rank-one identity |h f^T| = |h| |f|.
D1 d1_fast(Frame const &f, DenseMatrix const &dual);

// |f_i| * |S^-1 f_i| in bundle order.
std::vector<double> canonical_products(GraphFrameBundle const &b);

// Vertices (input labels, 0-based, sorted) whose canonical product attains the maximum within tie_tol * max(1, max).
std::vector<int> lambda1_set(GraphFrameBundle const &b, double tie_tol = 1e-9);

struct Constancy
{
  bool is_constant;
  double spread; // max - min of the canonical products
};

Constancy constancy_certificate(GraphFrameBundle const &b, double tol = 1e-9);

// Certificate that the canonical dual is not optimal for one erasure: the
// argmax vectors are independent and a dependence sum_i alpha_i f_i = 0 has
// alpha nonzero on all of them.
struct DependenceWitness
{
  std::vector<int> lambda1;         // input labels, 0-based
  Index lambda1_rank;
  std::vector<double> coefficients; // alpha, input-label order
  double dependence_residual;       // |sum_i alpha_i f_i|
};

std::optional<DependenceWitness> dependence_witness(GraphFrameBundle const &b, double tie_tol = 1e-9);

enum class Verdict
{
  UniqueOdAllErasures,
  Od1Erasure,
  NotOd,
  Inconclusive
};

std::string_view to_string(Verdict v);

struct SearchOptions
{
  int trials = 1000;
  double radius = 0.01; // every component shift stays within this norm
  std::uint64_t seed = 0;
  int workers = 1;
  double improvement_tol = 1e-9;
};

struct SearchResult
{
  std::vector<Vector> shifts; // per component, bundle frame coordinates
  double d1;
  double canonical_d1;
  bool improved; // d1 < canonical_d1 - improvement_tol
  int evaluations;
};

// Seeded uniform-ball sampling of per-component shifts followed by a
// deterministic pattern-search refinement of the best sample, both confined to
// shifts of norm <= radius.
SearchResult perturbation_search(GraphFrameBundle const &b, SearchOptions const &opts = {});

// A dual other than the canonical one attaining the same D^1.
struct AlternateDual
{
  int component;              // shifted component index
  std::vector<Vector> shifts;
  double d1;
};

struct VerdictBasis
{
  std::string rule;
  std::string note;
  std::vector<int> walk_regular_components; // indices of walk-regular components meeting Lambda_1
  std::optional<DependenceWitness> dependence;
  std::optional<AlternateDual> alternate;
};

struct ErasureReport
{
  double d1_canonical;
  std::vector<double> per_vertex_products; // input-label order
  std::vector<int> lambda1;                // input labels, 0-based
  Constancy constancy;
  Verdict verdict;
  VerdictBasis basis;
  std::optional<SearchResult> search_best;
};

struct VerdictOptions
{
  double tie_tol = 1e-9;
  double grouping_tol = 1e-8;
  SearchOptions search;
  bool always_search = false;
};

// Decision procedure, first match wins:
//   walk-regular graph -> unique OD for all erasures;
//   constant canonical products -> unique OD for all erasures;
//   connected with non-constant products -> not OD (dependence witness);
//   a walk-regular component meets Lambda_1 -> OD for one erasure;
//   otherwise inconclusive, with the perturbation search attached.
ErasureReport canonical_verdict(GraphFrameBundle const &b, VerdictOptions const &opts = {});

} // namespace gframe
