#pragma once

#include "graph.hpp"
#include "spectral.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace gframe {

// A finite frame {f_i} in R^k stored as its k x n synthesis matrix (column i is f_i).
class Frame
{
public:
  // Throws std::invalid_argument unless n >= k and the columns span R^k.
  explicit Frame(DenseMatrix synthesis);

  Index dim() const { return synthesis_.rows(); }
  Index count() const { return synthesis_.cols(); }
  DenseMatrix const &synthesis() const { return synthesis_; }
  auto vector(Index i) const { return synthesis_.col(i); }
  DenseMatrix const &frameOperator() const { return frame_operator_; } // T* T = synthesis * synthesis^T
  DenseMatrix const &gramian() const { return gramian_; }              // synthesis^T * synthesis

private:
  DenseMatrix synthesis_;
  DenseMatrix frame_operator_;
  DenseMatrix gramian_;
};

// Frame built from the nonzero Laplacian eigenpairs of a graph, with the
// component-contiguous relabeling it was built on.
struct GraphFrameBundle
{
  Graph graph;                   // component-contiguous labels
  std::vector<int> original;     // original[i] = input label of bundle vertex i
  std::vector<int> permutation;  // permutation[input label] = bundle vertex
  Frame frame;
  SymmetricSpectrum<double> spectrum; // of laplacian_matrix(graph)
  std::vector<std::pair<int, int>> component_ranges; // [begin, end) in bundle labels
  std::vector<int> component_of;
  double gramian_residual;       // max |G - L|

  int componentCount() const { return static_cast<int>(component_ranges.size()); }
};

// Definition: B = diag(sqrt(lambda_1..lambda_k)) * M_1^T over the k = n - p nonzero eigenvalues.
// Throws std::invalid_argument for graphs with an isolated vertex (zero frame vector).
GraphFrameBundle build_lg_frame(Graph const &g, JacobiOptions const &opts = {});

// Same construction from a caller-supplied eigendecomposition of the Laplacian
// of relabel_by_component(g).graph (any orthonormal eigenbasis is accepted;
// it is validated by reconstruction).
GraphFrameBundle build_lg_frame(Graph const &g, SymmetricSpectrum<double> laplacian_spectrum);

// Dual written as canonical dual plus one shift per component: h_i = S^-1 f_i + shift[c(i)].
struct DualCandidate
{
  std::vector<Vector> shifts;
  DenseMatrix realized; // k x n, column i is h_i
  double residual;      // max |sum_i h_i f_i^T - I|
};

DualCandidate canonical_dual(GraphFrameBundle const &b);

// Throws std::invalid_argument on shape mismatch, NumericalError if the duality residual exceeds 1e-8.
DualCandidate dual_family_member(GraphFrameBundle const &b, std::vector<Vector> shifts);

// max |sum_i h_i f_i^T - I|.
double verify_dual(Frame const &f, DenseMatrix const &h);

// Orthogonal U with U * f2 = f1 when the two Gramians agree (orthogonal Procrustes).
std::optional<DenseMatrix> unitary_equivalence_witness(Frame const &f1, Frame const &f2);

struct SparkOptions
{
  double rank_tol = 1e-8;
  std::uint64_t subset_budget = 2'000'000; // summed C(n, s) over s <= k + 1
  int workers = 1;
};

// Size of the smallest linearly dependent subset of frame vectors, by
// enumeration; k + 1 when every k-subset is a basis.
int spark(Frame const &f, SparkOptions const &opts = {});

bool is_full_spark(Frame const &f, SparkOptions const &opts = {});

// Spark of any frame generated by g: the smallest component size.
int spark_via_components(Graph const &g);

} // namespace gframe
