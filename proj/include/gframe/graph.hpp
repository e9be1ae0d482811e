#pragma once

#include "types.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace gframe {

// Simple undirected graph. Vertices are 0-based internally; the edge-list
// reader and all report writers use 1-based labels.
class Graph
{
public:
  using Edge = std::pair<int, int>; // first < second

  // Throws std::invalid_argument on self-loops, duplicates or out-of-range endpoints.
  Graph(int vertex_count, std::vector<Edge> edges);

  int vertexCount() const { return n_; }
  int edgeCount() const { return static_cast<int>(edges_.size()); }
  std::vector<Edge> const &edges() const { return edges_; }
  std::vector<int> const &neighbors(int v) const { return adjacency_[v]; }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }

  // Connected components as sorted vertex lists, ordered by smallest vertex.
  std::vector<std::vector<int>> const &components() const { return components_; }
  int componentCount() const { return static_cast<int>(components_.size()); }
  int componentOf(int v) const { return component_of_[v]; }
  bool isConnected() const { return components_.size() == 1; }

private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::vector<int>> components_;
  std::vector<int> component_of_;
};

// Edge-list format: '#' comment lines, header "n m", then m lines "u v" (1-based).
Graph parse_edge_list(std::string_view text);
Graph load_edge_list(std::filesystem::path const &path);

DenseMatrix adjacency_matrix(Graph const &g);
DenseMatrix degree_matrix(Graph const &g);
DenseMatrix laplacian_matrix(Graph const &g);
IntMatrix adjacency_counts(Graph const &g);

std::vector<int> degree_sequence(Graph const &g);

// Common degree r when the graph is r-regular.
std::optional<int> is_regular(Graph const &g);

struct Relabeling
{
  Graph graph;
  // permutation[old] = new
  std::vector<int> permutation;
  // original[new] = old
  std::vector<int> original;

  bool isIdentity() const;
};

// Isomorphic copy whose components occupy contiguous label ranges. Components
// keep their order (by smallest vertex) and vertices keep their relative order.
Relabeling relabel_by_component(Graph const &g);

// Subgraph on the given vertices, relabeled 0..size-1 in the given order.
Graph induced_subgraph(Graph const &g, std::span<int const> vertices);

} // namespace gframe
