#include "gframe/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace gframe {

Graph::Graph(int vertex_count, std::vector<Edge> edges)
  : n_(vertex_count)
  , adjacency_(vertex_count > 0 ? vertex_count : 0)
  , component_of_(vertex_count > 0 ? vertex_count : 0, -1)
{
  if (n_ < 1) { throw std::invalid_argument("graph needs at least one vertex"); }
  std::set<Edge> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) { throw std::invalid_argument("edge endpoint out of range"); }
    if (u == v) { throw std::invalid_argument("self-loop at vertex " + std::to_string(u + 1)); }
    if (u > v) { std::swap(u, v); }
    if (!seen.insert({u, v}).second) {
      throw std::invalid_argument("duplicate edge " + std::to_string(u + 1) + " " + std::to_string(v + 1));
    }
  }
  edges_.assign(seen.begin(), seen.end());
  for (auto [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto &nbrs : adjacency_) { std::sort(nbrs.begin(), nbrs.end()); }

  for (int root = 0; root < n_; ++root) {
    if (component_of_[root] >= 0) { continue; }
    int const id = static_cast<int>(components_.size());
    std::vector<int> members;
    std::queue<int> frontier;
    frontier.push(root);
    component_of_[root] = id;
    while (!frontier.empty()) {
      int const v = frontier.front();
      frontier.pop();
      members.push_back(v);
      for (int w : adjacency_[v]) {
        if (component_of_[w] < 0) {
          component_of_[w] = id;
          frontier.push(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    components_.push_back(std::move(members));
  }
}

namespace {

bool isBlank(std::string const &line)
{
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

bool isComment(std::string const &line)
{
  auto const first = line.find_first_not_of(" \t\r");
  return first != std::string::npos && line[first] == '#';
}

// Reads exactly `count` integers from the line, rejecting trailing garbage.
bool readInts(std::string const &line, long long *out, int count)
{
  std::istringstream is(line);
  for (int i = 0; i < count; ++i) {
    if (!(is >> out[i])) { return false; }
  }
  std::string rest;
  return !(is >> rest);
}

} // namespace

Graph parse_edge_list(std::string_view text)
{
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool have_header = false;
  long long n = 0, m = 0;
  std::vector<Graph::Edge> edges;
  std::set<Graph::Edge> seen;

  while (std::getline(in, line)) {
    ++line_no;
    if (isComment(line) || isBlank(line)) { continue; }
    long long vals[2];
    if (!have_header) {
      if (!readInts(line, vals, 2)) { throw ParseError("malformed header, expected \"n m\"", line_no); }
      n = vals[0];
      m = vals[1];
      if (n < 1) { throw ParseError("vertex count must be positive", line_no); }
      if (m < 0) { throw ParseError("edge count must be nonnegative", line_no); }
      have_header = true;
      continue;
    }
    if (!readInts(line, vals, 2)) { throw ParseError("malformed edge line, expected \"u v\"", line_no); }
    auto const [u, v] = std::pair{vals[0], vals[1]};
    if (u < 1 || u > n || v < 1 || v > n) {
      throw ParseError("vertex index out of range [1," + std::to_string(n) + "]", line_no);
    }
    if (u == v) { throw ParseError("self-loop at vertex " + std::to_string(u), line_no); }
    Graph::Edge e{static_cast<int>(std::min(u, v) - 1), static_cast<int>(std::max(u, v) - 1)};
    if (!seen.insert(e).second) {
      throw ParseError("duplicate edge " + std::to_string(u) + " " + std::to_string(v), line_no);
    }
    if (static_cast<long long>(edges.size()) == m) {
      throw ParseError("more edge lines than declared (" + std::to_string(m) + ")", line_no);
    }
    edges.push_back(e);
  }
  if (!have_header) { throw ParseError("missing header"); }
  if (static_cast<long long>(edges.size()) != m) {
    throw ParseError("declared " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  }
  return Graph(static_cast<int>(n), std::move(edges));
}

Graph load_edge_list(std::filesystem::path const &path)
{
  std::ifstream file(path);
  if (!file) { throw ParseError("cannot open " + path.string()); }
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_edge_list(buffer.str());
}

DenseMatrix adjacency_matrix(Graph const &g)
{
  return adjacency_counts(g).cast<double>();
}

IntMatrix adjacency_counts(Graph const &g)
{
  IntMatrix a = IntMatrix::Zero(g.vertexCount(), g.vertexCount());
  for (auto [u, v] : g.edges()) {
    a(u, v) = 1;
    a(v, u) = 1;
  }
  return a;
}

DenseMatrix degree_matrix(Graph const &g)
{
  DenseMatrix d = DenseMatrix::Zero(g.vertexCount(), g.vertexCount());
  for (int v = 0; v < g.vertexCount(); ++v) { d(v, v) = g.degree(v); }
  return d;
}

DenseMatrix laplacian_matrix(Graph const &g)
{
  return degree_matrix(g) - adjacency_matrix(g);
}

std::vector<int> degree_sequence(Graph const &g)
{
  std::vector<int> d(g.vertexCount());
  for (int v = 0; v < g.vertexCount(); ++v) { d[v] = g.degree(v); }
  return d;
}

std::optional<int> is_regular(Graph const &g)
{
  int const r = g.degree(0);
  for (int v = 1; v < g.vertexCount(); ++v) {
    if (g.degree(v) != r) { return std::nullopt; }
  }
  return r;
}

bool Relabeling::isIdentity() const
{
  for (std::size_t i = 0; i < permutation.size(); ++i) {
    if (permutation[i] != static_cast<int>(i)) { return false; }
  }
  return true;
}

Relabeling relabel_by_component(Graph const &g)
{
  int const n = g.vertexCount();
  std::vector<int> original;
  original.reserve(n);
  for (auto const &comp : g.components()) { original.insert(original.end(), comp.begin(), comp.end()); }
  std::vector<int> permutation(n);
  for (int i = 0; i < n; ++i) { permutation[original[i]] = i; }

  std::vector<Graph::Edge> edges;
  edges.reserve(g.edges().size());
  for (auto [u, v] : g.edges()) { edges.emplace_back(permutation[u], permutation[v]); }
  return Relabeling{Graph(n, std::move(edges)), std::move(permutation), std::move(original)};
}

Graph induced_subgraph(Graph const &g, std::span<int const> vertices)
{
  std::vector<int> local(g.vertexCount(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) { local[vertices[i]] = static_cast<int>(i); }
  std::vector<Graph::Edge> edges;
  for (auto [u, v] : g.edges()) {
    if (local[u] >= 0 && local[v] >= 0) { edges.emplace_back(local[u], local[v]); }
  }
  return Graph(static_cast<int>(vertices.size()), std::move(edges));
}

} // namespace gframe
