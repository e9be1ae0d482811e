#include "gframe/frames.hpp"

#include "gframe/detail/parallel.hpp"

namespace gframe {

Frame::Frame(DenseMatrix synthesis)
  : synthesis_(std::move(synthesis))
{
  if (synthesis_.rows() < 1 || synthesis_.cols() < synthesis_.rows()) {
    throw std::invalid_argument("frame needs count >= dim >= 1, got " + std::to_string(synthesis_.cols()) +
                                " vectors in dimension " + std::to_string(synthesis_.rows()));
  }
  if (!synthesis_.allFinite()) { throw std::invalid_argument("frame vectors must be finite"); }
  if (numerical_rank(synthesis_) < synthesis_.rows()) {
    throw std::invalid_argument("frame vectors do not span R^" + std::to_string(synthesis_.rows()));
  }
  frame_operator_ = synthesis_ * synthesis_.transpose();
  gramian_ = synthesis_.transpose() * synthesis_;
}

namespace {

void checkSpectrum(DenseMatrix const &laplacian, SymmetricSpectrum<double> const &spec)
{
  Index const n = laplacian.rows();
  if (spec.eigenvalues.size() != n || spec.eigenvectors.rows() != n || spec.eigenvectors.cols() != n) {
    throw std::invalid_argument("spectrum size does not match the Laplacian");
  }
  for (Index j = 1; j < n; ++j) {
    if (spec.eigenvalues(j) > spec.eigenvalues(j - 1)) {
      throw std::invalid_argument("spectrum eigenvalues must be non-increasing");
    }
  }
  auto const &m = spec.eigenvectors;
  if ((m.transpose() * m - DenseMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("spectrum eigenvectors are not orthonormal");
  }
  double const scale = std::max(1.0, spec.eigenvalues.cwiseAbs().maxCoeff());
  if ((m * spec.eigenvalues.asDiagonal() * m.transpose() - laplacian).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw std::invalid_argument("spectrum does not reconstruct the Laplacian");
  }
}

} // namespace

GraphFrameBundle build_lg_frame(Graph const &g, JacobiOptions const &opts)
{
  auto const relabeled = relabel_by_component(g);
  return build_lg_frame(g, eigh_symmetric(laplacian_matrix(relabeled.graph), opts));
}

GraphFrameBundle build_lg_frame(Graph const &g, SymmetricSpectrum<double> laplacian_spectrum)
{
  for (int v = 0; v < g.vertexCount(); ++v) {
    if (g.degree(v) == 0) {
      throw std::invalid_argument("vertex " + std::to_string(v + 1) +
                                  " is isolated; graph frames need every component to have an edge");
    }
  }
  auto relabeled = relabel_by_component(g);
  DenseMatrix const laplacian = laplacian_matrix(relabeled.graph);
  checkSpectrum(laplacian, laplacian_spectrum);

  int const n = g.vertexCount();
  int const k = n - g.componentCount();
  if (laplacian_spectrum.nonzeroCount() != k) {
    throw NumericalError("Laplacian has " + std::to_string(laplacian_spectrum.nonzeroCount()) +
                         " nonzero eigenvalues, expected n - p = " + std::to_string(k));
  }
  Vector const root = laplacian_spectrum.eigenvalues.head(k).cwiseSqrt();
  DenseMatrix synthesis = root.asDiagonal() * laplacian_spectrum.eigenvectors.leftCols(k).transpose();

  std::vector<std::pair<int, int>> ranges;
  std::vector<int> component_of(n);
  int begin = 0;
  for (auto const &comp : relabeled.graph.components()) {
    int const end = begin + static_cast<int>(comp.size());
    ranges.emplace_back(begin, end);
    for (int i = begin; i < end; ++i) { component_of[i] = static_cast<int>(ranges.size()) - 1; }
    begin = end;
  }

  Frame frame(std::move(synthesis));
  double const residual = (frame.gramian() - laplacian).cwiseAbs().maxCoeff();
  return GraphFrameBundle{std::move(relabeled.graph),
                          std::move(relabeled.original),
                          std::move(relabeled.permutation),
                          std::move(frame),
                          std::move(laplacian_spectrum),
                          std::move(ranges),
                          std::move(component_of),
                          residual};
}

double verify_dual(Frame const &f, DenseMatrix const &h)
{
  if (h.rows() != f.dim() || h.cols() != f.count()) {
    throw std::invalid_argument("verify_dual: dual is " + std::to_string(h.rows()) + "x" + std::to_string(h.cols()) +
                                ", frame is " + std::to_string(f.dim()) + "x" + std::to_string(f.count()));
  }
  return (h * f.synthesis().transpose() - DenseMatrix::Identity(f.dim(), f.dim())).cwiseAbs().maxCoeff();
}

DualCandidate canonical_dual(GraphFrameBundle const &b)
{
  Index const k = b.frame.dim();
  std::vector<Vector> shifts(b.componentCount(), Vector::Zero(k));
  DenseMatrix realized = b.frame.frameOperator().llt().solve(b.frame.synthesis());
  double const residual = verify_dual(b.frame, realized);
  return DualCandidate{std::move(shifts), std::move(realized), residual};
}

DualCandidate dual_family_member(GraphFrameBundle const &b, std::vector<Vector> shifts)
{
  Index const k = b.frame.dim();
  if (static_cast<int>(shifts.size()) != b.componentCount()) {
    throw std::invalid_argument("dual_family_member: expected " + std::to_string(b.componentCount()) +
                                " shifts, got " + std::to_string(shifts.size()));
  }
  for (auto const &s : shifts) {
    if (s.size() != k) {
      throw std::invalid_argument("dual_family_member: shift has dimension " + std::to_string(s.size()) +
                                  ", frame dimension is " + std::to_string(k));
    }
  }
  DenseMatrix realized = canonical_dual(b).realized;
  for (Index i = 0; i < b.frame.count(); ++i) { realized.col(i) += shifts[b.component_of[i]]; }
  double const residual = verify_dual(b.frame, realized);
  if (residual > 1e-8) {
    throw NumericalError("dual_family_member: duality residual " + std::to_string(residual) + " exceeds 1e-8");
  }
  return DualCandidate{std::move(shifts), std::move(realized), residual};
}

std::optional<DenseMatrix> unitary_equivalence_witness(Frame const &f1, Frame const &f2)
{
  if (f1.dim() != f2.dim() || f1.count() != f2.count()) {
    throw std::invalid_argument("unitary_equivalence_witness: frames differ in shape");
  }
  if ((f1.gramian() - f2.gramian()).cwiseAbs().maxCoeff() > 1e-8) { return std::nullopt; }
  DenseMatrix const cross = f1.synthesis() * f2.synthesis().transpose();
  Eigen::JacobiSVD<DenseMatrix> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  DenseMatrix u = svd.matrixU() * svd.matrixV().transpose();
  if ((u * f2.synthesis() - f1.synthesis()).cwiseAbs().maxCoeff() > 1e-7) { return std::nullopt; }
  return u;
}

int spark(Frame const &f, SparkOptions const &opts)
{
  int const n = static_cast<int>(f.count());
  int const k = static_cast<int>(f.dim());
  std::uint64_t total = 0;
  for (int s = 1; s <= std::min(k + 1, n); ++s) {
    std::uint64_t const c = detail::binomial(n, s);
    total = (c > UINT64_MAX - total) ? UINT64_MAX : total + c;
  }
  if (total > opts.subset_budget) {
    throw GuardExceeded("spark enumeration needs " + std::to_string(total) + " subsets (budget " +
                        std::to_string(opts.subset_budget) + "); use spark_via_components for graph frames");
  }
  for (int s = 1; s <= std::min(k, n); ++s) {
    auto const hits = detail::parallel_map<char>(n - s + 1, opts.workers, [&](int first) -> char {
      bool dependent = false;
      detail::for_each_combination_from(n, s, first, [&](std::vector<int> const &subset) {
        dependent = numerical_rank(f.synthesis()(Eigen::all, subset), opts.rank_tol) < s;
        return !dependent;
      });
      return dependent ? 1 : 0;
    });
    if (std::find(hits.begin(), hits.end(), 1) != hits.end()) { return s; }
  }
  return k + 1;
}

bool is_full_spark(Frame const &f, SparkOptions const &opts)
{
  return spark(f, opts) == static_cast<int>(f.dim()) + 1;
}

int spark_via_components(Graph const &g)
{
  int smallest = g.vertexCount();
  for (auto const &comp : g.components()) {
    if (comp.size() == 1) {
      throw std::invalid_argument("vertex " + std::to_string(comp[0] + 1) + " is an isolated component");
    }
    smallest = std::min(smallest, static_cast<int>(comp.size()));
  }
  return smallest;
}

} // namespace gframe
