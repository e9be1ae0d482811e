#include "gframe/report.hpp"

#include "gframe/erasure.hpp"
#include "gframe/frames.hpp"
#include "gframe/walk_regularity.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace gframe {

using Json = nlohmann::ordered_json;

namespace {

std::map<std::string, Command> const commands{
  {"graph-info", Command::GraphInfo}, {"frame-build", Command::FrameBuild}, {"frame-spark", Command::FrameSpark},
  {"od-verdict", Command::OdVerdict}, {"od-search", Command::OdSearch},     {"dr-table", Command::DrTable},
};

std::string formatName(OutputFormat f)
{
  switch (f) {
  case OutputFormat::Json: return "json";
  case OutputFormat::Csv: return "csv";
  case OutputFormat::Text: return "text";
  }
  return "json";
}

} // namespace

std::optional<Command> parse_command(std::string const &name)
{
  auto const it = commands.find(name);
  if (it == commands.end()) { return std::nullopt; }
  return it->second;
}

std::string command_name(Command c)
{
  for (auto const &[name, value] : commands) {
    if (value == c) { return name; }
  }
  return "graph-info";
}

void validate(AnalysisConfig const &config)
{
  if (!(config.zero_tol > 0) || !(config.tie_tol > 0) || !(config.grouping_tol > 0)) {
    throw std::invalid_argument("tolerances must be positive");
  }
  if (config.trials < 1) { throw std::invalid_argument("trials must be >= 1"); }
  if (!(config.radius > 0)) { throw std::invalid_argument("radius must be positive"); }
  if (config.workers < 1) { throw std::invalid_argument("workers must be >= 1"); }
  if (config.max_r < 1) { throw std::invalid_argument("max-r must be >= 1"); }
  if (config.sample < 0) { throw std::invalid_argument("sample must be >= 0"); }
}

double round_report(double x)
{
  if (!std::isfinite(x)) { return x; }
  if (x == 0.0) { return 0.0; }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

namespace {

void roundFloats(Json &j)
{
  if (j.is_number_float()) {
    j = round_report(j.get<double>());
  } else if (j.is_structured()) {
    for (auto &child : j) { roundFloats(child); }
  }
}

Json toJson(Vector const &v)
{
  return Json(std::vector<double>(v.data(), v.data() + v.size()));
}

// Eigenvalues with |lambda| <= zero_tol are reported as exactly 0.
Json spectrumJson(SymmetricSpectrum<double> const &spec)
{
  Vector values = spec.eigenvalues;
  for (Index j = 0; j < values.size(); ++j) {
    if (spec.isZero(j)) { values(j) = 0.0; }
  }
  return toJson(values);
}

Json oneBased(std::vector<int> labels)
{
  for (int &v : labels) { ++v; }
  return Json(labels);
}

Json columnsJson(DenseMatrix const &m)
{
  Json cols = Json::array();
  for (Index j = 0; j < m.cols(); ++j) { cols.push_back(toJson(m.col(j))); }
  return cols;
}

// Bundle-order columns put back in input-label order.
DenseMatrix inputOrderColumns(GraphFrameBundle const &b, DenseMatrix const &bundle_columns)
{
  DenseMatrix out(bundle_columns.rows(), bundle_columns.cols());
  for (Index i = 0; i < bundle_columns.cols(); ++i) { out.col(b.original[i]) = bundle_columns.col(i); }
  return out;
}

Json walkReportJson(WalkRegularityReport const &r)
{
  Json j;
  j["is_walk_regular"] = r.is_walk_regular;
  j["method"] = r.method == WalkRegularityReport::Method::Spectral ? "spectral" : "definition";
  j["distinct_nonzero_eigenvalues"] = r.distinct_nonzero_eigenvalues;
  Json powers = Json::array();
  for (auto const &pd : r.checked_powers) { powers.push_back({{"p", pd.power}, {"diagonal", pd.diagonal}}); }
  j["checked_powers"] = std::move(powers);
  if (r.first_violation) {
    auto const &v = *r.first_violation;
    j["first_violation"] = {{"power", v.power},
                            {"vertices", {v.first_vertex + 1, v.second_vertex + 1}},
                            {"closed_walks", {v.first_count, v.second_count}}};
  }
  return j;
}

Json graphJson(Graph const &g, AnalysisConfig const &config, bool detailed)
{
  Json j;
  j["n"] = g.vertexCount();
  j["m"] = g.edgeCount();
  Json comps = Json::array();
  for (auto const &c : g.components()) { comps.push_back(oneBased(c)); }
  j["components"] = std::move(comps);
  j["degrees"] = degree_sequence(g);
  if (auto const r = is_regular(g)) {
    j["regular"] = *r;
  } else {
    j["regular"] = false;
  }

  auto const walk = is_walk_regular(g, config.grouping_tol);
  Json wj = walkReportJson(walk);
  try {
    auto const def = is_walk_regular_definition(g, g.vertexCount());
    wj["definition_check"] = {{"p_max", g.vertexCount()},
                              {"is_walk_regular", def.is_walk_regular},
                              {"agrees", def.is_walk_regular == walk.is_walk_regular}};
  } catch (NumericalError const &e) {
    wj["definition_check"] = {{"p_max", g.vertexCount()}, {"error", e.what()}};
  }
  j["walk_regular"] = std::move(wj);

  if (detailed) {
    JacobiOptions jopts;
    jopts.zero_tol_factor = config.zero_tol;
    auto const lspec = eigh_symmetric(laplacian_matrix(g), jopts);
    auto const aspec = eigh_symmetric(adjacency_matrix(g), jopts);
    j["laplacian_spectrum"] = spectrumJson(lspec);
    j["laplacian_rank"] = numerical_rank(laplacian_matrix(g), config.zero_tol);
    j["adjacency_spectrum"] = spectrumJson(aspec);
    DenseMatrix const lplus = moore_penrose(lspec);
    DenseMatrix const aplus = moore_penrose(aspec);
    auto const ldiag = equal_diagonal_check(lplus, 1e-9);
    auto const adiag = equal_diagonal_check(aplus, 1e-9);
    j["pseudoinverse"] = {{"laplacian_diagonal", toJson(lplus.diagonal())},
                          {"laplacian_diagonal_spread", ldiag.spread},
                          {"laplacian_equal_diagonal", ldiag.equal},
                          {"adjacency_diagonal", toJson(aplus.diagonal())},
                          {"adjacency_diagonal_spread", adiag.spread},
                          {"adjacency_equal_diagonal", adiag.equal}};
  }
  return j;
}

Json frameJson(GraphFrameBundle const &b, AnalysisConfig const &config)
{
  Frame const &f = b.frame;
  DenseMatrix const &s = f.frameOperator();
  DenseMatrix const off = s - DenseMatrix(s.diagonal().asDiagonal());
  DenseMatrix const canonical = canonical_dual(b).realized;

  std::vector<double> norms_sq(f.count()), dual_norms(f.count());
  for (Index i = 0; i < f.count(); ++i) {
    norms_sq[b.original[i]] = f.vector(i).squaredNorm();
    dual_norms[b.original[i]] = canonical.col(i).norm();
  }

  Json j;
  j["dim"] = f.dim();
  j["count"] = f.count();
  j["gramian_residual"] = b.gramian_residual;
  j["frame_operator_diag"] = toJson(s.diagonal());
  j["frame_operator_offdiag_max"] = off.cwiseAbs().maxCoeff();
  j["norms_squared"] = norms_sq;
  j["canonical_dual_norms"] = dual_norms;
  j["canonical_dual_residual"] = verify_dual(f, canonical);
  j["relabeled"] = false;
  bool relabeled = false;
  for (std::size_t i = 0; i < b.original.size(); ++i) { relabeled |= b.original[i] != static_cast<int>(i); }
  if (relabeled) {
    j["relabeled"] = true;
    j["bundle_order"] = oneBased(b.original);
  }
  if (config.emit_vectors) {
    j["vectors"] = columnsJson(inputOrderColumns(b, f.synthesis()));
    j["basis_dependent"] = true;
  }
  return j;
}

Json sparkJson(GraphFrameBundle const &b, AnalysisConfig const &config)
{
  Json j;
  int const via_components = spark_via_components(b.graph);
  j["via_components"] = via_components;
  SparkOptions opts;
  opts.workers = config.workers;
  try {
    int const brute = spark(b.frame, opts);
    j["brute_force"] = brute;
    j["value"] = brute;
    j["method_agreement"] = brute == via_components;
  } catch (GuardExceeded const &e) {
    j["value"] = via_components;
    j["brute_force_skipped"] = e.what();
  }
  j["full_spark"] = j["value"].get<int>() == b.frame.dim() + 1;
  return j;
}

Json shiftsJson(std::vector<Vector> const &shifts)
{
  Json j = Json::array();
  for (auto const &s : shifts) { j.push_back(toJson(s)); }
  return j;
}

Json searchJson(SearchResult const &s, AnalysisConfig const &config)
{
  return {{"d1", s.d1},
          {"canonical_d1", s.canonical_d1},
          {"improved", s.improved},
          {"improvement", s.canonical_d1 - s.d1},
          {"evaluations", s.evaluations},
          {"trials", config.trials},
          {"radius", config.radius},
          {"seed", config.seed},
          {"shifts", shiftsJson(s.shifts)},
          {"basis_dependent", true}};
}

Json erasureJson(GraphFrameBundle const &b, ErasureReport const &r, AnalysisConfig const &config)
{
  Json j;
  j["d1_canonical"] = r.d1_canonical;
  j["per_vertex_products"] = r.per_vertex_products;
  j["lambda1_set"] = oneBased(r.lambda1);
  j["constancy"] = {{"is_constant", r.constancy.is_constant}, {"spread", r.constancy.spread}};
  j["verdict"] = std::string(to_string(r.verdict));

  Json basis;
  basis["rule"] = r.basis.rule;
  basis["note"] = r.basis.note;
  if (!r.basis.walk_regular_components.empty()) {
    Json comps = Json::array();
    for (int c : r.basis.walk_regular_components) {
      std::vector<int> members;
      for (int i = b.component_ranges[c].first; i < b.component_ranges[c].second; ++i) {
        members.push_back(b.original[i]);
      }
      std::sort(members.begin(), members.end());
      comps.push_back(oneBased(members));
    }
    basis["walk_regular_components"] = std::move(comps);
  }
  if (r.basis.dependence) {
    auto const &d = *r.basis.dependence;
    basis["dependence_witness"] = {{"lambda1", oneBased(d.lambda1)},
                                   {"lambda1_rank", d.lambda1_rank},
                                   {"coefficients", d.coefficients},
                                   {"dependence_residual", d.dependence_residual}};
  }
  if (r.basis.alternate) {
    auto const &a = *r.basis.alternate;
    std::vector<int> members;
    for (int i = b.component_ranges[a.component].first; i < b.component_ranges[a.component].second; ++i) {
      members.push_back(b.original[i]);
    }
    std::sort(members.begin(), members.end());
    basis["alternate_dual"] = {{"shifted_component", oneBased(members)},
                               {"d1", a.d1},
                               {"shifts", shiftsJson(a.shifts)},
                               {"basis_dependent", true}};
  }
  j["verdict_basis"] = std::move(basis);
  if (r.search_best) { j["search_best"] = searchJson(*r.search_best, config); }
  return j;
}

std::vector<Vector> loadShifts(std::string const &path, GraphFrameBundle const &b)
{
  std::ifstream file(path);
  if (!file) { throw ParseError("cannot open shifts file " + path); }
  Json j;
  try {
    j = Json::parse(file);
  } catch (Json::parse_error const &e) {
    throw ParseError("shifts file " + path + ": " + e.what());
  }
  if (!j.is_array()) { throw ParseError("shifts file must hold an array of vectors"); }
  std::vector<Vector> shifts;
  for (auto const &row : j) {
    if (!row.is_array()) { throw ParseError("shifts file must hold an array of vectors"); }
    Vector v(static_cast<Index>(row.size()));
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (!row[i].is_number()) { throw ParseError("shift entries must be numbers"); }
      v(static_cast<Index>(i)) = row[i].get<double>();
    }
    shifts.push_back(std::move(v));
  }
  if (static_cast<int>(shifts.size()) != b.componentCount()) {
    throw std::invalid_argument("shifts file has " + std::to_string(shifts.size()) + " vectors, graph has " +
                                std::to_string(b.componentCount()) + " components");
  }
  return shifts;
}

Json drEntry(Frame const &f, DenseMatrix const &dual, int r, AnalysisConfig const &config)
{
  ErasureOptions opts;
  opts.workers = config.workers;
  try {
    auto const e = d_r(f, dual, r, opts);
    return {{"value", e.value}, {"erased", oneBased(e.erased)}, {"exact", true}};
  } catch (GuardExceeded const &) {
    if (config.sample < 1) { throw; }
    auto const e = d_r_lower_bound(f, dual, r, config.sample, config.seed);
    return {{"value", e.value}, {"erased", oneBased(e.erased)}, {"exact", false}, {"kind", "monte_carlo_lower_bound"}};
  }
}

Json drTableJson(GraphFrameBundle const &b, AnalysisConfig const &config)
{
  DenseMatrix const canonical = canonical_dual(b).realized;
  std::optional<DualCandidate> given;
  if (!config.shifts_path.empty()) { given = dual_family_member(b, loadShifts(config.shifts_path, b)); }
  // Erased subsets are reported in input labels: map bundle columns back first.
  Frame const frame(inputOrderColumns(b, b.frame.synthesis()));
  DenseMatrix const canonical_in = inputOrderColumns(b, canonical);

  Json rows = Json::array();
  int const r_max = std::min(config.max_r, static_cast<int>(b.frame.count()) - 1);
  for (int r = 1; r <= r_max; ++r) {
    // Evaluated before the initializer list: a throw inside one leaks its temporaries.
    Json entry = drEntry(frame, canonical_in, r, config);
    Json row{{"r", r}, {"canonical", std::move(entry)}};
    if (given) { row["given"] = drEntry(frame, inputOrderColumns(b, given->realized), r, config); }
    rows.push_back(std::move(row));
  }
  // D^r need not grow with r; report every drop between exact neighbours.
  auto drops = [&](char const *key) {
    Json out = Json::array();
    for (std::size_t i = 1; i < rows.size(); ++i) {
      auto const &lo = rows[i - 1][key], &hi = rows[i][key];
      if (lo["exact"] == true && hi["exact"] == true && hi["value"].get<double>() < lo["value"].get<double>()) {
        out.push_back(rows[i]["r"]);
      }
    }
    return out;
  };
  Json monotonicity{{"canonical_decreases_at", drops("canonical")}};
  if (given) { monotonicity["given_decreases_at"] = drops("given"); }

  Json j;
  j["dr_table"] = std::move(rows);
  j["dr_monotonicity"] = std::move(monotonicity);
  if (given) { j["given_shifts"] = shiftsJson(given->shifts); }
  return j;
}

Json configJson(AnalysisConfig const &config)
{
  return {{"zero_tol", config.zero_tol}, {"tie_tol", config.tie_tol}, {"grouping_tol", config.grouping_tol},
          {"seed", config.seed},         {"trials", config.trials},   {"radius", config.radius},
          {"emit_vectors", config.emit_vectors}, {"output_format", formatName(config.output_format)},
          {"workers", config.workers},   {"max_r", config.max_r},     {"sample", config.sample}};
}

} // namespace

Json build_report(AnalysisConfig const &config, Graph const &g)
{
  validate(config);
  Json report;
  report["tool_version"] = tool_version;
  report["command"] = command_name(config.command);
  report["input"] = config.input_path;
  report["config"] = configJson(config);
  report["graph"] = graphJson(g, config, config.command == Command::GraphInfo);

  if (config.command != Command::GraphInfo) {
    JacobiOptions jopts;
    jopts.zero_tol_factor = config.zero_tol;
    auto const bundle = build_lg_frame(g, jopts);
    report["frame"] = frameJson(bundle, config);
    switch (config.command) {
    case Command::FrameSpark: report["spark"] = sparkJson(bundle, config); break;
    case Command::OdVerdict:
    case Command::OdSearch: {
      VerdictOptions vopts;
      vopts.tie_tol = config.tie_tol;
      vopts.grouping_tol = config.grouping_tol;
      vopts.search = {config.trials, config.radius, config.seed, config.workers, 1e-9};
      vopts.always_search = config.command == Command::OdSearch;
      report["erasure"] = erasureJson(bundle, canonical_verdict(bundle, vopts), config);
      break;
    }
    case Command::DrTable: report["erasure"] = drTableJson(bundle, config); break;
    default: break;
    }
  }
  roundFloats(report);
  return report;
}

namespace {

std::string csvNumber(Json const &v)
{
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
    return buf;
  }
  if (v.is_boolean()) { return v.get<bool>() ? "true" : "false"; }
  return v.dump();
}

void writeCsv(Json const &report, std::ostream &out)
{
  if (report.contains("erasure") && report["erasure"].contains("dr_table")) {
    bool const given = !report["erasure"]["dr_table"].empty() && report["erasure"]["dr_table"][0].contains("given");
    out << "r,canonical,canonical_exact" << (given ? ",given,given_exact" : "") << "\n";
    for (auto const &row : report["erasure"]["dr_table"]) {
      out << row["r"].get<int>() << "," << csvNumber(row["canonical"]["value"]) << ","
          << csvNumber(row["canonical"]["exact"]);
      if (given) { out << "," << csvNumber(row["given"]["value"]) << "," << csvNumber(row["given"]["exact"]); }
      out << "\n";
    }
    return;
  }
  auto const &g = report["graph"];
  int const n = g["n"].get<int>();
  std::vector<int> component(n);
  for (std::size_t c = 0; c < g["components"].size(); ++c) {
    for (auto const &v : g["components"][c]) { component[v.get<int>() - 1] = static_cast<int>(c) + 1; }
  }
  bool const frame = report.contains("frame");
  bool const erasure = report.contains("erasure");
  bool const pinv = g.contains("pseudoinverse");
  out << "vertex,degree,component";
  if (pinv) { out << ",laplacian_pinv_diag"; }
  if (frame) { out << ",norm_squared,canonical_dual_norm"; }
  if (erasure) { out << ",product,in_lambda1"; }
  out << "\n";
  std::vector<bool> in_lambda1(n, false);
  if (erasure) {
    for (auto const &v : report["erasure"]["lambda1_set"]) { in_lambda1[v.get<int>() - 1] = true; }
  }
  for (int i = 0; i < n; ++i) {
    out << i + 1 << "," << g["degrees"][i].get<int>() << "," << component[i];
    if (pinv) { out << "," << csvNumber(g["pseudoinverse"]["laplacian_diagonal"][i]); }
    if (frame) {
      out << "," << csvNumber(report["frame"]["norms_squared"][i]) << ","
          << csvNumber(report["frame"]["canonical_dual_norms"][i]);
    }
    if (erasure) {
      out << "," << csvNumber(report["erasure"]["per_vertex_products"][i]) << ","
          << (in_lambda1[i] ? "true" : "false");
    }
    out << "\n";
  }
}

void writeText(Json const &node, std::string const &path, std::ostream &out)
{
  if (node.is_object()) {
    for (auto const &[key, value] : node.items()) { writeText(value, path.empty() ? key : path + "." + key, out); }
    return;
  }
  out << path << ": " << (node.is_string() ? node.get<std::string>() : node.dump()) << "\n";
}

} // namespace

int run(AnalysisConfig const &config, std::ostream &out, std::ostream &err)
{
  try {
    validate(config);
    Graph const g = load_edge_list(config.input_path);
    Json const report = build_report(config, g);
    if (config.emit_vectors && report.contains("frame") && report["frame"].contains("vectors")) {
      err << "warning: frame vectors depend on the chosen eigenbasis; only unitary invariants are canonical\n";
    }
    switch (config.output_format) {
    case OutputFormat::Json: out << report.dump(2) << "\n"; break;
    case OutputFormat::Csv: writeCsv(report, out); break;
    case OutputFormat::Text: writeText(report, "", out); break;
    }
    return 0;
  } catch (ParseError const &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (std::invalid_argument const &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (GuardExceeded const &e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (NumericalError const &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

} // namespace gframe
