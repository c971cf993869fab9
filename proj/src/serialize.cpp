#include "mdsrepair/serialize.hpp"

#include <algorithm>

namespace mdsrepair {
namespace {

template <class T>
T get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::MalformedInput, std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::MalformedInput, std::string("bad value for '") + key + "': " + e.what());
  }
}

void check_version(const Json& j) {
  if (get<int>(j, "v") != kSchemaVersion) fail(ErrorKind::MalformedInput, "unsupported schema version");
}

Json vec_to_json(std::span<const Symbol> v) { return Json(std::vector<Symbol>(v.begin(), v.end())); }

}  // namespace

Json tower_to_json(const FieldTower& t) {
  Json j;
  j["p"] = t.p();
  j["m"] = t.m();
  j["ell"] = t.ell();
  j["base_poly"] = t.base_poly();
  j["ext_poly"] = t.ext_poly();
  return j;
}

TowerPtr tower_from_json(const Json& j) {
  const auto p = get<std::uint32_t>(j, "p");
  const auto m = get<std::uint32_t>(j, "m");
  const auto ell = get<std::uint32_t>(j, "ell");
  auto base_poly = get<std::vector<Symbol>>(j, "base_poly");
  auto ext_poly = get<std::vector<Symbol>>(j, "ext_poly");
  return std::make_shared<const FieldTower>(
      FieldTower::build(p, m, ell, std::move(base_poly), std::move(ext_poly)));
}

Json matrix_to_json(const Matrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["entries"] = m.entries();
  return j;
}

Matrix matrix_from_json(const Json& j) {
  const auto rows = get<std::size_t>(j, "rows");
  const auto cols = get<std::size_t>(j, "cols");
  auto entries = get<std::vector<Symbol>>(j, "entries");
  if (entries.size() != rows * cols) fail(ErrorKind::MalformedInput, "matrix entry count mismatch");
  return Matrix(rows, cols, std::move(entries));
}

Json rational_to_json(const Rational& x) {
  Json j;
  j["num"] = x.num;
  j["den"] = x.den;
  return j;
}

Json code_to_json(const Realization& re, const std::vector<std::string>& labels) {
  Json j;
  j["v"] = kSchemaVersion;
  j["tower"] = tower_to_json(re.skeleton().tower());
  j["ell"] = re.ell();
  j["r"] = re.r();
  j["n"] = re.n();
  Json nodes = Json::array();
  for (std::size_t i = 0; i < re.n(); ++i) {
    Json node;
    node["label"] = i < labels.size() ? labels[i] : std::string("free");
    Json cols = Json::array();
    for (std::size_t t = 0; t < re.ell(); ++t) cols.push_back(re.block(i).column(t));
    node["H"] = std::move(cols);
    Json pts = Json::array();
    for (const Point& pt : re.column_set(i)) pts.push_back(vec_to_json(pt));
    node["X"] = std::move(pts);
    nodes.push_back(std::move(node));
  }
  j["nodes"] = std::move(nodes);
  return j;
}

LoadedCode code_from_json(const Json& j) {
  check_version(j);
  TowerPtr tower = tower_from_json(get<Json>(j, "tower"));
  const auto ell = get<std::size_t>(j, "ell");
  const auto r = get<std::size_t>(j, "r");
  const auto n = get<std::size_t>(j, "n");
  if (ell != tower->ell()) fail(ErrorKind::MalformedInput, "ell disagrees with the tower");
  const auto nodes = get<Json>(j, "nodes");
  if (!nodes.is_array() || nodes.size() != n) fail(ErrorKind::MalformedInput, "node count disagrees with n");

  std::vector<Matrix> blocks;
  std::vector<std::string> labels;
  std::vector<ColumnSet> declared;
  for (const Json& node : nodes) {
    labels.push_back(get<std::string>(node, "label"));
    const auto cols = get<std::vector<Vec>>(node, "H");
    if (cols.size() != ell) fail(ErrorKind::MalformedInput, "each node needs ell columns");
    for (const Vec& c : cols)
      if (c.size() != r * ell) fail(ErrorKind::MalformedInput, "column length must be r*ell");
    blocks.push_back(transpose(Matrix::from_rows(cols, r * ell)));
    declared.push_back(get<ColumnSet>(node, "X"));
  }
  Realization re = Realization::from_blocks(std::move(tower), r, std::move(blocks));
  for (std::size_t i = 0; i < n; ++i) {
    ColumnSet want = re.column_set(i);
    ColumnSet got = declared[i];
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    if (want != got) {
      fail(ErrorKind::MalformedInput, "node " + std::to_string(i + 1) + ": X does not match the columns of H");
    }
  }
  return LoadedCode{std::move(re), std::move(labels)};
}

Json scheme_to_json(const RepairScheme& scheme) {
  Json j;
  j["v"] = kSchemaVersion;
  Json rows = Json::array();
  for (std::size_t i = 0; i < scheme.per_node.size(); ++i) {
    Json row;
    row["i"] = i + 1;
    row["M"] = matrix_to_json(scheme.per_node[i]);
    rows.push_back(std::move(row));
  }
  j["per_node"] = std::move(rows);
  return j;
}

RepairScheme scheme_from_json(const Json& j, const Realization& re) {
  check_version(j);
  const auto rows = get<Json>(j, "per_node");
  if (!rows.is_array() || rows.size() != re.n()) fail(ErrorKind::MalformedInput, "scheme needs one entry per node");
  RepairScheme scheme;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (get<std::size_t>(rows[k], "i") != k + 1) fail(ErrorKind::MalformedInput, "scheme entries must be in node order");
    Matrix m = matrix_from_json(get<Json>(rows[k], "M"));
    for (Symbol x : m.entries())
      if (x >= re.field().order()) fail(ErrorKind::MalformedInput, "matrix entry outside F_q");
    require_repair_matrix(m, re.skeleton(), k);
    scheme.per_node.push_back(std::move(m));
  }
  return scheme;
}

Json provenance_to_json(const NrcBundle& bundle) {
  const FieldTower& t = *bundle.params.tower;
  Json j;
  j["v"] = kSchemaVersion;
  Json params;
  params["p"] = t.p();
  params["m"] = t.m();
  params["q"] = t.q();
  params["ell"] = t.ell();
  params["r"] = bundle.params.r;
  params["n"] = bundle.params.n;
  j["params"] = std::move(params);
  j["C_1"] = bundle.c1.members;
  j["C_2"] = bundle.c2.members;
  j["b_1"] = bundle.c1.representative;
  j["b_2"] = bundle.c2.representative;
  j["omega"] = bundle.labels();
  j["library_version"] = kLibraryVersion;
  return j;
}

Json bounds_to_json(const BoundsReport& b) {
  Json j;
  j["q"] = b.q;
  j["ell"] = b.ell;
  j["r"] = b.r;
  j["n"] = b.n;
  j["im_bound"] = b.im_bound;
  j["pc_bound"] = b.pc_bound;
  j["length_max"] = b.length_max;
  j["equality_min_length"] = b.equality_min_length;
  j["coverage_fraction"] = rational_to_json(b.coverage_fraction);
  j["r_le_q"] = b.r_le_q;
  return j;
}

Json metrics_to_json(const NodeMetrics& m, const BoundsReport* bounds) {
  Json j;
  j["v"] = kSchemaVersion;
  Json rows = Json::array();
  for (const NodeRow& r : m.rows) {
    Json row;
    row["i"] = r.node + 1;
    row["beta"] = r.beta;
    row["gamma"] = r.gamma;
    row["alpha"] = r.alpha;
    row["lambda"] = r.lambda;
    row["gap"] = std::max(r.gap_beta, r.gap_gamma);
    rows.push_back(std::move(row));
  }
  j["per_node"] = std::move(rows);
  Json agg;
  agg["beta_avg"] = rational_to_json(m.beta_avg);
  agg["beta_max"] = m.beta_max;
  agg["gamma_avg"] = rational_to_json(m.gamma_avg);
  agg["gamma_max"] = m.gamma_max;
  agg["im_bound"] = m.im_bound;
  agg["equality"] = m.equality;
  j["aggregates"] = std::move(agg);
  if (bounds) j["bounds"] = bounds_to_json(*bounds);
  return j;
}

Json bruteforce_to_json(const BruteForceResult& r, const char* objective) {
  Json j;
  j["i"] = r.node + 1;
  j["objective"] = objective;
  j["value"] = r.value ? Json(*r.value) : Json(nullptr);
  j["witness_index"] = r.witness_index;
  j["witness"] = r.witness ? matrix_to_json(*r.witness) : Json(nullptr);
  j["scanned"] = r.scanned;
  j["feasible"] = r.feasible;
  j["total"] = r.total;
  return j;
}

Json campaign_to_json(const CampaignReport& c) {
  Json j;
  j["v"] = kSchemaVersion;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["rng"] = c.rng;
  Json rows = Json::array();
  for (const CampaignNodeRow& r : c.nodes) {
    Json row;
    row["i"] = r.node + 1;
    row["downloaded"] = r.downloaded;
    row["accessed"] = r.accessed;
    row["beta"] = r.beta;
    row["gamma"] = r.gamma;
    row["repairs"] = r.repairs;
    rows.push_back(std::move(row));
  }
  j["per_node"] = std::move(rows);
  j["total_downloaded"] = c.total_downloaded;
  j["total_accessed"] = c.total_accessed;
  j["failures"] = c.failures;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::MalformedInput, e.what());
  }
}

}  // namespace mdsrepair
