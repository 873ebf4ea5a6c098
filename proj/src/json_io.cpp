#include "supergrade/json_io.hpp"

namespace supergrade {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ParseError("field '" + field + "': " + what);
}

long require_long(const json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_number_integer())
    fail(field, "expected an integer");
  return j[field].get<long>();
}

const json& require(const json& j, const std::string& field) {
  if (!j.contains(field)) fail(field, "missing");
  return j[field];
}

}  // namespace

json scalar_to_json(const Cyclo& c) { return c.str(); }

Cyclo scalar_from_json(const json& j, long order_hint) {
  if (j.is_number_integer()) return Cyclo(j.get<long>());
  if (!j.is_string()) fail("scalar", "expected a string like \"1/2 + 3*z8^2\"");
  try {
    return Cyclo::parse(j.get<std::string>(), order_hint);
  } catch (const std::exception& e) {
    fail("scalar", e.what());
  }
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (long i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (long j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Mat matrix_from_json(const json& j) {
  if (!j.is_array()) fail("matrix", "expected an array of rows");
  const long rows = static_cast<long>(j.size());
  long cols = rows > 0 ? static_cast<long>(j[0].size()) : 0;
  Mat m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<long>(j[i].size()) != cols)
      fail("matrix", "ragged rows");
    for (long c = 0; c < cols; ++c) m(i, c) = scalar_from_json(j[i][c]);
  }
  return m;
}

json vector_to_json(const Vec& v) {
  json out = json::array();
  for (long i = 0; i < v.size(); ++i) out.push_back(scalar_to_json(v(i)));
  return out;
}

Vec vector_from_json(const json& j) {
  if (!j.is_array()) fail("vector", "expected an array");
  Vec v(static_cast<long>(j.size()));
  for (long i = 0; i < v.size(); ++i) v(i) = scalar_from_json(j[i]);
  return v;
}

json group_to_json(const AbGroup& g) { return json{{"factors", g.factors()}}; }

AbGroup group_from_json(const json& j) {
  const json& f = require(j, "factors");
  if (!f.is_array()) fail("factors", "expected an array of integers");
  std::vector<long> factors;
  for (const auto& x : f) {
    if (!x.is_number_integer()) fail("factors", "expected integers");
    factors.push_back(x.get<long>());
  }
  try {
    return AbGroup(factors);
  } catch (const std::exception& e) {
    fail("factors", e.what());
  }
}

json elem_to_json(const GroupElem& e) { return e.coords; }

GroupElem elem_from_json(const json& j) {
  if (!j.is_array()) fail("element", "expected an array of residues");
  GroupElem e;
  for (const auto& x : j) {
    if (!x.is_number_integer()) fail("element", "expected integers");
    e.coords.push_back(x.get<long>());
  }
  return e;
}

json semigroup_to_json(const SemigroupTable& t) {
  json out{{"size", t.size}, {"table", t.table}};
  if (t.identity) out["identity"] = *t.identity;
  return out;
}

SemigroupTable semigroup_from_json(const json& j) {
  SemigroupTable t;
  t.size = require_long(j, "size");
  const json& rows = require(j, "table");
  if (!rows.is_array()) fail("table", "expected an array of rows");
  for (const auto& row : rows) {
    std::vector<long> r;
    for (const auto& x : row) r.push_back(x.get<long>());
    t.table.push_back(r);
  }
  if (j.contains("identity")) t.identity = j["identity"].get<long>();
  try {
    t.validate();
  } catch (const std::exception& e) {
    fail("table", e.what());
  }
  return t;
}

json algebra_to_json(const SuperAlgebra& a) {
  switch (a.kind()) {
    case SuperAlgebra::Kind::MatrixSuper:
      return json{{"type", "matrix_super"}, {"n", a.n()}, {"m", a.m()}};
    case SuperAlgebra::Kind::QType:
      return json{{"type", "q"}, {"n", a.n()}};
    case SuperAlgebra::Kind::PairSop:
      return json{{"type", "pair_sop"}, {"base", algebra_to_json(a.base())}};
    case SuperAlgebra::Kind::DirectSum:
      return json{{"type", "direct_sum"},
                  {"left", algebra_to_json(a.left())},
                  {"right", algebra_to_json(a.right())}};
  }
  throw std::logic_error("unknown algebra kind");
}

SuperAlgebra algebra_from_json(const json& j) {
  const json& t = require(j, "type");
  if (!t.is_string()) fail("type", "expected a string");
  std::string type = t.get<std::string>();
  try {
    if (type == "matrix_super")
      return SuperAlgebra::matrix_super(require_long(j, "n"), require_long(j, "m"));
    if (type == "q") return SuperAlgebra::q_type(require_long(j, "n"));
    if (type == "pair_sop")
      return SuperAlgebra::pair_sop(algebra_from_json(require(j, "base")));
    if (type == "direct_sum")
      return SuperAlgebra::direct_sum(algebra_from_json(require(j, "left")),
                                      algebra_from_json(require(j, "right")));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    fail("type", e.what());
  }
  fail("type", "unknown algebra type '" + type + "'");
}

json element_to_json(const SuperAlgebra& a, const Vec& v) {
  switch (a.kind()) {
    case SuperAlgebra::Kind::MatrixSuper:
      return matrix_to_json(a.to_matrix(v));
    case SuperAlgebra::Kind::QType: {
      auto [x, y] = a.to_xy(v);
      return json{{"x", matrix_to_json(x)}, {"y", matrix_to_json(y)}};
    }
    case SuperAlgebra::Kind::PairSop:
    case SuperAlgebra::Kind::DirectSum: {
      auto [first, second] = a.split_pair(v);
      const SuperAlgebra& right =
          a.kind() == SuperAlgebra::Kind::PairSop ? a.base() : a.right();
      return json{{"first", element_to_json(a.base(), first)},
                  {"second", element_to_json(right, second)}};
    }
  }
  throw std::logic_error("unknown algebra kind");
}

Vec element_from_json(const SuperAlgebra& a, const json& j) {
  switch (a.kind()) {
    case SuperAlgebra::Kind::MatrixSuper:
      return a.from_matrix(matrix_from_json(j));
    case SuperAlgebra::Kind::QType:
      return a.from_xy(matrix_from_json(require(j, "x")),
                       matrix_from_json(require(j, "y")));
    case SuperAlgebra::Kind::PairSop:
    case SuperAlgebra::Kind::DirectSum: {
      const SuperAlgebra& right =
          a.kind() == SuperAlgebra::Kind::PairSop ? a.base() : a.right();
      return a.join_pair(element_from_json(a.base(), require(j, "first")),
                         element_from_json(right, require(j, "second")));
    }
  }
  throw std::logic_error("unknown algebra kind");
}

namespace {
std::string claim_name(SuperMap::Claim c) {
  switch (c) {
    case SuperMap::Claim::Unchecked: return "unchecked";
    case SuperMap::Claim::Automorphism: return "automorphism";
    case SuperMap::Claim::Superantiautomorphism: return "superantiautomorphism";
    case SuperMap::Claim::Superinvolution: return "superinvolution";
  }
  return "?";
}

SuperMap::Claim claim_from_name(const std::string& s) {
  if (s == "unchecked") return SuperMap::Claim::Unchecked;
  if (s == "automorphism") return SuperMap::Claim::Automorphism;
  if (s == "superantiautomorphism") return SuperMap::Claim::Superantiautomorphism;
  if (s == "superinvolution") return SuperMap::Claim::Superinvolution;
  fail("claimed_kind", "unknown claim '" + s + "'");
}
}  // namespace

json supermap_to_json(const SuperMap& m) {
  return json{{"action", matrix_to_json(m.action)},
              {"claimed_kind", claim_name(m.claimed)}};
}

SuperMap supermap_from_json(const json& j) {
  SuperMap m;
  m.action = matrix_from_json(require(j, "action"));
  if (j.contains("claimed_kind"))
    m.claimed = claim_from_name(j["claimed_kind"].get<std::string>());
  return m;
}

SuperMap supermap_from_json(const json& j, const SuperAlgebra& alg) {
  if (j.is_string() || j.contains("canonical")) {
    std::string name = j.is_string() ? j.get<std::string>()
                                     : j["canonical"].get<std::string>();
    if (name == "osp") return apply_canonical_map_builder(alg, CanonicalMapKind::Osp);
    if (name == "trp") return apply_canonical_map_builder(alg, CanonicalMapKind::Trp);
    if (name == "exchange")
      return apply_canonical_map_builder(alg, CanonicalMapKind::Exchange);
    if (name == "tau") return apply_canonical_map_builder(alg, CanonicalMapKind::Tau);
    if (name == "identity") return identity_map(alg);
    if (name == "transpose") return plain_transpose_map(alg);
    fail("canonical", "unknown canonical map '" + name + "'");
  }
  return supermap_from_json(j);
}

json subspace_to_json(const Subspace& s) {
  json basis = json::array();
  for (long i = 0; i < s.dim(); ++i) basis.push_back(vector_to_json(s.basis_vector(i)));
  return basis;
}

Subspace subspace_from_json(const json& j, long ambient_dim) {
  if (!j.is_array()) fail("basis", "expected an array of vectors");
  std::vector<Vec> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(r));
  try {
    return Subspace::span_of(rows, ambient_dim);
  } catch (const std::exception& e) {
    fail("basis", e.what());
  }
}

json grading_to_json(const Grading& g) {
  json out;
  if (g.is_group_indexed())
    out["group"] = group_to_json(g.group());
  else
    out["semigroup"] = semigroup_to_json(g.semigroup());
  json comps = json::array();
  for (long i = 0; i < g.index_size(); ++i) {
    if (g.component_at(i).is_zero()) continue;
    json c;
    if (g.is_group_indexed())
      c["g"] = elem_to_json(g.group().element_at(i));
    else
      c["s"] = i;
    c["basis"] = subspace_to_json(g.component_at(i));
    comps.push_back(c);
  }
  out["components"] = comps;
  return out;
}

Grading grading_from_json(const json& j, long ambient_dim) {
  Grading g;
  if (j.contains("group"))
    g = Grading::over_group(group_from_json(j["group"]), ambient_dim);
  else if (j.contains("semigroup"))
    g = Grading::over_semigroup(semigroup_from_json(j["semigroup"]), ambient_dim);
  else
    fail("grading", "needs either 'group' or 'semigroup'");
  const json& comps = require(j, "components");
  if (!comps.is_array()) fail("components", "expected an array");
  for (const auto& c : comps) {
    Subspace s = subspace_from_json(require(c, "basis"), ambient_dim);
    if (c.contains("g")) {
      GroupElem e = elem_from_json(c["g"]);
      try {
        g.group().validate(e);
      } catch (const std::exception& ex) {
        fail("g", ex.what());
      }
      g.set_component(e, std::move(s));
    } else if (c.contains("s")) {
      long idx = c["s"].get<long>();
      if (idx < 0 || idx >= g.index_size()) fail("s", "index out of range");
      g.set_component_at(idx, std::move(s));
    } else {
      fail("components", "each component needs 'g' or 's'");
    }
  }
  return g;
}

json typed_grading_to_json(const TypedGrading& t) {
  json out{{"type", to_string(t.type)},
           {"algebra", algebra_to_json(t.algebra)},
           {"grading", grading_to_json(t.grading)},
           {"base", grading_to_json(t.base_grading)},
           {"lambda_index", t.lambda_index}};
  if (t.dagger) out["dagger"] = supermap_to_json(*t.dagger);
  if (t.h) out["h"] = elem_to_json(*t.h);
  if (!t.notes.empty()) out["notes"] = t.notes;
  return out;
}

json map_check_report_to_json(const MapCheckReport& r) {
  json witnesses = json::array();
  for (const auto& w : r.witnesses)
    witnesses.push_back(json{{"i", w.i}, {"j", w.j}, {"reason", w.reason}});
  return json{{"ok", r.ok}, {"witnesses", witnesses}};
}

json grading_check_report_to_json(const GradingCheckReport& r) {
  return json{{"ok", r.ok}, {"violations", r.violations}};
}

json support_report_to_json(const SupportReport& r) {
  json out{{"support", r.support}, {"commutes", r.commutes}, {"notes", r.notes}};
  if (r.all_invertible) out["all_invertible"] = *r.all_invertible;
  return out;
}

json exchange_result_to_json(const ExchangeResult& r) {
  json gammas = json::array();
  for (const auto& m : r.gamma_gen_images) gammas.push_back(matrix_to_json(m.action));
  json hs = json::array();
  for (const auto& h : r.subgroup_h) hs.push_back(elem_to_json(h));
  json comps = json::array();
  for (const auto& [h, s] : r.h_components)
    comps.push_back(json{{"h", elem_to_json(h)}, {"basis", subspace_to_json(s)}});
  return json{{"identities_hold", r.identities_hold},
              {"gamma_generator_actions", gammas},
              {"subgroup_h", hs},
              {"h_components", comps},
              {"first_grading", grading_to_json(r.first_grading)},
              {"second_grading", grading_to_json(r.second_grading)},
              {"reconstructed_first", grading_to_json(r.reconstructed_first)},
              {"reconstructed_second", grading_to_json(r.reconstructed_second)}};
}

json obstruction_report_to_json(const ObstructionReport& r) {
  return json{{"obstructed", r.obstructed},
              {"scalar_candidates", r.scalar_candidates},
              {"constraint_rows", r.constraint_rows},
              {"unknowns", r.unknowns},
              {"notes", r.notes}};
}

json identity_decomposition_to_json(const IdentityDecomposition& d,
                                    const SuperAlgebra&) {
  json blocks = json::array();
  for (const auto& b : d.blocks) {
    blocks.push_back(json{{"kind", to_string(b.kind)},
                          {"s", b.s},
                          {"r", b.r},
                          {"dimension", b.space.dim()},
                          {"idempotent", vector_to_json(b.idempotent)},
                          {"s_canonical", matrix_to_json(b.s_canonical)}});
  }
  json out{{"blocks", blocks}, {"notes", d.notes}};
  if (d.s_matrix) out["s_matrix"] = matrix_to_json(*d.s_matrix);
  if (d.phi_matrix) out["phi_matrix"] = matrix_to_json(*d.phi_matrix);
  return out;
}

}  // namespace supergrade
