#include "gwb/json_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "gwb/errors.hpp"

namespace gwb {

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Malformed(what + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Malformed("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

namespace {

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object()) throw Malformed(where + ": expected an object");
  const auto it = j.find(name);
  if (it == j.end()) throw Malformed(where + ": missing field \"" + name + "\"");
  return *it;
}

int64_t to_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw Malformed(where + ": expected an integer");
  if (j.is_number_unsigned() && j.get<uint64_t>() > static_cast<uint64_t>(std::numeric_limits<int64_t>::max()))
    throw Malformed(where + ": integer out of range");
  return j.get<int64_t>();
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw Malformed(where + ": expected an array");
  return j;
}

template <size_t N>
std::array<int64_t, N> int_tuple(const Json& j, const std::string& where) {
  array(j, where);
  if (j.size() != N) throw Malformed(where + ": expected " + std::to_string(N) + " entries");
  std::array<int64_t, N> out{};
  for (size_t i = 0; i < N; ++i) out[i] = to_int(j[i], where);
  return out;
}

std::vector<int64_t> int_list(const Json& j, const std::string& where) {
  std::vector<int64_t> out;
  for (const auto& x : array(j, where)) out.push_back(to_int(x, where));
  return out;
}

Ring ring_field(const Json& j, const std::optional<Ring>& override_ring, const std::string& where) {
  if (override_ring) return *override_ring;
  const Json& r = field(j, "ring", where);
  if (!r.is_string()) throw Malformed(where + ": ring must be a string tag");
  return Ring::parse(r.get<std::string>());
}

std::string at(const std::string& where, size_t i) { return where + "[" + std::to_string(i) + "]"; }

}  // namespace

Json rational_to_json(const Rational& r) {
  if (r.is_integer() && r.num().is_small()) return r.num().small_value();
  return r.to_string();
}

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(to_int(j, where));
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const std::exception&) {
      throw Malformed(where + ": cannot parse \"" + j.get<std::string>() + "\" as a rational");
    }
  }
  throw Malformed(where + ": expected an integer or a \"p/q\" string");
}

GroupoidSpec groupoid_spec_from_json(const Json& j) {
  GroupoidSpec s;
  for (const auto& u : array(field(j, "units", "groupoid"), "units")) {
    if (u.is_string()) s.units.push_back(u.get<std::string>());
    else if (u.is_number_integer()) s.units.push_back(std::to_string(u.get<int64_t>()));
    else throw Malformed("units: names must be strings or integers");
  }
  const Json& arrows = array(field(j, "arrows", "groupoid"), "arrows");
  for (size_t i = 0; i < arrows.size(); ++i) {
    const std::string w = at("arrows", i);
    s.arrows.push_back({to_int(field(arrows[i], "id", w), w + ".id"), to_int(field(arrows[i], "src", w), w + ".src"),
                        to_int(field(arrows[i], "rng", w), w + ".rng")});
  }
  const Json& comp = array(field(j, "compose", "groupoid"), "compose");
  for (size_t i = 0; i < comp.size(); ++i) s.compose.push_back(int_tuple<3>(comp[i], at("compose", i)));
  const Json& inv = array(field(j, "inverse", "groupoid"), "inverse");
  for (size_t i = 0; i < inv.size(); ++i) s.inverse.push_back(int_tuple<2>(inv[i], at("inverse", i)));
  const Json& ua = array(field(j, "unit_arrows", "groupoid"), "unit_arrows");
  for (size_t i = 0; i < ua.size(); ++i) s.unit_arrows.push_back(int_tuple<2>(ua[i], at("unit_arrows", i)));
  return s;
}

Json groupoid_to_json(const FiniteGroupoid& g) {
  const GroupoidSpec s = g.to_spec();
  Json j;
  j["units"] = s.units;
  j["arrows"] = Json::array();
  for (const auto& a : s.arrows) j["arrows"].push_back({{"id", a.id}, {"src", a.src}, {"rng", a.rng}});
  j["compose"] = s.compose;
  j["inverse"] = s.inverse;
  j["unit_arrows"] = s.unit_arrows;
  return j;
}

std::vector<std::vector<ArrowId>> bisections_from_json(const Json& j) {
  std::vector<std::vector<ArrowId>> out;
  const Json& b = array(field(j, "bisections", "bisections file"), "bisections");
  for (size_t i = 0; i < b.size(); ++i) {
    std::vector<ArrowId> v;
    for (int64_t a : int_list(b[i], at("bisections", i))) {
      if (a < std::numeric_limits<ArrowId>::min() || a > std::numeric_limits<ArrowId>::max())
        throw Malformed(at("bisections", i) + ": arrow id out of range");
      v.push_back(static_cast<ArrowId>(a));
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<int64_t>> filtration_from_json(const Json& j) {
  std::vector<std::vector<int64_t>> out;
  const Json& f = array(field(j, "filtration", "filtration file"), "filtration");
  for (size_t i = 0; i < f.size(); ++i) out.push_back(int_list(f[i], at("filtration", i)));
  return out;
}

MatrixFile matrix_from_json(const Json& j) {
  MatrixFile out;
  out.ring = ring_field(j, std::nullopt, "matrix");
  const int64_t rows = to_int(field(j, "rows", "matrix"), "rows");
  const int64_t cols = to_int(field(j, "cols", "matrix"), "cols");
  if (rows < 0 || cols < 0) throw Malformed("matrix: negative dimension");
  const Json& data = array(field(j, "data", "matrix"), "data");
  if (data.size() != static_cast<size_t>(rows * cols))
    throw Malformed("data: expected " + std::to_string(rows * cols) + " entries, found " + std::to_string(data.size()));
  out.matrix = Matrix(static_cast<size_t>(rows), static_cast<size_t>(cols));
  for (size_t i = 0; i < data.size(); ++i)
    out.matrix(i / static_cast<size_t>(cols), i % static_cast<size_t>(cols)) =
        out.ring.normalize(rational_from_json(data[i], at("data", i)));
  return out;
}

Json matrix_to_json(const Ring& ring, const Matrix& m) {
  Json data = Json::array();
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t c = 0; c < m.cols(); ++c) data.push_back(rational_to_json(m(i, c)));
  return {{"ring", ring.tag()}, {"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Json matrix_rows_json(const Matrix& m) {
  Json out = Json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (size_t c = 0; c < m.cols(); ++c) row.push_back(rational_to_json(m(i, c)));
    out.push_back(row);
  }
  return out;
}

Matrix matrix_from_rows_json(const Json& j, size_t rows, const std::string& where) {
  array(j, where);
  if (j.empty()) return Matrix(rows, 0);
  if (j.size() != rows) throw Malformed(where + ": expected " + std::to_string(rows) + " rows");
  const size_t cols = array(j[0], at(where, 0)).size();
  Matrix m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (array(j[i], at(where, i)).size() != cols) throw Malformed(at(where, i) + ": ragged row");
    for (size_t c = 0; c < cols; ++c) m(i, c) = rational_from_json(j[i][c], at(at(where, i), c));
  }
  return m;
}

AlgebraElement element_from_json(const Json& j, const GroupoidPtr& g, const std::optional<Ring>& ring) {
  AlgebraElement f(g, ring_field(j, ring, "element"));
  const Json& coeffs = array(field(j, "coeffs", "element"), "coeffs");
  for (size_t i = 0; i < coeffs.size(); ++i) {
    const std::string w = at("coeffs", i);
    if (!coeffs[i].is_array() || coeffs[i].size() != 2) throw Malformed(w + ": expected [arrow, value]");
    const int64_t a = to_int(coeffs[i][0], w);
    if (!g->has_arrow(a)) throw IndexOutOfRange(w + ": arrow " + std::to_string(a) + " does not exist");
    f.add_to(static_cast<ArrowId>(a), f.ring().normalize(rational_from_json(coeffs[i][1], w)));
  }
  return f;
}

Json element_to_json(const AlgebraElement& f) {
  Json coeffs = Json::array();
  for (const auto& [a, c] : f.support()) coeffs.push_back({a, rational_to_json(c)});
  return {{"ring", f.ring().tag()}, {"coeffs", coeffs}};
}

TupleElement tuple_element_from_json(const Json& j, const std::optional<Ring>& ring) {
  TupleElement f;
  f.ring = ring_field(j, ring, "element");
  const Json& coeffs = array(field(j, "coeffs", "element"), "coeffs");
  bool arity_known = false;
  if (j.contains("arity")) {
    f.arity = static_cast<size_t>(to_int(j["arity"], "arity"));
    arity_known = true;
  }
  for (size_t i = 0; i < coeffs.size(); ++i) {
    const std::string w = at("coeffs", i);
    if (!coeffs[i].is_array() || coeffs[i].size() != 2) throw Malformed(w + ": expected [[tuple], value]");
    std::vector<ArrowId> t;
    for (int64_t a : int_list(coeffs[i][0], w)) t.push_back(static_cast<ArrowId>(a));
    if (!arity_known) {
      f.arity = t.size();
      arity_known = true;
    }
    if (t.size() != f.arity) throw Malformed(w + ": tuple length differs from the arity");
    const Rational v = f.ring.normalize(rational_from_json(coeffs[i][1], w));
    Rational& slot = f.coeffs[t];
    slot = f.ring.add(slot, v);
    if (slot.is_zero()) f.coeffs.erase(t);
  }
  return f;
}

Json tuple_element_to_json(const TupleElement& f) {
  Json coeffs = Json::array();
  for (const auto& [t, c] : f.coeffs) coeffs.push_back({t, rational_to_json(c)});
  return {{"ring", f.ring.tag()}, {"arity", f.arity}, {"coeffs", coeffs}};
}

Json unit_space_to_json(const UnitSpaceElement& u) {
  Json coeffs = Json::array();
  for (size_t x = 0; x < u.coeffs.size(); ++x)
    if (!u.coeffs[x].is_zero()) coeffs.push_back({x, rational_to_json(u.coeffs[x])});
  return {{"ring", u.ring.tag()}, {"coeffs", coeffs}};
}

GModule module_from_json(const Json& j, const GroupoidPtr& g, const std::optional<Ring>& ring) {
  const Ring r = ring_field(j, ring, "module");
  ModuleSpec spec;
  const Json& fibers = array(field(j, "fibers", "module"), "fibers");
  for (size_t i = 0; i < fibers.size(); ++i) {
    const std::string w = at("fibers", i);
    if (!fibers[i].is_array() || fibers[i].size() < 2 || fibers[i].size() > 3)
      throw Malformed(w + ": expected [unit, rank, relations]");
    const int64_t unit = to_int(fibers[i][0], w);
    const int64_t rank = to_int(fibers[i][1], w);
    if (rank < 0) throw Malformed(w + ": negative rank");
    Matrix rel = fibers[i].size() == 3 ? matrix_from_rows_json(fibers[i][2], static_cast<size_t>(rank), w)
                                       : Matrix(static_cast<size_t>(rank), 0);
    spec.fibers.push_back({unit, static_cast<size_t>(rank), rel});
  }
  std::vector<size_t> rank_of(g->num_units(), 0);
  for (const auto& f : spec.fibers)
    if (g->has_unit(f.unit)) rank_of[static_cast<size_t>(f.unit)] = f.rank;
  const Json& actions = array(field(j, "actions", "module"), "actions");
  for (size_t i = 0; i < actions.size(); ++i) {
    const std::string w = at("actions", i);
    if (!actions[i].is_array() || actions[i].size() != 2) throw Malformed(w + ": expected [arrow, matrix]");
    const int64_t a = to_int(actions[i][0], w);
    if (!g->has_arrow(a)) throw IndexOutOfRange(w + ": arrow " + std::to_string(a) + " does not exist");
    const size_t rows = rank_of[static_cast<size_t>(g->range(static_cast<ArrowId>(a)))];
    Matrix m = matrix_from_rows_json(actions[i][1], rows, w);
    if (m.cols() == 0 && m.rows() == rows) m = Matrix(rows, rank_of[static_cast<size_t>(g->source(static_cast<ArrowId>(a)))]);
    spec.actions.push_back({a, m});
  }
  return validate_gmodule(g, r, spec);
}

Json module_to_json(const GModule& m) {
  Json fibers = Json::array();
  Json actions = Json::array();
  const ModuleSpec s = m.to_spec();
  for (const auto& f : s.fibers) fibers.push_back({f.unit, f.rank, matrix_rows_json(f.relations)});
  for (const auto& a : s.actions) actions.push_back({a.arrow, matrix_rows_json(a.matrix)});
  return {{"ring", m.ring().tag()}, {"fibers", fibers}, {"actions", actions}};
}

BratteliDiagram diagram_from_json(const Json& j) { return parse_bratteli(j.dump()); }

Json diagram_to_json(const BratteliDiagram& b) { return {{"vertices", b.vertices}, {"edges", b.edges}}; }

}  // namespace gwb
