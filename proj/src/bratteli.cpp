#include "gwb/bratteli.hpp"

#include <map>

#include "json.hpp"

#include "gwb/errors.hpp"
#include "gwb/groupoid_builders.hpp"
#include "gwb/smith.hpp"

namespace gwb {

BratteliDiagram make_bratteli(std::vector<size_t> vertices, std::vector<std::vector<std::vector<int64_t>>> edges) {
  if (vertices.empty()) throw Malformed("vertices: at least the root level is required");
  if (vertices[0] != 1) throw Malformed("vertices[0]: the root level has exactly one vertex");
  if (edges.size() + 1 != vertices.size())
    throw Malformed("edges: expected " + std::to_string(vertices.size() - 1) + " matrices, found " +
                    std::to_string(edges.size()));
  for (size_t k = 0; k < edges.size(); ++k) {
    const auto& m = edges[k];
    const std::string where = "edges[" + std::to_string(k) + "]";
    if (m.size() != vertices[k]) throw Malformed(where + ": expected " + std::to_string(vertices[k]) + " rows");
    for (size_t a = 0; a < m.size(); ++a) {
      if (m[a].size() != vertices[k + 1])
        throw Malformed(where + "[" + std::to_string(a) + "]: expected " + std::to_string(vertices[k + 1]) + " columns");
      for (int64_t v : m[a])
        if (v < 0) throw Malformed(where + ": negative multiplicity");
    }
    for (size_t b = 0; b < vertices[k + 1]; ++b) {
      int64_t in = 0;
      for (size_t a = 0; a < m.size(); ++a) in += m[a][b];
      if (in == 0)
        throw SourceVertex("level " + std::to_string(k + 1) + ", vertex " + std::to_string(b) + " receives no edge");
    }
  }
  return BratteliDiagram{std::move(vertices), std::move(edges)};
}

BratteliDiagram parse_bratteli(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Malformed(std::string("diagram JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw Malformed("diagram: fields \"vertices\" and \"edges\" are required");
  try {
    auto vertices = j.at("vertices").get<std::vector<size_t>>();
    auto edges = j.at("edges").get<std::vector<std::vector<std::vector<int64_t>>>>();
    return make_bratteli(std::move(vertices), std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw Malformed(std::string("diagram: ") + e.what());
  }
}

BratteliDiagram car_diagram(size_t depth) {
  return make_bratteli(std::vector<size_t>(depth + 1, 1),
                       std::vector<std::vector<std::vector<int64_t>>>(depth, {{2}}));
}

BratteliDiagram fibonacci_diagram(size_t depth) {
  std::vector<size_t> v{1};
  std::vector<std::vector<std::vector<int64_t>>> e;
  for (size_t k = 0; k < depth; ++k) {
    v.push_back(2);
    if (k == 0) e.push_back({{1, 1}});
    else e.push_back({{1, 1}, {1, 0}});
  }
  return make_bratteli(std::move(v), std::move(e));
}

std::vector<std::vector<size_t>> path_counts(const BratteliDiagram& b, size_t n) {
  if (n > b.depth()) throw DepthExceeded("level " + std::to_string(n) + " beyond depth " + std::to_string(b.depth()));
  std::vector<std::vector<size_t>> out{{1}};
  for (size_t k = 0; k < n; ++k) {
    std::vector<size_t> next(b.vertices[k + 1], 0);
    for (size_t a = 0; a < b.vertices[k]; ++a)
      for (size_t v = 0; v < next.size(); ++v) next[v] += out[k][a] * static_cast<size_t>(b.edges[k][a][v]);
    out.push_back(std::move(next));
  }
  return out;
}

LevelGroupoid level_groupoid(const BratteliDiagram& b, size_t n, size_t path_cap) {
  const auto counts = path_counts(b, n);
  size_t total = 0;
  for (size_t c : counts[n]) total += c;
  if (total > path_cap) throw ResourceLimit("level " + std::to_string(n) + " has " + std::to_string(total) + " paths");

  // by_vertex[v]: paths ending at v, in extension order.
  std::vector<std::vector<std::vector<PathStep>>> by_vertex{{{}}};
  for (size_t k = 0; k < n; ++k) {
    std::vector<std::vector<std::vector<PathStep>>> next(b.vertices[k + 1]);
    for (size_t v = 0; v < next.size(); ++v)
      for (size_t a = 0; a < b.vertices[k]; ++a)
        for (const auto& p : by_vertex[a])
          for (int64_t j = 0; j < b.edges[k][a][v]; ++j) {
            auto q = p;
            q.push_back({v, static_cast<size_t>(j)});
            next[v].push_back(std::move(q));
          }
    by_vertex = std::move(next);
  }

  LevelGroupoid lg;
  lg.level = n;
  std::vector<GroupoidPtr> parts;
  for (size_t v = 0; v < by_vertex.size(); ++v) {
    parts.push_back(pair_groupoid(by_vertex[v].size()));
    for (auto& p : by_vertex[v]) {
      lg.paths.push_back(std::move(p));
      lg.terminal.push_back(v);
    }
  }
  lg.groupoid = parts.size() == 1 ? parts[0] : disjoint_union(parts);
  return lg;
}

UnitRefinement level_refinement(const BratteliDiagram& b, const LevelGroupoid& from, const LevelGroupoid& to) {
  if (to.level != from.level + 1) throw DimensionMismatch("refinement needs consecutive levels");
  std::map<std::vector<std::pair<size_t, size_t>>, UnitId> index;
  auto key = [](const std::vector<PathStep>& p) {
    std::vector<std::pair<size_t, size_t>> k;
    for (const auto& s : p) k.emplace_back(s.vertex, s.edge);
    return k;
  };
  for (size_t y = 0; y < to.paths.size(); ++y) index[key(to.paths[y])] = static_cast<UnitId>(y);

  UnitRefinement r{from.groupoid, to.groupoid, {}};
  const auto& m = b.edges[from.level];
  for (size_t x = 0; x < from.paths.size(); ++x) {
    std::vector<UnitId> image;
    auto k = key(from.paths[x]);
    for (size_t v = 0; v < m[from.terminal[x]].size(); ++v)
      for (int64_t j = 0; j < m[from.terminal[x]][v]; ++j) {
        auto ext = k;
        ext.emplace_back(v, static_cast<size_t>(j));
        image.push_back(index.at(ext));
      }
    r.image.push_back(std::move(image));
  }
  return r;
}

InductiveSystem h0_system(const BratteliDiagram& b, size_t n) {
  if (n > b.depth()) throw DepthExceeded("level " + std::to_string(n) + " beyond depth " + std::to_string(b.depth()));
  InductiveSystem s;
  for (size_t k = 0; k <= n; ++k) s.groups.push_back(b.vertices[k]);
  for (size_t k = 0; k < n; ++k) {
    Matrix a(b.vertices[k + 1], b.vertices[k]);
    for (size_t i = 0; i < b.vertices[k]; ++i)
      for (size_t j = 0; j < b.vertices[k + 1]; ++j) a(j, i) = Rational(b.edges[k][i][j]);
    s.maps.push_back(a);
  }
  return s;
}

ColimitReport colimit_report(const InductiveSystem& s) {
  ColimitReport r;
  r.system = s;
  const Ring q = Ring::rationals();
  const Ring z = Ring::integers();
  const size_t first = s.maps.size() >= 2 ? 1 : 0;
  if (s.maps.size() >= 2) {
    Matrix acc = s.maps[1];
    for (size_t k = 2; k < s.maps.size(); ++k) acc = multiply(z, s.maps[k], acc);
    r.eventual_rank = smith_normal_form(q, acc, false).rank;
  } else {
    r.eventual_rank = s.groups.back();
  }
  if (s.maps.empty()) {
    r.stationary = true;
  } else {
    r.stationary = true;
    for (size_t k = first + 1; k < s.maps.size(); ++k)
      if (!(s.maps[k] == s.maps[first])) r.stationary = false;
  }
  if (!r.stationary) return r;
  if (s.maps.empty()) {
    r.label = s.groups.back() == 0 ? "0" : s.groups.back() == 1 ? "Z" : "Z^" + std::to_string(s.groups.back());
    return r;
  }
  const Matrix& a = s.maps[first];
  if (a.rows() == 1 && a.cols() == 1) {
    const Rational& m = a(0, 0);
    if (m.is_zero()) r.label = "0";
    else if (m == Rational(1)) r.label = "Z";
    else r.label = "Z[1/" + m.to_string() + "]";
  } else if (a == Matrix::identity(a.rows())) {
    r.label = "Z^" + std::to_string(a.rows());
  }
  return r;
}

AfHomologyReport af_homology_report(const BratteliDiagram& b, size_t n, size_t n_max, const HomologyOptions& opts) {
  const Ring z = Ring::integers();
  AfHomologyReport r;
  r.colimit = colimit_report(h0_system(b, n));
  std::vector<LevelGroupoid> lg;
  std::vector<GModule> trivial;
  for (size_t k = 0; k <= n; ++k) {
    lg.push_back(level_groupoid(b, k));
    trivial.push_back(trivial_module(lg.back().groupoid, z));
  }
  r.verdict = true;
  for (size_t k = 0; k <= n; ++k) {
    AfLevel level;
    level.level = k;
    level.homology = homology(trivial[k], n_max, opts);
    level.principal = is_principal(*lg[k].groupoid);
    CertifyOptions co;
    co.modules = 0;
    level.certified = hdim0_certify(lg[k].groupoid, z, co).certified;
    level.positive_vanish = true;
    for (size_t d = 1; d < level.homology.degrees.size(); ++d)
      if (!level.homology.degrees[d].is_zero()) level.positive_vanish = false;
    if (k < n) {
      level.oracle_map = induced_h0(level_refinement(b, lg[k], lg[k + 1]), trivial[k], trivial[k + 1]);
      level.map_matches = *level.oracle_map == r.colimit.system.maps[k];
    }
    r.verdict = r.verdict && level.principal && level.certified && level.positive_vanish && level.map_matches;
    r.levels.push_back(std::move(level));
  }
  return r;
}

}  // namespace gwb
