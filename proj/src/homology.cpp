#include "gwb/homology.hpp"

#include <exception>

#include "gwb/boundary_reduction.hpp"
#include "gwb/errors.hpp"

namespace gwb {

std::vector<ModuleInvariants> complex_homology(const ChainComplex& c) {
  const size_t top = c.top();
  std::vector<ModuleInvariants> out(top);
  bool free = true;
  for (const auto& rel : c.relations)
    for (const auto& col : rel.columns)
      if (!col.empty()) free = false;

  if (free) {
    std::vector<BoundaryRank> red(top + 1);
    for (size_t n = 1; n <= top; ++n) red[n] = reduce_boundary(c.ring, c.boundaries[n]);
    for (size_t n = 0; n < top; ++n) {
      out[n].free_rank = c.rank(n) - red[n].rank - red[n + 1].rank;
      out[n].torsion = red[n + 1].torsion;
    }
    return out;
  }
  for (size_t n = 0; n < top; ++n) {
    const Matrix d_out = n == 0 ? Matrix(0, c.rank(0)) : c.boundaries[n].to_dense();
    const Matrix rel_out = n == 0 ? Matrix(0, 0) : c.relations[n - 1].to_dense();
    out[n] = presented_homology(c.ring, c.rank(n), c.boundaries[n + 1].to_dense(), d_out, c.relations[n].to_dense(),
                                rel_out);
  }
  return out;
}

HomologyReport homology(const GModule& m, size_t n_max, const HomologyOptions& opts) {
  ChainComplex c = bar_complex(m, n_max + 1, {opts.tuple_cap, opts.normalized, opts.parallel});
  if (opts.check_square) {
    if (auto bad = first_nonzero_square(c))
      throw NotAComplex("boundary squares to nonzero at degree " + std::to_string(bad->first) + ", column " +
                        std::to_string(bad->second));
  }
  HomologyReport r;
  r.degrees = complex_homology(c);
  r.ring = m.ring().tag();
  r.n_max = n_max;
  r.units = m.groupoid()->num_units();
  r.arrows = m.groupoid()->num_arrows();
  for (const auto& f : m.fibers()) r.module_ranks.push_back(f.rank);
  for (size_t n = 0; n <= c.top(); ++n) r.chain_ranks.push_back(c.rank(n));
  r.normalized = opts.normalized;
  return r;
}

std::vector<HomologyReport> homology_batch(const std::vector<GModule>& modules, size_t n_max,
                                           const HomologyOptions& opts) {
  std::vector<HomologyReport> out(modules.size());
  HomologyOptions inner = opts;
  inner.parallel = false;
  std::exception_ptr error;
  const auto count = static_cast<int64_t>(modules.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int64_t i = 0; i < count; ++i) {
    try {
      out[static_cast<size_t>(i)] = homology(modules[static_cast<size_t>(i)], n_max, inner);
    } catch (...) {
#pragma omp critical(gwb_batch_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

std::vector<HomologyReport> homology_batch_serial(const std::vector<GModule>& modules, size_t n_max,
                                                  const HomologyOptions& opts) {
  HomologyOptions inner = opts;
  inner.parallel = false;
  std::vector<HomologyReport> out;
  out.reserve(modules.size());
  for (const auto& m : modules) out.push_back(homology(m, n_max, inner));
  return out;
}

bool is_trivial_module(const GModule& m) {
  const FiniteGroupoid& g = *m.groupoid();
  for (size_t x = 0; x < g.num_units(); ++x) {
    const Fiber& f = m.fiber(static_cast<UnitId>(x));
    if (f.rank != 1 || !f.is_free()) return false;
  }
  const Matrix id = Matrix::identity(1);
  for (size_t a = 0; a < g.num_arrows(); ++a)
    if (!(m.action(static_cast<ArrowId>(a)) == id)) return false;
  return true;
}

std::vector<size_t> h0_orbit_coordinates(const GModule& m) {
  if (!is_trivial_module(m)) throw IncompatibleModules("H_0 orbit bases need the trivial module");
  const FiniteGroupoid& g = *m.groupoid();
  const Ring& ring = m.ring();
  OrbitPartition p = orbits(g);

  ChainComplex c = bar_complex(m, 1, {kDefaultTupleCap, true, false});
  Matrix d1 = c.boundaries[1].to_dense();
  Matrix diffs(g.num_units(), 0);
  for (const auto& cls : p.classes) {
    for (size_t i = 1; i < cls.size(); ++i) {
      Matrix col(g.num_units(), 1);
      col(static_cast<size_t>(cls[i]), 0) = Rational(1);
      col(static_cast<size_t>(cls[0]), 0) = ring.neg(Rational(1));
      diffs = Matrix::hconcat(diffs, col);
    }
  }
  if (!same_lattice(ring, d1, diffs)) throw IncompatibleModules("image of the first boundary is not the orbit-difference lattice");
  return p.class_of;
}

namespace {

size_t class_count(const std::vector<size_t>& coords) {
  size_t n = 0;
  for (size_t c : coords) n = std::max(n, c + 1);
  return n;
}

}  // namespace

Matrix induced_h0(const Subgroupoid& h, const GModule& m_h, const GModule& m_g) {
  if (m_h.groupoid() != h.groupoid || m_g.groupoid() != h.ambient)
    throw IncompatibleModules("modules do not live on the inclusion's groupoids");
  if (!(m_h.ring() == m_g.ring())) throw IncompatibleModules("modules have different rings");
  const auto from = h0_orbit_coordinates(m_h);
  const auto to = h0_orbit_coordinates(m_g);
  Matrix out(class_count(to), class_count(from));
  std::vector<bool> done(class_count(from), false);
  for (size_t x = 0; x < from.size(); ++x) {
    const size_t target = to[static_cast<size_t>(h.unit_to_ambient[x])];
    if (done[from[x]]) {
      if (out(target, from[x]).is_zero()) throw IncompatibleModules("inclusion does not respect orbits");
      continue;
    }
    done[from[x]] = true;
    out(target, from[x]) = Rational(1);
  }
  return out;
}

Matrix induced_h0(const UnitRefinement& r, const GModule& m_from, const GModule& m_to) {
  if (m_from.groupoid() != r.from || m_to.groupoid() != r.to)
    throw IncompatibleModules("modules do not live on the refinement's groupoids");
  if (!(m_from.ring() == m_to.ring())) throw IncompatibleModules("modules have different rings");
  if (r.image.size() != r.from->num_units()) throw IncompatibleModules("refinement needs an image for every unit");
  const Ring& ring = m_from.ring();
  const auto from = h0_orbit_coordinates(m_from);
  const auto to = h0_orbit_coordinates(m_to);
  const size_t rows = class_count(to), cols = class_count(from);
  Matrix out(rows, cols);
  std::vector<bool> done(cols, false);
  for (size_t x = 0; x < from.size(); ++x) {
    Vector v(rows);
    for (UnitId y : r.image[x]) {
      if (!r.to->has_unit(y)) throw IncompatibleModules("refinement image names an unknown unit");
      auto& slot = v[to[static_cast<size_t>(y)]];
      slot = ring.add(slot, Rational(1));
    }
    const size_t c = from[x];
    if (!done[c]) {
      done[c] = true;
      out.set_column(c, v);
    } else if (!(out.column(c) == v)) {
      throw IncompatibleModules("refinement image depends on the unit chosen in class " + std::to_string(c));
    }
  }
  return out;
}

}  // namespace gwb
