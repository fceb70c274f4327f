#include "gwb/gmodule.hpp"

#include <algorithm>

#include "gwb/errors.hpp"
#include "gwb/smith.hpp"

namespace gwb {

GModule::GModule(GroupoidPtr g, Ring ring, std::vector<Fiber> fibers, std::vector<Matrix> actions)
    : g_(std::move(g)), ring_(std::move(ring)), fibers_(std::move(fibers)), actions_(std::move(actions)) {
  if (fibers_.size() != g_->num_units()) throw DimensionMismatch("one fiber per unit required");
  if (actions_.size() != g_->num_arrows()) throw DimensionMismatch("one action matrix per arrow required");
  for (auto& f : fibers_)
    if (f.relations.rows() != f.rank) f.relations = Matrix(f.rank, 0);
}

bool GModule::is_free() const {
  return std::all_of(fibers_.begin(), fibers_.end(), [](const Fiber& f) { return f.is_free(); });
}

ModuleSpec GModule::to_spec() const {
  ModuleSpec s;
  for (size_t x = 0; x < fibers_.size(); ++x) s.fibers.push_back({static_cast<int64_t>(x), fibers_[x].rank, fibers_[x].relations});
  for (size_t a = 0; a < actions_.size(); ++a) s.actions.push_back({static_cast<int64_t>(a), actions_[a]});
  return s;
}

namespace {

bool columns_in(const Ring& ring, const Matrix& cols, const Fiber& target) {
  if (cols.is_zero()) return true;
  if (target.is_free()) return false;
  LatticeSolver solver(ring, target.relations);
  for (size_t c = 0; c < cols.cols(); ++c)
    if (!solver.contains(cols.column(c))) return false;
  return true;
}

std::string pair_str(int64_t a, int64_t b) { return "(" + std::to_string(a) + ", " + std::to_string(b) + ")"; }

}  // namespace

void check_gmodule(const GModule& m) {
  const FiniteGroupoid& g = *m.groupoid();
  const Ring& ring = m.ring();
  for (size_t a = 0; a < g.num_arrows(); ++a) {
    const auto id = static_cast<ArrowId>(a);
    const Matrix& act = m.action(id);
    if (act.rows() != m.rank(g.range(id)) || act.cols() != m.rank(g.source(id)))
      throw DimensionMismatch("action of arrow " + std::to_string(a) + " has the wrong shape");
    for (size_t r = 0; r < act.rows(); ++r)
      for (size_t c = 0; c < act.cols(); ++c)
        if (!ring.contains(act(r, c))) throw NotInRing("action of arrow " + std::to_string(a) + " leaves " + ring.tag());
    if (!columns_in(ring, multiply(ring, act, m.fiber(g.source(id)).relations), m.fiber(g.range(id))))
      throw FunctorialityViolation("arrow " + std::to_string(a) + " does not preserve relations");
    if (g.is_unit_arrow(id)) {
      if (!columns_in(ring, subtract(ring, act, Matrix::identity(act.rows())), m.fiber(g.range(id))))
        throw FunctorialityViolation("unit arrow " + std::to_string(a) + " does not act as the identity " +
                                     pair_str(a, a));
    }
  }
  for (size_t a = 0; a < g.num_arrows(); ++a) {
    const auto ga = static_cast<ArrowId>(a);
    for (ArrowId b : g.with_range(g.source(ga))) {
      Matrix prod = multiply(ring, m.action(ga), m.action(b));
      if (!columns_in(ring, subtract(ring, m.action(g.compose(ga, b)), prod), m.fiber(g.range(ga))))
        throw FunctorialityViolation("action(g∘h) != action(g)action(h) at " + pair_str(ga, b));
    }
  }
}

GModule validate_gmodule(const GroupoidPtr& gp, const Ring& ring, const ModuleSpec& spec) {
  const FiniteGroupoid& g = *gp;
  std::vector<Fiber> fibers(g.num_units());
  std::vector<bool> have_fiber(g.num_units(), false);
  auto norm_matrix = [&](const Matrix& src) {
    Matrix out(src.rows(), src.cols());
    for (size_t r = 0; r < src.rows(); ++r)
      for (size_t c = 0; c < src.cols(); ++c) out(r, c) = ring.normalize(src(r, c));
    return out;
  };
  for (const auto& f : spec.fibers) {
    if (!g.has_unit(f.unit)) throw UnknownUnit("fiber for unknown unit " + std::to_string(f.unit));
    if (have_fiber[static_cast<size_t>(f.unit)]) throw Malformed("duplicate fiber for unit " + std::to_string(f.unit));
    have_fiber[static_cast<size_t>(f.unit)] = true;
    if (f.relations.cols() > 0 && f.relations.rows() != f.rank)
      throw DimensionMismatch("relations of unit " + std::to_string(f.unit) + " need " + std::to_string(f.rank) + " rows");
    fibers[static_cast<size_t>(f.unit)] = {f.rank, f.relations.cols() > 0 ? norm_matrix(f.relations) : Matrix(f.rank, 0)};
  }
  for (size_t x = 0; x < g.num_units(); ++x)
    if (!have_fiber[x]) throw Malformed("unit " + std::to_string(x) + " has no fiber");

  std::vector<Matrix> actions(g.num_arrows());
  std::vector<bool> have_action(g.num_arrows(), false);
  for (const auto& a : spec.actions) {
    if (!g.has_arrow(a.arrow)) throw Malformed("action for unknown arrow " + std::to_string(a.arrow));
    if (have_action[static_cast<size_t>(a.arrow)]) throw Malformed("duplicate action for arrow " + std::to_string(a.arrow));
    have_action[static_cast<size_t>(a.arrow)] = true;
    actions[static_cast<size_t>(a.arrow)] = norm_matrix(a.matrix);
  }
  for (size_t a = 0; a < g.num_arrows(); ++a) {
    if (have_action[a]) continue;
    const auto id = static_cast<ArrowId>(a);
    if (!g.is_unit_arrow(id)) throw Malformed("arrow " + std::to_string(a) + " has no action");
    actions[a] = Matrix::identity(fibers[static_cast<size_t>(g.source(id))].rank);
  }
  GModule m(gp, ring, std::move(fibers), std::move(actions));
  check_gmodule(m);
  return m;
}

GModule trivial_module(const GroupoidPtr& g, const Ring& ring) {
  std::vector<Fiber> fibers(g->num_units(), Fiber{1, Matrix(1, 0)});
  std::vector<Matrix> actions(g->num_arrows(), Matrix::identity(1));
  return GModule(g, ring, std::move(fibers), std::move(actions));
}

GModule base_change(const GModule& m, const Ring& ring) {
  auto convert = [&](Matrix a) {
    for (size_t i = 0; i < a.rows(); ++i)
      for (size_t j = 0; j < a.cols(); ++j) a(i, j) = ring.normalize(a(i, j));
    return a;
  };
  std::vector<Fiber> fibers;
  for (const auto& f : m.fibers()) fibers.push_back({f.rank, convert(f.relations)});
  std::vector<Matrix> actions;
  for (size_t a = 0; a < m.groupoid()->num_arrows(); ++a) actions.push_back(convert(m.action(static_cast<ArrowId>(a))));
  return GModule(m.groupoid(), ring, std::move(fibers), std::move(actions));
}

GModule restrict_module(const Subgroupoid& h, const GModule& m) {
  if (h.ambient != m.groupoid()) throw NotSubgroupoid("subgroupoid of a different groupoid");
  std::vector<Fiber> fibers;
  for (UnitId x : h.unit_to_ambient) fibers.push_back(m.fiber(x));
  std::vector<Matrix> actions;
  for (ArrowId a : h.arrow_to_ambient) actions.push_back(m.action(a));
  return GModule(h.groupoid, m.ring(), std::move(fibers), std::move(actions));
}

GModule induce(const Subgroupoid& h, const GModule& m) {
  if (h.groupoid != m.groupoid()) throw NotSubgroupoid("module does not live on the subgroupoid");
  const FiniteGroupoid& g = *h.ambient;
  const FiniteGroupoid& hg = *h.groupoid;

  // Classes of arrows from H⁰ modulo right multiplication by H.
  std::vector<ArrowId> rep_of(g.num_arrows(), kNoArrow);
  std::vector<std::vector<ArrowId>> reps(g.num_units());
  for (size_t a = 0; a < g.num_arrows(); ++a) {
    const auto id = static_cast<ArrowId>(a);
    const UnitId hs = h.unit_from_ambient[static_cast<size_t>(g.source(id))];
    if (hs < 0 || rep_of[a] != kNoArrow) continue;
    reps[static_cast<size_t>(g.range(id))].push_back(id);
    for (ArrowId hh : hg.with_range(hs)) {
      ArrowId member = g.compose(id, h.arrow_to_ambient[static_cast<size_t>(hh)]);
      rep_of[static_cast<size_t>(member)] = id;
    }
  }

  std::vector<Fiber> fibers(g.num_units());
  std::vector<std::vector<size_t>> offset(g.num_units());
  std::vector<size_t> class_pos(g.num_arrows(), 0);  // position of a representative in its fiber
  for (size_t x = 0; x < g.num_units(); ++x) {
    size_t total = 0;
    for (size_t i = 0; i < reps[x].size(); ++i) {
      offset[x].push_back(total);
      class_pos[static_cast<size_t>(reps[x][i])] = i;
      total += m.rank(h.unit_from_ambient[static_cast<size_t>(g.source(reps[x][i]))]);
    }
    Matrix rel(total, 0);
    for (size_t i = 0; i < reps[x].size(); ++i) {
      const Fiber& f = m.fiber(h.unit_from_ambient[static_cast<size_t>(g.source(reps[x][i]))]);
      if (f.is_free()) continue;
      Matrix block(total, f.relations.cols());
      for (size_t r = 0; r < f.rank; ++r)
        for (size_t c = 0; c < f.relations.cols(); ++c) block(offset[x][i] + r, c) = f.relations(r, c);
      rel = Matrix::hconcat(rel, block);
    }
    fibers[x] = {total, std::move(rel)};
  }

  std::vector<Matrix> actions(g.num_arrows());
  for (size_t k = 0; k < g.num_arrows(); ++k) {
    const auto kid = static_cast<ArrowId>(k);
    const auto x = static_cast<size_t>(g.source(kid));
    const auto z = static_cast<size_t>(g.range(kid));
    Matrix act(fibers[z].rank, fibers[x].rank);
    for (size_t i = 0; i < reps[x].size(); ++i) {
      const ArrowId kg = g.compose(kid, reps[x][i]);
      const ArrowId rep = rep_of[static_cast<size_t>(kg)];
      const ArrowId corr = g.compose(g.inverse(rep), kg);
      const Matrix& block = m.action(h.arrow_from_ambient[static_cast<size_t>(corr)]);
      const size_t row0 = offset[z][class_pos[static_cast<size_t>(rep)]];
      const size_t col0 = offset[x][i];
      for (size_t r = 0; r < block.rows(); ++r)
        for (size_t c = 0; c < block.cols(); ++c) act(row0 + r, col0 + c) = block(r, c);
    }
    actions[k] = std::move(act);
  }
  return GModule(h.ambient, m.ring(), std::move(fibers), std::move(actions));
}

InvariantSplit invariant_submodule(const GModule& m, const std::vector<int64_t>& u) {
  const FiniteGroupoid& g = *m.groupoid();
  std::vector<bool> in_u(g.num_units(), false);
  for (int64_t x : u) {
    if (!g.has_unit(x)) throw UnknownUnit("unit " + std::to_string(x) + " does not exist");
    in_u[static_cast<size_t>(x)] = true;
  }
  for (size_t a = 0; a < g.num_arrows(); ++a) {
    const auto id = static_cast<ArrowId>(a);
    if (in_u[static_cast<size_t>(g.source(id))] != in_u[static_cast<size_t>(g.range(id))])
      throw NotInvariant("arrow " + std::to_string(a) + " leaves the unit set");
  }
  auto part = [&](bool keep_u) {
    std::vector<Fiber> fibers;
    for (size_t x = 0; x < g.num_units(); ++x)
      fibers.push_back(in_u[x] == keep_u ? m.fiber(static_cast<UnitId>(x)) : Fiber{0, Matrix(0, 0)});
    std::vector<Matrix> actions;
    for (size_t a = 0; a < g.num_arrows(); ++a) {
      const auto id = static_cast<ArrowId>(a);
      actions.push_back(in_u[static_cast<size_t>(g.source(id))] == keep_u ? m.action(id) : Matrix(0, 0));
    }
    return GModule(m.groupoid(), m.ring(), std::move(fibers), std::move(actions));
  };
  return {part(true), part(false)};
}

}  // namespace gwb
