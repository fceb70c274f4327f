#include "gwb/steinberg.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "gwb/errors.hpp"
#include "gwb/smith.hpp"

namespace gwb {

AlgebraElement::AlgebraElement(GroupoidPtr g, Ring ring)
    : g_(std::move(g)), ring_(std::move(ring)), coeffs_(g_->num_arrows()) {}

AlgebraElement AlgebraElement::delta(GroupoidPtr g, Ring ring, ArrowId a, const Rational& c) {
  AlgebraElement e(std::move(g), std::move(ring));
  if (!e.g_->has_arrow(a)) throw IndexOutOfRange("arrow " + std::to_string(a) + " does not exist");
  e.set(a, c);
  return e;
}

void AlgebraElement::add_to(ArrowId a, const Rational& c) {
  auto& slot = coeffs_[static_cast<size_t>(a)];
  slot = ring_.add(slot, ring_.normalize(c));
}

std::vector<std::pair<ArrowId, Rational>> AlgebraElement::support() const {
  std::vector<std::pair<ArrowId, Rational>> out;
  for (size_t a = 0; a < coeffs_.size(); ++a)
    if (!coeffs_[a].is_zero()) out.emplace_back(static_cast<ArrowId>(a), coeffs_[a]);
  return out;
}

bool AlgebraElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.is_zero(); });
}

namespace {

void check_compatible(const AlgebraElement& f, const AlgebraElement& h) {
  if (f.groupoid() != h.groupoid()) throw AmbientMismatch("elements live on different groupoids");
  if (!(f.ring() == h.ring())) throw RingMismatch(f.ring().tag() + " vs " + h.ring().tag());
}

Rational convolve_at(const FiniteGroupoid& g, const Ring& ring, const AlgebraElement& f, const AlgebraElement& h,
                     ArrowId out) {
  Rational acc;
  for (ArrowId a : g.with_range(g.range(out))) {
    const Rational& fa = f.at(a);
    if (fa.is_zero()) continue;
    const Rational& hb = h.at(g.compose(g.inverse(a), out));
    if (hb.is_zero()) continue;
    acc = ring.add(acc, ring.mul(fa, hb));
  }
  return acc;
}

}  // namespace

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  check_compatible(*this, o);
  AlgebraElement r(g_, ring_);
  for (size_t a = 0; a < coeffs_.size(); ++a) r.coeffs_[a] = ring_.add(coeffs_[a], o.coeffs_[a]);
  return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  check_compatible(*this, o);
  AlgebraElement r(g_, ring_);
  for (size_t a = 0; a < coeffs_.size(); ++a) r.coeffs_[a] = ring_.sub(coeffs_[a], o.coeffs_[a]);
  return r;
}

AlgebraElement AlgebraElement::scaled(const Rational& c) const {
  AlgebraElement r(g_, ring_);
  const Rational cc = ring_.normalize(c);
  for (size_t a = 0; a < coeffs_.size(); ++a) r.coeffs_[a] = ring_.mul(cc, coeffs_[a]);
  return r;
}

AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& h) {
  check_compatible(f, h);
  const FiniteGroupoid& g = *f.groupoid();
  const auto n = static_cast<int64_t>(g.num_arrows());
  std::vector<Rational> out(static_cast<size_t>(n));
#pragma omp parallel for schedule(static) if (n > 512)
  for (int64_t c = 0; c < n; ++c) out[static_cast<size_t>(c)] = convolve_at(g, f.ring(), f, h, static_cast<ArrowId>(c));
  AlgebraElement r(f.groupoid(), f.ring());
  for (int64_t c = 0; c < n; ++c) r.set(static_cast<ArrowId>(c), out[static_cast<size_t>(c)]);
  return r;
}

AlgebraElement convolve_serial(const AlgebraElement& f, const AlgebraElement& h) {
  check_compatible(f, h);
  const FiniteGroupoid& g = *f.groupoid();
  AlgebraElement r(f.groupoid(), f.ring());
  for (size_t c = 0; c < g.num_arrows(); ++c)
    r.set(static_cast<ArrowId>(c), convolve_at(g, f.ring(), f, h, static_cast<ArrowId>(c)));
  return r;
}

AlgebraElement indicator(const GroupoidPtr& g, const Ring& ring, const std::vector<ArrowId>& arrows) {
  AlgebraElement e(g, ring);
  for (ArrowId a : arrows) {
    if (!g->has_arrow(a)) throw IndexOutOfRange("arrow " + std::to_string(a) + " does not exist");
    e.set(a, Rational(1));
  }
  return e;
}

AlgebraElement from_unit_space(const GroupoidPtr& g, const UnitSpaceElement& u) {
  if (u.coeffs.size() != g->num_units()) throw DimensionMismatch("unit-space element has the wrong length");
  AlgebraElement e(g, u.ring);
  for (size_t x = 0; x < u.coeffs.size(); ++x) e.set(g->unit_arrow(static_cast<UnitId>(x)), u.coeffs[x]);
  return e;
}

UnitSpaceElement pushforward_source(const AlgebraElement& f) {
  const FiniteGroupoid& g = *f.groupoid();
  UnitSpaceElement u{f.ring(), std::vector<Rational>(g.num_units())};
  for (const auto& [a, c] : f.support()) {
    auto& slot = u.coeffs[static_cast<size_t>(g.source(a))];
    slot = f.ring().add(slot, c);
  }
  return u;
}

UnitSpaceElement pushforward_range(const AlgebraElement& f) {
  const FiniteGroupoid& g = *f.groupoid();
  UnitSpaceElement u{f.ring(), std::vector<Rational>(g.num_units())};
  for (const auto& [a, c] : f.support()) {
    auto& slot = u.coeffs[static_cast<size_t>(g.range(a))];
    slot = f.ring().add(slot, c);
  }
  return u;
}

TupleElement pushforward_face(const FiniteGroupoid& g, size_t n, size_t i, const TupleElement& f) {
  if (f.arity != n + 1) throw IndexOutOfRange("face map d_" + std::to_string(i) + " needs (n+1)-tuples");
  TupleElement out;
  out.ring = f.ring;
  out.arity = n == 0 ? 1 : n;
  for (const auto& [t, c] : f.coeffs) {
    std::vector<ArrowId> image;
    if (n == 0) {
      if (i != 0) throw IndexOutOfRange("degree-zero face index must be 0");
      if (t.size() != 1 || !g.has_arrow(t[0])) throw IndexOutOfRange("not an arrow");
      image = {g.source(t[0])};
    } else {
      image = face_map(g, n, i, t);
    }
    Rational& slot = out.coeffs[image];
    slot = f.ring.add(slot, c);
  }
  for (auto it = out.coeffs.begin(); it != out.coeffs.end();) {
    if (it->second.is_zero()) {
      it = out.coeffs.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

NamedMap NamedMap::parse(const std::string& name) {
  if (name == "source") return {Kind::Source, 0, 0};
  if (name == "range") return {Kind::Range, 0, 0};
  if (name.starts_with("face:")) {
    size_t colon = name.find(':', 5);
    if (colon != std::string::npos) {
      try {
        size_t used1 = 0, used2 = 0;
        const std::string a = name.substr(5, colon - 5), b = name.substr(colon + 1);
        unsigned long n = std::stoul(a, &used1);
        unsigned long i = std::stoul(b, &used2);
        if (used1 == a.size() && used2 == b.size() && i <= n) return {Kind::Face, n, i};
      } catch (const std::exception&) {
      }
    }
  }
  throw UnknownMap("unknown map '" + name + "' (expected source, range or face:n:i)");
}

std::vector<AlgebraElement> augmentation_kernel(const GroupoidPtr& g, const Ring& ring) {
  std::vector<AlgebraElement> basis;
  for (size_t a = 0; a < g->num_arrows(); ++a) {
    const auto id = static_cast<ArrowId>(a);
    if (g->is_unit_arrow(id)) continue;
    AlgebraElement k(g, ring);
    k.set(id, Rational(1));
    k.set(g->unit_arrow(g->source(id)), ring.neg(Rational(1)));
    basis.push_back(std::move(k));
  }
  return basis;
}

KernelGenerationResult kernel_generation_check(const GroupoidPtr& gp, const Ring& ring,
                                               const std::vector<std::vector<ArrowId>>& x) {
  const FiniteGroupoid& g = *gp;
  BisectionSemigroup s = generate_semigroup(g, x);
  if (!s.cover) {
    std::vector<bool> covered(g.num_arrows(), false);
    for (const auto& b : s.elements)
      for (ArrowId a : b) covered[static_cast<size_t>(a)] = true;
    std::string missing;
    for (size_t a = 0; a < covered.size(); ++a)
      if (!covered[a]) missing += (missing.empty() ? "" : ",") + std::to_string(a);
    throw CoverFailure("generated semigroup misses arrows " + missing);
  }

  KernelGenerationResult res;
  res.generators = s.generators;
  for (const auto& v : res.generators) {
    Bisection e = bisection_product(g, bisection_inverse(g, v), v);
    res.ideal_generators.push_back(indicator(gp, ring, v) - indicator(gp, ring, e));
  }

  // Spanning set of the right ideal: w_v ∗ δ_h.
  struct Column {
    size_t v;
    ArrowId h;
    AlgebraElement value;
  };
  std::vector<Column> columns;
  for (size_t v = 0; v < res.ideal_generators.size(); ++v) {
    for (size_t h = 0; h < g.num_arrows(); ++h) {
      AlgebraElement w = convolve(res.ideal_generators[v], AlgebraElement::delta(gp, ring, static_cast<ArrowId>(h)));
      if (!w.is_zero()) columns.push_back({v, static_cast<ArrowId>(h), std::move(w)});
    }
  }

  // Ideal ⊆ ker s∗: coordinates in the basis k_g are the non-unit coefficients.
  for (const auto& col : columns) {
    KernelGenerationResult::IdealTerm term{col.v, col.h, {}};
    AlgebraElement rebuilt(gp, ring);
    for (size_t a = 0; a < g.num_arrows(); ++a) {
      const auto id = static_cast<ArrowId>(a);
      if (g.is_unit_arrow(id)) continue;
      const Rational& c = col.value.at(id);
      term.kernel_coords.push_back(c);
      if (c.is_zero()) continue;
      rebuilt.add_to(id, c);
      rebuilt.add_to(g.unit_arrow(g.source(id)), ring.neg(c));
    }
    if (!(rebuilt == col.value)) throw std::logic_error("ideal element outside ker s_*");
    res.ideal_in_kernel.push_back(std::move(term));
  }

  // ker s∗ ⊆ ideal: solve for every basis vector and verify by convolution.
  Matrix span(g.num_arrows(), columns.size());
  for (size_t j = 0; j < columns.size(); ++j)
    for (size_t a = 0; a < g.num_arrows(); ++a) span(a, j) = columns[j].value.at(static_cast<ArrowId>(a));
  LatticeSolver solver(ring, span);
  res.generated = true;
  for (const auto& k : augmentation_kernel(gp, ring)) {
    ArrowId gid = kNoArrow;
    for (const auto& [a, c] : k.support())
      if (!g.is_unit_arrow(a)) gid = a;
    auto sol = solver.solve(k.coefficients());
    if (!sol) {
      res.generated = false;
      if (!res.missing) res.missing = gid;
      continue;
    }
    std::vector<AlgebraElement> mult(res.ideal_generators.size(), AlgebraElement(gp, ring));
    for (size_t j = 0; j < columns.size(); ++j)
      if (!(*sol)[j].is_zero()) mult[columns[j].v].add_to(columns[j].h, (*sol)[j]);
    AlgebraElement check(gp, ring);
    for (size_t v = 0; v < mult.size(); ++v) check = check + convolve(res.ideal_generators[v], mult[v]);
    if (!(check == k)) throw std::logic_error("kernel membership certificate failed to verify");
    res.kernel_arrows.push_back(gid);
    res.multipliers.push_back(std::move(mult));
  }
  return res;
}

bool verify_kernel_generation(const GroupoidPtr& gp, const Ring& ring, const KernelGenerationResult& r) {
  const FiniteGroupoid& g = *gp;
  auto kernel_vector = [&](ArrowId a) {
    return AlgebraElement::delta(gp, ring, a) - AlgebraElement::delta(gp, ring, g.unit_arrow(g.source(a)));
  };
  std::vector<ArrowId> non_units;
  for (size_t a = 0; a < g.num_arrows(); ++a)
    if (!g.is_unit_arrow(static_cast<ArrowId>(a))) non_units.push_back(static_cast<ArrowId>(a));

  if (r.ideal_generators.size() != r.generators.size()) return false;
  for (size_t v = 0; v < r.generators.size(); ++v) {
    const Bisection e = bisection_product(g, bisection_inverse(g, r.generators[v]), r.generators[v]);
    if (!(r.ideal_generators[v] == indicator(gp, ring, r.generators[v]) - indicator(gp, ring, e))) return false;
  }
  for (const auto& t : r.ideal_in_kernel) {
    if (t.generator >= r.ideal_generators.size() || t.kernel_coords.size() != non_units.size()) return false;
    AlgebraElement expect(gp, ring);
    for (size_t j = 0; j < non_units.size(); ++j)
      if (!t.kernel_coords[j].is_zero()) expect = expect + kernel_vector(non_units[j]).scaled(t.kernel_coords[j]);
    if (!(convolve_serial(r.ideal_generators[t.generator], AlgebraElement::delta(gp, ring, t.h)) == expect)) return false;
  }
  if (!r.generated) return true;
  if (r.kernel_arrows != non_units || r.multipliers.size() != non_units.size()) return false;
  for (size_t j = 0; j < non_units.size(); ++j) {
    AlgebraElement sum(gp, ring);
    for (size_t v = 0; v < r.multipliers[j].size(); ++v)
      sum = sum + convolve_serial(r.ideal_generators[v], r.multipliers[j][v]);
    if (!(sum == kernel_vector(non_units[j]))) return false;
  }
  return true;
}

FullnessDecomposition fullness_idempotent(const GroupoidPtr& gp, const std::vector<int64_t>& y_in, const Ring& ring) {
  const FiniteGroupoid& g = *gp;
  Restriction r = restrict(gp, y_in);
  if (!r.full) throw NotFull("unit set does not meet every orbit");
  FullnessDecomposition d{{}, {}, {}, 0, AlgebraElement(gp, ring), false};
  std::vector<bool> in_y(g.num_units(), false);
  for (int64_t x : y_in) in_y[static_cast<size_t>(x)] = true;
  for (size_t x = 0; x < g.num_units(); ++x)
    if (in_y[x]) d.y.push_back(static_cast<UnitId>(x));

  Bisection v0;
  for (UnitId x : d.y) v0.push_back(g.unit_arrow(x));
  std::sort(v0.begin(), v0.end());
  d.bisections.push_back(v0);
  for (size_t x = 0; x < g.num_units(); ++x) {
    if (in_y[x]) continue;
    ArrowId best = kNoArrow;
    for (ArrowId a : g.with_range(static_cast<UnitId>(x)))
      if (in_y[static_cast<size_t>(g.source(a))] && (best == kNoArrow || a < best)) best = a;
    bool placed = false;
    for (size_t i = 1; i < d.bisections.size() && !placed; ++i) {
      Bisection cand = d.bisections[i];
      cand.push_back(best);
      if (is_bisection(g, cand)) {
        std::sort(cand.begin(), cand.end());
        d.bisections[i] = std::move(cand);
        placed = true;
      }
    }
    if (!placed) d.bisections.push_back({best});
  }

  const AlgebraElement one_y = indicator(gp, ring, v0);
  std::vector<AlgebraElement> p;
  for (const auto& v : d.bisections)
    p.push_back(convolve(convolve(indicator(gp, ring, v), one_y), indicator(gp, ring, bisection_inverse(g, v))));

  const size_t k = p.size();
  d.total_terms = (k >= 63) ? SIZE_MAX : (size_t{1} << k) - 1;
  std::vector<size_t> subset;
  // DFS over subsets in lexicographic order; a zero prefix kills every extension.
  auto dfs = [&](auto&& self, size_t start, const AlgebraElement& prefix) -> void {
    for (size_t i = start; i < k; ++i) {
      AlgebraElement prod = subset.empty() ? p[i] : convolve(prefix, p[i]);
      if (prod.is_zero()) continue;
      subset.push_back(i);
      const int sign = (subset.size() % 2 == 1) ? 1 : -1;
      d.sum = sign > 0 ? d.sum + prod : d.sum - prod;
      d.terms.push_back({subset, sign, prod});
      self(self, i + 1, prod);
      subset.pop_back();
    }
  };
  dfs(dfs, 0, AlgebraElement(gp, ring));

  std::vector<ArrowId> units;
  for (size_t x = 0; x < g.num_units(); ++x) units.push_back(g.unit_arrow(static_cast<UnitId>(x)));
  d.verified = d.sum == indicator(gp, ring, units);
  return d;
}

AveragingResult averaging_idempotent(const GroupoidPtr& gp, const Ring& ring) {
  const FiniteGroupoid& g = *gp;
  if (!is_group_bundle(g)) throw NotGroupBundle("groupoid has arrows between distinct units");
  AveragingResult res{AlgebraElement(gp, ring), {}, {}, false, false, false};

  std::vector<std::vector<ArrowId>> fibers(g.num_units());
  size_t width = g.num_units() > 0 ? 1 : 0;
  for (size_t x = 0; x < g.num_units(); ++x) {
    fibers[x] = isotropy_group(g, static_cast<int64_t>(x)).elements;
    width = std::max(width, fibers[x].size());
  }
  for (size_t i = 0; i < width; ++i) {
    Bisection v;
    for (size_t x = 0; x < g.num_units(); ++x) v.push_back(i < fibers[x].size() ? fibers[x][i] : fibers[x][0]);
    std::sort(v.begin(), v.end());
    res.cover.push_back(std::move(v));
  }

  std::set<Bisection> seen;
  std::vector<Bisection> group;
  Bisection id;
  for (size_t x = 0; x < g.num_units(); ++x) id.push_back(g.unit_arrow(static_cast<UnitId>(x)));
  std::sort(id.begin(), id.end());
  seen.insert(id);
  group.push_back(id);
  for (size_t i = 0; i < group.size(); ++i) {
    for (const auto& c : res.cover) {
      Bisection p = bisection_product(g, group[i], c);
      if (seen.insert(p).second) group.push_back(std::move(p));
    }
  }
  std::sort(group.begin(), group.end());
  res.group = group;

  const Rational order = ring.from_int(static_cast<int64_t>(group.size()));
  if (!ring.is_unit(order)) throw OrderNotInvertible(std::to_string(group.size()));
  const Rational inv = ring.inverse(order);
  for (const auto& v : group)
    for (ArrowId a : v) res.e.add_to(a, inv);

  res.idempotent = convolve(res.e, res.e) == res.e;
  res.absorbs_group = std::all_of(group.begin(), group.end(), [&](const Bisection& v) {
    return convolve(res.e, indicator(gp, ring, v)) == res.e;
  });
  UnitSpaceElement ones{ring, std::vector<Rational>(g.num_units(), Rational(1))};
  res.augmentation_one = pushforward_source(res.e) == ones;
  return res;
}

SplitResult split_source(const GroupoidPtr& gp, const Ring& ring) {
  const FiniteGroupoid& g = *gp;
  const size_t na = g.num_arrows();
  SplitResult res;

  // f∗(δ_g − δ_{u s(g)}) = 0 reads f(h∘g⁻¹) = f(h) for s(h) = s(g).
  std::vector<size_t> parent(na);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (size_t gi = 0; gi < na; ++gi) {
    const auto gid = static_cast<ArrowId>(gi);
    if (g.is_unit_arrow(gid)) continue;
    const ArrowId ginv = g.inverse(gid);
    for (ArrowId h : g.with_source(g.source(gid))) {
      size_t a = find(static_cast<size_t>(g.compose(h, ginv)));
      size_t b = find(static_cast<size_t>(h));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<size_t> class_index(na, SIZE_MAX);
  size_t classes = 0;
  for (size_t a = 0; a < na; ++a) {
    size_t root = find(a);
    if (class_index[root] == SIZE_MAX) class_index[root] = classes++;
    class_index[a] = class_index[root];
  }

  // s∗(f) = 1 on the reduced unknowns.
  Matrix system(g.num_units(), classes);
  for (size_t a = 0; a < na; ++a) {
    auto& slot = system(static_cast<size_t>(g.source(static_cast<ArrowId>(a))), class_index[a]);
    slot = ring.add(slot, Rational(1));
  }
  LatticeSolver solver(ring, system);
  auto sol = solver.solve(Vector(g.num_units(), Rational(1)));

  if (!sol) {
    for (UnitId x : transversal(g)) {
      size_t order = isotropy_group(g, x).order();
      if (!ring.is_unit(ring.from_int(static_cast<int64_t>(order)))) {
        res.obstruction_unit = x;
        res.obstruction_order = order;
        res.transcript.push_back("no f with s_*(f) = 1 and f*ker s_* = 0 over " + ring.tag());
        res.transcript.push_back("isotropy order " + std::to_string(order) + " at unit " + std::to_string(x) +
                                 " is not a unit");
        return res;
      }
    }
    throw std::logic_error("splitting system unsolvable although every isotropy order is a unit");
  }

  AlgebraElement f(gp, ring);
  for (size_t a = 0; a < na; ++a) f.set(static_cast<ArrowId>(a), (*sol)[class_index[a]]);

  UnitSpaceElement ones{ring, std::vector<Rational>(g.num_units(), Rational(1))};
  if (!(pushforward_source(f) == ones)) throw std::logic_error("splitting certificate fails s_*(f) = 1");
  res.transcript.push_back("s_*(f) = 1: verified on " + std::to_string(g.num_units()) + " units");
  auto kernel = augmentation_kernel(gp, ring);
  for (const auto& k : kernel)
    if (!convolve(f, k).is_zero()) throw std::logic_error("splitting certificate fails f*k = 0");
  res.transcript.push_back("f*k = 0: verified on " + std::to_string(kernel.size()) + " kernel basis vectors");
  res.split = true;
  res.f = std::move(f);
  return res;
}

AlgebraElement splitting_map(const AlgebraElement& f, const UnitSpaceElement& phi) {
  return convolve(f, from_unit_space(f.groupoid(), phi));
}

size_t uniform_bound(const FiniteGroupoid& g) {
  size_t m = 0;
  for (size_t x = 0; x < g.num_units(); ++x) m = std::max(m, g.with_range(static_cast<UnitId>(x)).size());
  return m;
}

}  // namespace gwb
