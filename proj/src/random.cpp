#include "gwb/random.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gwb/groupoid_builders.hpp"
#include "gwb/smith.hpp"

namespace gwb {

uint64_t derive_seed(uint64_t seed, uint64_t stream) {
  uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

size_t uniform(Rng& rng, size_t lo, size_t hi) {  // inclusive
  return std::uniform_int_distribution<size_t>(lo, hi)(rng);
}

template <class T>
std::vector<T> shuffled_iota(Rng& rng, size_t n) {
  std::vector<T> v(n);
  std::iota(v.begin(), v.end(), T{0});
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

// Subgroups of an isotropy group given by its arrows (identity first).
std::vector<std::vector<ArrowId>> subgroups(const FiniteGroupoid& g, const std::vector<ArrowId>& h) {
  std::vector<std::vector<ArrowId>> out;
  const size_t rest = h.size() - 1;
  for (size_t mask = 0; mask < (size_t{1} << rest); ++mask) {
    std::vector<ArrowId> k{h[0]};
    for (size_t i = 0; i < rest; ++i)
      if (mask & (size_t{1} << i)) k.push_back(h[i + 1]);
    std::sort(k.begin(), k.end());
    bool closed = true;
    for (ArrowId a : k)
      for (ArrowId b : k)
        if (!std::binary_search(k.begin(), k.end(), g.compose(a, b))) closed = false;
    if (closed) out.push_back(std::move(k));
  }
  return out;
}

// Permutation representation on the left cosets of k, or its sign character
// when `sign` is set (index 2 only). Indexed by position in h.
std::vector<Matrix> coset_representation(const FiniteGroupoid& g, const std::vector<ArrowId>& h,
                                         const std::vector<ArrowId>& k, bool sign) {
  std::vector<std::vector<ArrowId>> cosets;
  for (ArrowId c : h) {
    std::vector<ArrowId> coset;
    for (ArrowId x : k) coset.push_back(g.compose(c, x));
    std::sort(coset.begin(), coset.end());
    if (std::find(cosets.begin(), cosets.end(), coset) == cosets.end()) cosets.push_back(coset);
  }
  auto coset_of = [&](ArrowId a) {
    for (size_t i = 0; i < cosets.size(); ++i)
      if (std::binary_search(cosets[i].begin(), cosets[i].end(), a)) return i;
    return cosets.size();
  };
  std::vector<Matrix> out;
  for (ArrowId a : h) {
    if (sign) {
      Matrix m(1, 1);
      m(0, 0) = Rational(std::binary_search(k.begin(), k.end(), a) ? 1 : -1);
      out.push_back(m);
      continue;
    }
    Matrix m(cosets.size(), cosets.size());
    for (size_t c = 0; c < cosets.size(); ++c) m(coset_of(g.compose(a, cosets[c][0])), c) = Rational(1);
    out.push_back(m);
  }
  return out;
}

Matrix normalized(const Ring& ring, Matrix m) {
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) m(i, j) = ring.normalize(m(i, j));
  return m;
}

}  // namespace

GroupoidPtr random_groupoid(Rng& rng, const RandomGroupoidOptions& opts) {
  const auto& groups = small_group_catalogue();
  const size_t components = uniform(rng, opts.min_components, opts.max_components);
  std::vector<GroupoidPtr> parts;
  size_t budget = opts.max_arrows;
  for (size_t c = 0; c < components; ++c) {
    const size_t reserve = components - c - 1;  // one arrow for each later component
    if (budget <= reserve) break;
    const size_t room = budget - reserve;
    std::vector<std::pair<size_t, size_t>> choices;  // (k, group index)
    for (size_t k = 1; k * k <= room; ++k)
      for (size_t i = 0; i < groups.size(); ++i)
        if (k * k * groups[i].order <= room) choices.emplace_back(k, i);
    const auto [k, gi] = choices[uniform(rng, 0, choices.size() - 1)];
    parts.push_back(transitive_groupoid(k, groups[gi]));
    budget -= k * k * groups[gi].order;
  }
  GroupoidPtr g = parts.size() == 1 ? parts[0] : disjoint_union(parts);
  return relabel(*g, shuffled_iota<UnitId>(rng, g->num_units()), shuffled_iota<ArrowId>(rng, g->num_arrows()));
}

Matrix random_unimodular(Rng& rng, size_t n) {
  std::uniform_int_distribution<int> entry(-2, 2);
  const Ring z = Ring::integers();
  for (;;) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) m(i, j) = Rational(entry(rng));
    const SmithForm s = smith_normal_form(z, m, false);
    if (s.rank == n && std::all_of(s.diagonal.begin(), s.diagonal.end(), [](const Rational& d) { return d == Rational(1); }))
      return m;
  }
}

GModule random_module(const GroupoidPtr& g, const Ring& ring, Rng& rng, size_t max_rank) {
  const Ring z = Ring::integers();
  const OrbitPartition p = orbits(*g);
  std::vector<Fiber> fibers(g->num_units());
  std::vector<Matrix> actions(g->num_arrows());
  for (const auto& cls : p.classes) {
    const UnitId root = cls[0];
    const size_t r = uniform(rng, 1, max_rank);
    const IsotropyGroup iso = isotropy_group(*g, root);

    // Block-diagonal representation of the isotropy group, conjugated.
    const auto subs = subgroups(*g, iso.elements);
    std::vector<Matrix> rho(iso.order(), Matrix(0, 0));
    size_t filled = 0;
    while (filled < r) {
      std::vector<std::pair<size_t, bool>> options;
      for (size_t i = 0; i < subs.size(); ++i) {
        const size_t index = iso.order() / subs[i].size();
        if (filled + index <= r) options.emplace_back(i, false);
        if (index == 2) options.emplace_back(i, true);
      }
      const auto [si, sign] = options[uniform(rng, 0, options.size() - 1)];
      const auto block = coset_representation(*g, iso.elements, subs[si], sign);
      for (size_t e = 0; e < rho.size(); ++e) rho[e] = direct_sum(rho[e], block[e]);
      filled += block[0].rows();
    }
    const Matrix a = random_unimodular(rng, r);
    const Matrix a_inv = inverse(z, a);
    for (auto& m : rho) m = multiply(z, multiply(z, a, m), a_inv);

    // Spanning transport from the root and a change of basis per fiber.
    std::vector<ArrowId> tree(g->num_units(), kNoArrow);
    std::vector<Matrix> basis(g->num_units()), basis_inv(g->num_units());
    for (UnitId y : cls) {
      for (ArrowId t : g->with_source(root))
        if (g->range(t) == y) {
          tree[static_cast<size_t>(y)] = t;
          break;
        }
      basis[static_cast<size_t>(y)] = y == root ? Matrix::identity(r) : random_unimodular(rng, r);
      basis_inv[static_cast<size_t>(y)] = inverse(z, basis[static_cast<size_t>(y)]);
      fibers[static_cast<size_t>(y)] = Fiber{r, Matrix(r, 0)};
    }
    for (UnitId y : cls) {
      for (ArrowId a_id : g->with_source(y)) {
        const UnitId b = g->range(a_id);
        // t_b⁻¹ ∘ g ∘ t_y lies in the root isotropy group
        const ArrowId h =
            g->compose(g->inverse(tree[static_cast<size_t>(b)]), g->compose(a_id, tree[static_cast<size_t>(y)]));
        const size_t pos = static_cast<size_t>(
            std::lower_bound(iso.elements.begin() + 1, iso.elements.end(), h) - iso.elements.begin());
        const size_t e = h == iso.elements[0] ? 0 : pos;
        const Matrix act =
            multiply(z, multiply(z, basis[static_cast<size_t>(b)], rho[e]), basis_inv[static_cast<size_t>(y)]);
        actions[static_cast<size_t>(a_id)] = normalized(ring, act);
      }
    }
  }
  return GModule(g, ring, std::move(fibers), std::move(actions));
}

std::vector<ArrowId> subgroupoid_closure(const FiniteGroupoid& g, std::vector<ArrowId> arrows) {
  std::set<ArrowId> s;
  std::vector<ArrowId> work;
  auto add = [&](ArrowId a) {
    if (s.insert(a).second) work.push_back(a);
  };
  for (ArrowId a : arrows) add(a);
  while (!work.empty()) {
    const ArrowId a = work.back();
    work.pop_back();
    add(g.inverse(a));
    add(g.unit_arrow(g.source(a)));
    add(g.unit_arrow(g.range(a)));
    const std::vector<ArrowId> current(s.begin(), s.end());
    for (ArrowId b : current) {
      const ArrowId ab = g.compose(a, b);
      if (ab != kNoArrow) add(ab);
      const ArrowId ba = g.compose(b, a);
      if (ba != kNoArrow) add(ba);
    }
  }
  return {s.begin(), s.end()};
}

Subgroupoid random_subgroupoid(const GroupoidPtr& g, Rng& rng) {
  std::vector<ArrowId> pick;
  for (size_t a = 0; a < g->num_arrows(); ++a)
    if (uniform(rng, 0, 3) == 0) pick.push_back(static_cast<ArrowId>(a));
  if (pick.empty()) pick.push_back(static_cast<ArrowId>(uniform(rng, 0, g->num_arrows() - 1)));
  return subgroupoid(g, subgroupoid_closure(*g, pick));
}

std::vector<std::vector<ArrowId>> random_bisection_cover(const FiniteGroupoid& g, Rng& rng) {
  std::vector<std::vector<ArrowId>> out;
  std::vector<std::vector<bool>> used_src, used_rng;
  for (ArrowId a : shuffled_iota<ArrowId>(rng, g.num_arrows())) {
    std::vector<size_t> fits;
    for (size_t i = 0; i < out.size(); ++i)
      if (!used_src[i][static_cast<size_t>(g.source(a))] && !used_rng[i][static_cast<size_t>(g.range(a))])
        fits.push_back(i);
    size_t i;
    if (fits.empty() || uniform(rng, 0, 4) == 0) {
      i = out.size();
      out.emplace_back();
      used_src.emplace_back(g.num_units(), false);
      used_rng.emplace_back(g.num_units(), false);
    } else {
      i = fits[uniform(rng, 0, fits.size() - 1)];
    }
    out[i].push_back(a);
    used_src[i][static_cast<size_t>(g.source(a))] = true;
    used_rng[i][static_cast<size_t>(g.range(a))] = true;
  }
  for (auto& b : out) std::sort(b.begin(), b.end());
  return out;
}

std::vector<int64_t> random_invariant_set(const FiniteGroupoid& g, Rng& rng) {
  const OrbitPartition p = orbits(g);
  const size_t k = p.classes.size();
  std::vector<bool> take(k, false);
  if (k == 1) {
    take[0] = true;
  } else {
    const size_t mask = uniform(rng, 1, (size_t{1} << k) - 2);
    for (size_t i = 0; i < k; ++i) take[i] = (mask >> i) & 1;
  }
  std::vector<int64_t> u;
  for (size_t i = 0; i < k; ++i)
    if (take[i])
      for (UnitId x : p.classes[i]) u.push_back(x);
  std::sort(u.begin(), u.end());
  return u;
}

std::vector<std::vector<int64_t>> random_filtration(const FiniteGroupoid& g, Rng& rng, size_t max_levels) {
  std::vector<std::vector<int64_t>> chain;
  std::vector<ArrowId> current;
  for (size_t x = 0; x < g.num_units(); ++x) current.push_back(g.unit_arrow(static_cast<UnitId>(x)));
  std::sort(current.begin(), current.end());
  const size_t levels = uniform(rng, 1, std::max<size_t>(max_levels, 1));
  for (size_t l = 0; l + 1 < levels && current.size() < g.num_arrows(); ++l) {
    if (!chain.empty() || uniform(rng, 0, 1) == 0) chain.emplace_back(current.begin(), current.end());
    std::vector<ArrowId> missing;
    for (size_t a = 0; a < g.num_arrows(); ++a)
      if (!std::binary_search(current.begin(), current.end(), static_cast<ArrowId>(a)))
        missing.push_back(static_cast<ArrowId>(a));
    std::vector<ArrowId> grow = current;
    grow.push_back(missing[uniform(rng, 0, missing.size() - 1)]);
    for (ArrowId a : missing)
      if (uniform(rng, 0, 3) == 0) grow.push_back(a);
    current = subgroupoid_closure(g, grow);
  }
  if (!chain.empty() && chain.back().size() == g.num_arrows()) chain.pop_back();
  std::vector<int64_t> all(g.num_arrows());
  std::iota(all.begin(), all.end(), 0);
  chain.push_back(all);
  return chain;
}

}  // namespace gwb
