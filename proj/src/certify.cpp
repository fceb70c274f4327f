#include "gwb/certify.hpp"

#include "gwb/random.hpp"

namespace gwb {

bool verify_splitting(const GroupoidPtr& g, const Ring& ring, const AlgebraElement& f) {
  if (f.groupoid() != g || !(f.ring() == ring)) return false;
  const UnitSpaceElement s = pushforward_source(f);
  for (const auto& c : s.coeffs)
    if (!(c == Rational(1))) return false;
  for (const auto& k : augmentation_kernel(g, ring))
    if (!convolve_serial(f, k).is_zero()) return false;
  return true;
}

bool isotropy_orders_invertible(const FiniteGroupoid& g, const Ring& ring) {
  for (size_t x = 0; x < g.num_units(); ++x)
    if (!ring.is_unit(ring.from_int(static_cast<int64_t>(isotropy_group(g, static_cast<int64_t>(x)).order())))) return false;
  return true;
}

CertifyResult hdim0_certify(const GroupoidPtr& g, const Ring& ring, const CertifyOptions& opts) {
  CertifyResult r;
  r.ring = ring.tag();
  r.uniform_bound = uniform_bound(*g);
  r.seed = opts.seed;

  SplitResult split = split_source(g, ring);
  r.transcript = std::move(split.transcript);
  if (!split.split) {
    r.obstruction_unit = split.obstruction_unit;
    r.obstruction_order = split.obstruction_order;
    return r;
  }
  r.certified = true;
  r.f = std::move(split.f);
  r.identities_verified = verify_splitting(g, ring, *r.f);

  if (opts.modules > 0) {
    std::vector<GModule> batch;
    batch.reserve(opts.modules);
    for (size_t i = 0; i < opts.modules; ++i) {
      Rng rng(derive_seed(opts.seed, i));
      batch.push_back(random_module(g, ring, rng, opts.max_rank));
    }
    const auto reports = homology_batch(batch, opts.n_max, opts.homology);
    r.modules_checked = reports.size();
    r.corroborated = true;
    for (size_t i = 0; i < reports.size() && r.corroborated; ++i)
      for (size_t n = 1; n < reports[i].degrees.size(); ++n)
        if (!reports[i].degrees[n].is_zero()) {
          r.corroborated = false;
          r.counterexample = i;
          break;
        }
  }
  return r;
}

}  // namespace gwb
