#include "gwb/suites.hpp"

#include "gwb/errors.hpp"
#include "gwb/random.hpp"
#include "gwb/report.hpp"

namespace gwb {

const std::vector<Ring>& batch_rings() {
  static const std::vector<Ring> rings{Ring::integers(),  Ring::rationals(),  Ring::prime_field(2),
                                       Ring::prime_field(3), Ring::localized(2), Ring::localized(6)};
  return rings;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"shapiro", "morita", "les", "kernel-gen", "continuity"};
  return names;
}

namespace {

Ring pick_ring(const SuiteOptions& opts, Rng& rng) {
  if (opts.ring) return *opts.ring;
  const auto& rings = batch_rings();
  return rings[std::uniform_int_distribution<size_t>(0, rings.size() - 1)(rng)];
}

SuiteOutcome shapiro_instance(Rng& rng, const SuiteOptions& opts) {
  const Ring ring = pick_ring(opts, rng);
  const GroupoidPtr g = random_groupoid(rng);
  const Subgroupoid h = random_subgroupoid(g, rng);
  const GModule m = random_module(h.groupoid, ring, rng, opts.max_rank);
  const ComparisonReport r = shapiro_verify(h, m, opts.n_max.value_or(3), opts.homology);
  Json j = comparison_to_json(r);
  j["ring"] = ring.tag();
  j["subgroupoid"] = h.arrow_to_ambient;
  j["groupoid"] = groupoid_to_json(*g);
  return {0, 0, r.equal, j};
}

SuiteOutcome morita_instance(Rng& rng, const SuiteOptions& opts) {
  const Ring ring = pick_ring(opts, rng);
  const GroupoidPtr g = random_groupoid(rng);
  const GModule m = random_module(g, ring, rng, opts.max_rank);
  const MoritaReport r = morita_reduce(m, opts.n_max.value_or(3), opts.homology);
  Json j = morita_to_json(r);
  j["ring"] = ring.tag();
  j["groupoid"] = groupoid_to_json(*g);
  return {0, 0, r.comparison.equal && r.witness.verified, j};
}

SuiteOutcome les_instance(Rng& rng, const SuiteOptions& opts) {
  const Ring ring = pick_ring(opts, rng);
  RandomGroupoidOptions go;
  go.max_arrows = 8;
  go.min_components = 2;
  go.max_components = 2;
  const GroupoidPtr g = random_groupoid(rng, go);
  const GModule m = random_module(g, ring, rng, opts.max_rank);
  const auto u = random_invariant_set(*g, rng);
  const LesReport r = les_verify(m, u, opts.n_max.value_or(2));
  Json j = les_to_json(r);
  j["ring"] = ring.tag();
  j["groupoid"] = groupoid_to_json(*g);
  return {0, 0, r.exact, j};
}

SuiteOutcome kernel_instance(Rng& rng, const SuiteOptions& opts) {
  const Ring ring = pick_ring(opts, rng);
  const GroupoidPtr g = random_groupoid(rng);
  const auto x = random_bisection_cover(*g, rng);
  const KernelGenerationResult r = kernel_generation_check(g, ring, x);
  const bool replayed = verify_kernel_generation(g, ring, r);
  Json j = kernel_generation_to_json(r);
  j["replayed"] = replayed;
  j["ring"] = ring.tag();
  j["groupoid"] = groupoid_to_json(*g);
  return {0, 0, r.generated && replayed, j};
}

SuiteOutcome continuity_instance(Rng& rng, const SuiteOptions& opts) {
  const Ring ring = pick_ring(opts, rng);
  const GroupoidPtr g = random_groupoid(rng);
  const auto chain = random_filtration(*g, rng);
  const ContinuityReport r = continuity_verify(g, chain, ring, opts.n_max.value_or(3), opts.homology);
  Json j = continuity_to_json(r);
  j["ring"] = ring.tag();
  j["filtration"] = chain;
  j["groupoid"] = groupoid_to_json(*g);
  return {0, 0, r.passed, j};
}

}  // namespace

SuiteResult run_suite(const std::string& suite, const SuiteOptions& opts) {
  SuiteOutcome (*make)(Rng&, const SuiteOptions&) = nullptr;
  if (suite == "shapiro") make = shapiro_instance;
  else if (suite == "morita") make = morita_instance;
  else if (suite == "les") make = les_instance;
  else if (suite == "kernel-gen") make = kernel_instance;
  else if (suite == "continuity") make = continuity_instance;
  else throw Malformed("unknown verification suite \"" + suite + "\"");

  SuiteResult r;
  r.suite = suite;
  r.seed = opts.seed;
  for (size_t i = 0; i < opts.count; ++i) {
    const uint64_t s = derive_seed(opts.seed, i);
    Rng rng(s);
    SuiteOutcome o = make(rng, opts);
    o.index = i;
    o.seed = s;
    if (o.pass) ++r.passed;
    r.outcomes.push_back(std::move(o));
  }
  return r;
}

Json suite_to_json(const SuiteResult& r, bool full) {
  Json instances = Json::array();
  for (const auto& o : r.outcomes) {
    if (!full && o.pass) continue;
    instances.push_back({{"index", o.index}, {"seed", o.seed}, {"pass", o.pass}, {"report", o.report}});
  }
  return {{"suite", r.suite},
          {"seed", r.seed},
          {"instances", r.outcomes.size()},
          {"passed", r.passed},
          {"pass", r.all_pass()},
          {full ? "reports" : "failures", instances}};
}

}  // namespace gwb
