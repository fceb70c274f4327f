#include "gwb/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <new>
#include <map>
#include <optional>

#include "CLI11.hpp"

#include "gwb/errors.hpp"
#include "gwb/json_io.hpp"
#include "gwb/report.hpp"
#include "gwb/suites.hpp"

namespace gwb::cli {
namespace {

struct Config {
  std::optional<std::string> ring;
  std::optional<size_t> n_max;
  uint64_t seed = 0;
  size_t cap_tuples = kDefaultTupleCap;
  std::string format = "json";
  std::string output;
  bool unnormalized = false;
  bool check_square = false;

  // Inputs.
  std::string groupoid, module, diagram, bisections, filtration, lhs, rhs, element, map;
  std::vector<int64_t> arrows, units;

  // Command knobs.
  size_t modules = 100;
  size_t max_rank = 3;
  size_t count = 100;
  std::optional<size_t> depth;  // 4 for generated diagrams, the file depth otherwise
  bool car = false;
  bool fibonacci = false;
  bool full = false;
};

struct Outcome {
  Json result;
  bool positive = true;
};

std::optional<Ring> ring_override(const Config& c) {
  if (!c.ring) return std::nullopt;
  return Ring::parse(*c.ring);
}
Ring ring_or_z(const Config& c) { return c.ring ? Ring::parse(*c.ring) : Ring::integers(); }

HomologyOptions homology_options(const Config& c) {
  HomologyOptions o;
  o.tuple_cap = c.cap_tuples;
  o.normalized = !c.unnormalized;
  o.check_square = c.check_square;
  return o;
}

Json load(const std::string& path) { return parse_json(read_file(path), path); }

GroupoidPtr load_groupoid(const Config& c) {
  if (c.groupoid.empty()) throw Malformed("--groupoid is required");
  return validate_groupoid(groupoid_spec_from_json(load(c.groupoid)), c.cap_tuples);
}

/// The module file when given, otherwise the trivial module.
GModule load_module(const Config& c, const GroupoidPtr& g) {
  if (c.module.empty()) return trivial_module(g, ring_or_z(c));
  return module_from_json(load(c.module), g, ring_override(c));
}

Json groupoid_summary(const FiniteGroupoid& g) {
  const OrbitPartition o = orbits(g);
  return {{"units", g.num_units()},
          {"arrows", g.num_arrows()},
          {"orbits", o.classes.size()},
          {"principal", is_principal(g)},
          {"group_bundle", is_group_bundle(g)},
          {"uniform_bound", uniform_bound(g)}};
}

Outcome cmd_validate(const Config& c) {
  if (c.groupoid.empty() && c.diagram.empty())
    throw Malformed("validate needs --groupoid or --diagram");
  Json r = Json::object();
  GroupoidPtr g;
  if (!c.groupoid.empty()) {
    g = load_groupoid(c);
    r["groupoid"] = groupoid_summary(*g);
  }
  if (!c.module.empty()) {
    if (!g) throw Malformed("--module needs --groupoid");
    const GModule m = load_module(c, g);
    std::vector<size_t> ranks;
    for (const auto& f : m.fibers()) ranks.push_back(f.rank);
    r["module"] = {{"ring", m.ring().tag()}, {"ranks", ranks}, {"free", m.is_free()}};
  }
  if (!c.bisections.empty()) {
    if (!g) throw Malformed("--bisections needs --groupoid");
    const auto x = bisections_from_json(load(c.bisections));
    for (const auto& v : x) make_bisection(*g, v);
    const BisectionSemigroup s = generate_semigroup(*g, x);
    r["bisections"] = {{"generators", x.size()}, {"semigroup_size", s.elements.size()}, {"cover", s.cover}};
  }
  if (!c.filtration.empty()) {
    if (!g) throw Malformed("--filtration needs --groupoid");
    const Filtration f = validate_filtration(g, filtration_from_json(load(c.filtration)));
    r["filtration"] = {{"levels", f.levels.size()}, {"af", is_af_filtration(f).af}};
  }
  if (!c.diagram.empty()) {
    const BratteliDiagram b = diagram_from_json(load(c.diagram));
    r["diagram"] = {{"depth", b.depth()}, {"vertices", b.vertices}};
  }
  r["valid"] = true;
  return {r, true};
}

Outcome cmd_homology(const Config& c) {
  const GroupoidPtr g = load_groupoid(c);
  const GModule m = load_module(c, g);
  HomologyReport h = homology(m, c.n_max.value_or(3), homology_options(c));
  h.seed = c.seed;
  return {homology_to_json(h), true};
}

Outcome cmd_certify(const Config& c) {
  const GroupoidPtr g = load_groupoid(c);
  CertifyOptions o;
  o.n_max = c.n_max.value_or(3);
  o.modules = c.modules;
  o.seed = c.seed;
  o.max_rank = c.max_rank;
  o.homology = homology_options(c);
  const CertifyResult r = hdim0_certify(g, ring_or_z(c), o);
  const bool ok = r.certified && r.identities_verified && (o.modules == 0 || r.corroborated);
  return {certify_to_json(r), ok};
}

Outcome cmd_af(const Config& c) {
  const int sources = (c.diagram.empty() ? 0 : 1) + (c.car ? 1 : 0) + (c.fibonacci ? 1 : 0);
  if (sources != 1) throw Malformed("af needs exactly one of --diagram, --car, --fibonacci");
  const BratteliDiagram b = c.car         ? car_diagram(c.depth.value_or(4))
                            : c.fibonacci ? fibonacci_diagram(c.depth.value_or(4))
                                          : diagram_from_json(load(c.diagram));
  const AfHomologyReport r = af_homology_report(b, c.depth.value_or(b.depth()), c.n_max.value_or(2), homology_options(c));
  return {af_to_json(r), r.verdict};
}

Outcome verify_batch(const std::string& suite, const Config& c) {
  SuiteOptions o;
  o.seed = c.seed;
  o.count = c.count;
  o.n_max = c.n_max;
  o.ring = ring_override(c);
  o.max_rank = std::min<size_t>(c.max_rank, 3);
  o.homology = homology_options(c);
  const SuiteResult r = run_suite(suite, o);
  return {suite_to_json(r, c.full), r.all_pass()};
}

Outcome verify_instance(const std::string& suite, const Config& c) {
  const GroupoidPtr g = load_groupoid(c);
  const size_t n_max = c.n_max.value_or(3);
  if (suite == "shapiro") {
    if (c.arrows.empty()) throw Malformed("shapiro needs --arrows for the subgroupoid");
    std::vector<ArrowId> arrows;
    for (int64_t a : c.arrows) {
      if (!g->has_arrow(a)) throw IndexOutOfRange("arrow " + std::to_string(a));
      arrows.push_back(static_cast<ArrowId>(a));
    }
    const Subgroupoid h = subgroupoid(g, arrows);
    const GModule m = load_module(c, h.groupoid);
    const ComparisonReport r = shapiro_verify(h, m, n_max, homology_options(c));
    return {comparison_to_json(r), r.equal};
  }
  if (suite == "morita") {
    const MoritaReport r = morita_reduce(load_module(c, g), n_max, homology_options(c));
    return {morita_to_json(r), r.comparison.equal && r.witness.verified};
  }
  if (suite == "les") {
    if (c.units.empty()) throw Malformed("les needs --units for the invariant set");
    const LesReport r = les_verify(load_module(c, g), c.units, c.n_max.value_or(2));
    return {les_to_json(r), r.exact};
  }
  if (suite == "kernel-gen") {
    if (c.bisections.empty()) throw Malformed("kernel-gen needs --bisections");
    const Ring ring = ring_or_z(c);
    const KernelGenerationResult r = kernel_generation_check(g, ring, bisections_from_json(load(c.bisections)));
    const bool replayed = verify_kernel_generation(g, ring, r);
    Json j = kernel_generation_to_json(r);
    j["replay_verified"] = replayed;
    return {j, r.generated && replayed};
  }
  if (suite == "continuity") {
    if (c.filtration.empty()) throw Malformed("continuity needs --filtration");
    const ContinuityReport r =
        continuity_verify(g, filtration_from_json(load(c.filtration)), ring_or_z(c), n_max, homology_options(c));
    return {continuity_to_json(r), r.passed};
  }
  throw Malformed("unknown suite " + suite);
}

Outcome cmd_convolve(const Config& c) {
  if (c.lhs.empty() || c.rhs.empty()) throw Malformed("convolve needs --lhs and --rhs");
  const GroupoidPtr g = load_groupoid(c);
  const AlgebraElement f = element_from_json(load(c.lhs), g, ring_override(c));
  const AlgebraElement h = element_from_json(load(c.rhs), g, ring_override(c));
  return {{{"product", element_to_json(convolve(f, h))}}, true};
}

Outcome cmd_pushforward(const Config& c) {
  if (c.element.empty()) throw Malformed("pushforward needs --element");
  const GroupoidPtr g = load_groupoid(c);
  const NamedMap map = NamedMap::parse(c.map);
  const Json e = load(c.element);
  Json j = {{"map", c.map}};
  switch (map.kind) {
    case NamedMap::Kind::Source:
      j["pushforward"] = unit_space_to_json(pushforward_source(element_from_json(e, g, ring_override(c))));
      break;
    case NamedMap::Kind::Range:
      j["pushforward"] = unit_space_to_json(pushforward_range(element_from_json(e, g, ring_override(c))));
      break;
    case NamedMap::Kind::Face:
      j["pushforward"] =
          tuple_element_to_json(pushforward_face(*g, map.n, map.i, tuple_element_from_json(e, ring_override(c))));
      break;
  }
  return {j, true};
}

void add_input_options(CLI::App* app, Config& c) {
  app->add_option("--groupoid", c.groupoid, "Groupoid file");
  app->add_option("--module", c.module, "Module file (default: trivial module)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Finite groupoid homology workbench", "gwb"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--ring", c.ring, "Coefficient ring: Z, Q, Fp:p or Zinv:n");
  app.add_option("--nmax", c.n_max, "Top homology degree");
  app.add_option("--seed", c.seed, "Seed for every random choice (recorded in the report)");
  app.add_option("--cap-tuples", c.cap_tuples, "Cap on enumerated composable tuples");
  app.add_option("--format", c.format, "json or text");
  app.add_option("-o,--output", c.output, "Write the report to a file instead of stdout");
  app.add_flag("--unnormalized", c.unnormalized, "Use the unnormalized bar complex");
  app.add_flag("--check-square", c.check_square, "Check that consecutive boundaries compose to zero");

  std::function<Outcome()> action;
  std::string command;
  auto on = [&](CLI::App* sub, std::string name, std::function<Outcome()> f) {
    sub->fallthrough();
    sub->callback([&, name, f] {
      command = name;
      action = f;
    });
  };

  auto* validate = app.add_subcommand("validate", "Validate groupoid, module, bisection, filtration or diagram files");
  add_input_options(validate, c);
  validate->add_option("--bisections", c.bisections, "Bisections file");
  validate->add_option("--filtration", c.filtration, "Filtration file");
  validate->add_option("--diagram", c.diagram, "Bratteli diagram file");
  on(validate, "validate", [&] { return cmd_validate(c); });

  auto* hom = app.add_subcommand("homology", "Compute H_0..H_nmax");
  add_input_options(hom, c);
  on(hom, "homology", [&] { return cmd_homology(c); });

  auto* cert = app.add_subcommand("certify", "Certify homological dimension zero or report the obstruction");
  cert->add_option("--groupoid", c.groupoid, "Groupoid file");
  cert->add_option("--modules", c.modules, "Random modules used for corroboration (0 skips)");
  cert->add_option("--max-rank", c.max_rank, "Maximal fiber rank of the random modules")->check(CLI::Range(1, 3));
  on(cert, "certify", [&] { return cmd_certify(c); });

  auto* af = app.add_subcommand("af", "Per-level homology and the H_0 inductive system of a Bratteli diagram");
  af->add_option("--diagram", c.diagram, "Bratteli diagram file");
  af->add_flag("--car", c.car, "Use the CAR diagram");
  af->add_flag("--fibonacci", c.fibonacci, "Use the Fibonacci diagram");
  af->add_option("--depth", c.depth, "Truncation depth (default 4, or the depth of --diagram)");
  on(af, "af", [&] { return cmd_af(c); });

  auto* verify = app.add_subcommand("verify", "Run a verification suite on a seeded batch or one instance");
  verify->require_subcommand(1);
  verify->fallthrough();
  const std::map<std::string, std::string> suite_help = {
      {"shapiro", "H_n(G, Ind M) against H_n(H, M)"},
      {"morita", "H_n(G, M) against the reduction to a transversal"},
      {"les", "Long exact sequence of an invariant unit set"},
      {"kernel-gen", "Bisection ideal generators against ker s_*"},
      {"continuity", "Homology along a filtration against the direct answer"},
  };
  for (const std::string& suite : suite_names()) {
    auto* s = verify->add_subcommand(suite, suite_help.at(suite));
    add_input_options(s, c);
    s->add_option("--count", c.count, "Batch size when no --groupoid is given");
    s->add_option("--max-rank", c.max_rank, "Maximal fiber rank of random modules")->check(CLI::Range(1, 3));
    s->add_flag("--full", c.full, "Keep every instance report, not only failures");
    if (suite == "shapiro") s->add_option("--arrows", c.arrows, "Subgroupoid arrow ids")->delimiter(',');
    if (suite == "les") s->add_option("--units", c.units, "Invariant unit set")->delimiter(',');
    if (suite == "kernel-gen") s->add_option("--bisections", c.bisections, "Bisections file");
    if (suite == "continuity") s->add_option("--filtration", c.filtration, "Filtration file");
    on(s, "verify " + suite, [&, suite] {
      return c.groupoid.empty() ? verify_batch(suite, c) : verify_instance(suite, c);
    });
  }

  auto* st = app.add_subcommand("steinberg", "Convolution algebra operations");
  st->require_subcommand(1);
  st->fallthrough();
  auto* conv = st->add_subcommand("convolve", "f * h");
  conv->add_option("--groupoid", c.groupoid, "Groupoid file");
  conv->add_option("--lhs", c.lhs, "Element file f");
  conv->add_option("--rhs", c.rhs, "Element file h");
  on(conv, "steinberg convolve", [&] { return cmd_convolve(c); });
  auto* push = st->add_subcommand("pushforward", "Pushforward along source, range or face:n:i");
  push->add_option("--groupoid", c.groupoid, "Groupoid file");
  push->add_option("--map", c.map, "source, range or face:n:i")->required();
  push->add_option("--element", c.element, "Element file");
  on(push, "steinberg pushforward", [&] { return cmd_pushforward(c); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
    return kInputError;
  }

  try {
    const Format format = parse_format(c.format);
    if (c.ring) Ring::parse(*c.ring);  // reject a bad tag before any work
    const Outcome o = action();
    Json envelope = {{"command", command},
                     {"seed", c.seed},
                     {"status", o.positive ? "ok" : "negative"},
                     {"result", o.result}};
    if (c.n_max) envelope["n_max"] = *c.n_max;
    const std::string text = render_report(envelope, format);
    if (c.output.empty()) {
      out << text;
    } else {
      std::ofstream file(c.output, std::ios::binary);
      if (!file || !(file << text)) throw Malformed("cannot write " + c.output);
    }
    if (!o.positive) err << command << ": negative result, witness in report\n";
    return o.positive ? kOk : kNegative;
  } catch (const MathematicalNegative& e) {
    err << "negative: " << e.what() << '\n';
    return kNegative;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << '\n';
    return kResourceLimit;
  } catch (const std::bad_alloc&) {
    err << "error: ResourceLimit: out of memory\n";
    return kResourceLimit;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: Malformed: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace gwb::cli
