#include "gwb/report.hpp"

#include <sstream>

#include "gwb/errors.hpp"

namespace gwb {

Json invariants_to_json(const ModuleInvariants& inv, size_t n) {
  Json torsion = Json::array();
  for (const auto& t : inv.torsion) torsion.push_back(rational_to_json(t));
  return {{"n", n}, {"rank", inv.free_rank}, {"torsion", torsion}};
}

Json homology_to_json(const HomologyReport& r) {
  Json degrees = Json::array();
  for (size_t n = 0; n < r.degrees.size(); ++n) degrees.push_back(invariants_to_json(r.degrees[n], n));
  Json meta = {{"ring", r.ring},
               {"n_max", r.n_max},
               {"units", r.units},
               {"arrows", r.arrows},
               {"module_ranks", r.module_ranks},
               {"chain_ranks", r.chain_ranks},
               {"normalized", r.normalized}};
  meta["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  return {{"degrees", degrees}, {"meta", meta}};
}

Json comparison_to_json(const ComparisonReport& r) {
  Json degrees = Json::array();
  for (const auto& d : r.degrees)
    degrees.push_back({{"n", d.n},
                       {"lhs", invariants_to_json(d.lhs, d.n)},
                       {"rhs", invariants_to_json(d.rhs, d.n)},
                       {"pass", d.equal}});
  return {{"degrees", degrees}, {"pass", r.equal}};
}

Json morita_to_json(const MoritaReport& r) {
  Json terms = Json::array();
  for (const auto& t : r.witness.terms)
    terms.push_back({{"subset", t.subset}, {"sign", t.sign}, {"value", element_to_json(t.value)}});
  Json bis = Json::array();
  for (const auto& b : r.witness.bisections) bis.push_back(b);
  return {{"transversal", r.y},
          {"comparison", comparison_to_json(r.comparison)},
          {"fullness",
           {{"bisections", bis}, {"terms", terms}, {"total_terms", r.witness.total_terms}, {"verified", r.witness.verified}}},
          {"pass", r.comparison.equal && r.witness.verified}};
}

Json les_to_json(const LesReport& r) {
  Json nodes = Json::array();
  for (const auto& n : r.nodes) nodes.push_back({{"node", n.name}, {"n", n.n}, {"exact", n.exact}});
  auto list = [](const std::vector<ModuleInvariants>& v) {
    Json out = Json::array();
    for (size_t n = 0; n < v.size(); ++n) out.push_back(invariants_to_json(v[n], n));
    return out;
  };
  return {{"invariant_set", r.u},
          {"complement", r.complement},
          {"chain_maps", r.chain_maps},
          {"short_exact", r.short_exact},
          {"nodes", nodes},
          {"homology_sub", list(r.h_sub)},
          {"homology_total", list(r.h_total)},
          {"homology_quotient", list(r.h_quot)},
          {"direct_sum_matches", r.direct_sum_matches},
          {"pass", r.exact}};
}

Json continuity_to_json(const ContinuityReport& r) {
  Json levels = Json::array();
  for (const auto& l : r.levels) levels.push_back(homology_to_json(l));
  Json maps = Json::array();
  for (const auto& m : r.h0_maps) maps.push_back(matrix_rows_json(m));
  return {{"levels", levels},
          {"direct", homology_to_json(r.direct)},
          {"terminal", comparison_to_json(r.terminal)},
          {"h0_maps", maps},
          {"composites_match", r.composites_match},
          {"terminal_iso", r.terminal_iso},
          {"pass", r.passed}};
}

Json certify_to_json(const CertifyResult& r) {
  Json j = {{"ring", r.ring}, {"certified", r.certified}, {"uniform_bound", r.uniform_bound}, {"seed", r.seed}};
  if (r.certified) {
    j["certificate"] = {{"f", element_to_json(*r.f)},
                        {"identities_verified", r.identities_verified},
                        {"transcript", r.transcript}};
    Json corr = {{"modules", r.modules_checked}, {"vanishing", r.corroborated}, {"is_certificate", false}};
    corr["counterexample"] = r.counterexample ? Json(*r.counterexample) : Json(nullptr);
    j["corroboration"] = corr;
  } else {
    j["obstruction"] = {{"unit", r.obstruction_unit}, {"isotropy_order", r.obstruction_order}, {"transcript", r.transcript}};
  }
  return j;
}

Json kernel_generation_to_json(const KernelGenerationResult& r) {
  Json gens = Json::array();
  for (const auto& w : r.ideal_generators) gens.push_back(element_to_json(w));
  Json mult = Json::array();
  for (size_t j = 0; j < r.multipliers.size(); ++j) {
    Json row = Json::array();
    for (const auto& m : r.multipliers[j]) row.push_back(element_to_json(m));
    mult.push_back({{"kernel_arrow", r.kernel_arrows[j]}, {"multipliers", row}});
  }
  Json terms = Json::array();
  for (const auto& t : r.ideal_in_kernel) {
    Json coords = Json::array();
    for (const auto& c : t.kernel_coords) coords.push_back(rational_to_json(c));
    terms.push_back({{"generator", t.generator}, {"h", t.h}, {"kernel_coords", coords}});
  }
  Json j = {{"generated", r.generated},
            {"generators", r.generators},
            {"ideal_generators", gens},
            {"kernel_in_ideal", mult},
            {"ideal_in_kernel", terms}};
  j["missing"] = r.missing ? Json(*r.missing) : Json(nullptr);
  return j;
}

Json colimit_to_json(const ColimitReport& r) {
  Json maps = Json::array();
  for (const auto& m : r.system.maps) maps.push_back(matrix_rows_json(m));
  Json j = {{"groups", r.system.groups},
            {"maps", maps},
            {"eventual_rank", r.eventual_rank},
            {"stationary", r.stationary}};
  j["label"] = r.label ? Json(*r.label) : Json(nullptr);
  return j;
}

Json af_to_json(const AfHomologyReport& r) {
  Json levels = Json::array();
  for (const auto& l : r.levels) {
    Json j = {{"level", l.level},
              {"homology", homology_to_json(l.homology)},
              {"principal", l.principal},
              {"certified", l.certified},
              {"positive_vanish", l.positive_vanish},
              {"map_matches", l.map_matches}};
    j["oracle_map"] = l.oracle_map ? matrix_rows_json(*l.oracle_map) : Json(nullptr);
    levels.push_back(j);
  }
  return {{"levels", levels}, {"colimit", colimit_to_json(r.colimit)}, {"verdict", r.verdict}};
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "text") return Format::Text;
  throw Malformed("format must be json or text, got \"" + s + "\"");
}

namespace {

bool is_scalar(const Json& j) { return !j.is_structured(); }

bool is_flat_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& x : j)
    if (!is_scalar(x)) return false;
  return true;
}

std::string scalar(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void emit(std::ostringstream& out, const Json& j, size_t indent) {
  const std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (is_scalar(v)) out << pad << k << ": " << scalar(v) << "\n";
      else if (is_flat_array(v)) out << pad << k << ": " << v.dump() << "\n";
      else {
        out << pad << k << ":\n";
        emit(out, v, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (is_scalar(v) || is_flat_array(v)) {
        out << pad << "- " << (is_scalar(v) ? scalar(v) : v.dump()) << "\n";
      } else {
        out << pad << "-\n";
        emit(out, v, indent + 2);
      }
    }
  } else {
    out << pad << scalar(j) << "\n";
  }
}

}  // namespace

std::string render_report(const Json& report, Format format) {
  const Json& doc = report.is_null() ? Json::object() : report;
  if (format == Format::Json) return doc.dump(2) + "\n";
  std::ostringstream out;
  emit(out, doc, 0);
  return out.str();
}

}  // namespace gwb
