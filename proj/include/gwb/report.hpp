#pragma once

#include <string>

#include "gwb/bratteli.hpp"
#include "gwb/certify.hpp"
#include "gwb/json_io.hpp"
#include "gwb/verify.hpp"

namespace gwb {

Json invariants_to_json(const ModuleInvariants& inv, size_t n);
Json homology_to_json(const HomologyReport& r);
Json comparison_to_json(const ComparisonReport& r);
Json morita_to_json(const MoritaReport& r);
Json les_to_json(const LesReport& r);
Json continuity_to_json(const ContinuityReport& r);
Json certify_to_json(const CertifyResult& r);
Json kernel_generation_to_json(const KernelGenerationResult& r);
Json colimit_to_json(const ColimitReport& r);
Json af_to_json(const AfHomologyReport& r);

enum class Format { Json, Text };
Format parse_format(const std::string& s);  // throws Malformed

/// Deterministic: JSON with sorted keys and two-space indent, or an indented
/// "key: value" listing of the same tree. Ends with a newline.
std::string render_report(const Json& report, Format format);

}  // namespace gwb
