#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gwb/bratteli.hpp"
#include "gwb/gmodule.hpp"
#include "gwb/groupoid.hpp"
#include "gwb/steinberg.hpp"

namespace gwb {

using Json = nlohmann::json;

/// Parses text, throwing Malformed with `what` in the message.
Json parse_json(const std::string& text, const std::string& what);
std::string read_file(const std::string& path);  // throws Malformed when unreadable

/// Integers up to 64 bits become JSON numbers; everything else a "p/q" string.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j, const std::string& where);

GroupoidSpec groupoid_spec_from_json(const Json& j);
Json groupoid_to_json(const FiniteGroupoid& g);

/// {"bisections": [[ids]]}
std::vector<std::vector<ArrowId>> bisections_from_json(const Json& j);
/// {"filtration": [[ids]]}
std::vector<std::vector<int64_t>> filtration_from_json(const Json& j);

struct MatrixFile {
  Ring ring = Ring::integers();
  Matrix matrix;
};
/// {"ring", "rows", "cols", "data": row-major}
MatrixFile matrix_from_json(const Json& j);
Json matrix_to_json(const Ring& ring, const Matrix& m);
/// Nested rows, the form used inside module files.
Json matrix_rows_json(const Matrix& m);
Matrix matrix_from_rows_json(const Json& j, size_t rows, const std::string& where);

/// {"ring", "coeffs": [[arrow, value]]}. The ring field is required unless
/// `ring` overrides it.
AlgebraElement element_from_json(const Json& j, const GroupoidPtr& g, const std::optional<Ring>& ring = {});
Json element_to_json(const AlgebraElement& f);
/// {"ring", "arity", "coeffs": [[[tuple], value]]}
TupleElement tuple_element_from_json(const Json& j, const std::optional<Ring>& ring = {});
Json tuple_element_to_json(const TupleElement& f);
Json unit_space_to_json(const UnitSpaceElement& u);

/// {"ring", "fibers": [[unit, rank, relations]], "actions": [[arrow, matrix]]}
GModule module_from_json(const Json& j, const GroupoidPtr& g, const std::optional<Ring>& ring = {});
Json module_to_json(const GModule& m);

BratteliDiagram diagram_from_json(const Json& j);
Json diagram_to_json(const BratteliDiagram& b);

}  // namespace gwb
