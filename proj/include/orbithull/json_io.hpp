#pragma once

// JSON schema shared by the CLI and the tests:
//   element  {"blocks":[{"dim":n,"re":[[...]],"im":[[...]]}]}   ("im" optional)
//   unitary  same layout, no Hermitian check
// Numbers are written with 17 significant digits.

#include <string>

#include "json.hpp"
#include "orbithull/algebra.hpp"
#include "orbithull/synthesis.hpp"

namespace orbithull::io {

using Json = nlohmann::ordered_json;

/// Block matrices as written in the file; throws InvalidArgument on schema
/// errors (missing keys, ragged rows, dim mismatch, non-numbers).
std::vector<Matrix> blocks_from_json(const Json& j);
Json blocks_to_json(const std::vector<Matrix>& blocks);

/// Element from the schema above. Also accepts generator output
/// {"result":{"a":...,"b":...}}, picking `role` ("a" or "b").
HermitianElement element_from_json(const Json& j, const std::string& role = "a");
Json element_to_json(const HermitianElement& x);

Json combination_to_json(const ConvexCombination& cc);
ConvexCombination combination_from_json(const Json& j);

/// Reads and parses a file; throws InvalidArgument if it cannot.
Json read_file(const std::string& path);

/// Indented, key order preserved, doubles as %.17g, non-finite as null.
std::string dump(const Json& j);

}  // namespace orbithull::io
