// JSON formats for matrices, algebras, maps, semidirect elements, and
// construction reports, plus input digests and the deterministic dump used
// by report emitters (sorted keys, shortest round-trip doubles).

#pragma once

#include "sdlab/algebra.hpp"
#include "sdlab/constructions.hpp"
#include "sdlab/semidirect.hpp"
#include "sdlab/supermap.hpp"
#include "sdlab/types.hpp"

#include "json.hpp"

#include <string>

namespace sdlab {

using Json = nlohmann::json;

// Matrix: {"n": N, "entries": [[re, im], ...]} row-major, length N^2.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// Algebra: {"blocks": [n1, n2, ...]}.
Json algebra_to_json(const StarAlgebra& alg);
StarAlgebra algebra_from_json(const Json& j);

// SuperMap: {"algebra": {...}, "images": [Matrix, ...]} in basis order.
Json supermap_to_json(const SuperMap& m);
SuperMap supermap_from_json(const Json& j);

// SemidirectElement: {"a": [[re, im] x D], "x": Matrix}.
Json element_to_json(const SemidirectElement& u);
SemidirectElement element_from_json(const Json& j, const StarAlgebra& alg);

// {"P": Matrix, "Sigma": SuperMap, "D": SuperMap|null,
//  "residuals": {name: real}, "singular_values": [real], "passed": bool}.
Json construction_report_to_json(const ConstructionReport& rep);

// FNV-1a 64-bit digest as 16 hex characters.
std::string fnv1a_hex(const std::string& bytes);

// Reads and parses a JSON file; open and parse failures surface as
// spec_error with the parser's position annotation.
Json load_json_file(const std::string& path);
std::string digest_file(const std::string& path);

// Sorted keys (nlohmann objects), two-space indent, trailing newline.
std::string dump_report(const Json& j);

}  // namespace sdlab
