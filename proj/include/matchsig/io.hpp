#pragma once

// JSON encodings for signatures, skew matrices, matchgates and verdicts.
//
//   signature: {"n": 2, "field": "gf5", "values": ["1", "0", "0", "3"]}
//              values in index order 0 .. 2^n-1, x_1 = least significant bit
//   matrix:    {"n": 3, "field": "gf5", "upper": [m12, m13, m23]}
//   matchgate: {"field": "gf5", "nodes": [0, 1], "edges": [[0, 1, "2"]],
//               "io": [0, 1]}
//
// Elements use the field's text encoding (see Field::parse_element); plain
// JSON integers are accepted on input.

#include <string>

#include "json.hpp"

#include "matchsig/census.hpp"
#include "matchsig/matchgate.hpp"
#include "matchsig/pfaffian.hpp"
#include "matchsig/recognizer.hpp"
#include "matchsig/signature.hpp"

namespace matchsig {

using Json = nlohmann::json;

Json signature_to_json(const Signature& f);
Signature signature_from_json(const Json& j);

Json matrix_to_json(const SkewMatrix& m);
SkewMatrix matrix_from_json(const Json& j);

Json matchgate_to_json(const Matchgate& g);
Matchgate matchgate_from_json(const Json& j);

Json verdict_to_json(const RecognitionVerdict& v, int n);
Json count_to_json(const CountReport& r);

/// Reads and parses a JSON file; std::invalid_argument on I/O or syntax
/// errors.
Json load_json_file(const std::string& path);

}  // namespace matchsig
