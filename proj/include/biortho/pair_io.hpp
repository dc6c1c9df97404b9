#pragma once

#include <json.hpp>
#include <string>

#include "biortho/pair.hpp"

namespace biortho {

// Pair files are JSON with an explicit schema version. Matrices are stored
// as row-major nested arrays of [re, im] entries, which round-trips doubles
// bit-exactly (the serializer emits shortest-round-trip decimal).
//
// {
//   "schema_version": 1,
//   "label": "...",            (optional)
//   "dim": d,
//   "count": n,
//   "phi": [[ [re,im], ... ], ...],   d rows of n entries
//   "psi": [[ [re,im], ... ], ...]
// }
inline constexpr int kPairSchemaVersion = 1;

nlohmann::ordered_json pair_to_json(const TruncatedPair& pair);

// Throws SchemaError when the document shape is wrong (missing/mistyped
// fields, inconsistent dimensions, unsupported version) and ValidationError
// when the shape is fine but the values are unusable.
TruncatedPair pair_from_json(const nlohmann::json& doc);

// File variants; load throws ParseError on unreadable or non-JSON input.
void save_pair(const TruncatedPair& pair, const std::string& path);
TruncatedPair load_pair(const std::string& path);

} // namespace biortho
