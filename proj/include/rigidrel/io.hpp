#ifndef RIGIDREL_IO_HPP
#define RIGIDREL_IO_HPP

// JSON encodings.
//
//   Relation, tuple form:   {"k": 2, "h": 2, "tuples": [[0,0],[0,1],[1,1]]}
//   Relation, compact form: {"k": 2, "h": 2, "mask_hex": "0b"}
//     mask_hex lists bytes in increasing position order, two lowercase hex
//     digits each; bit r of the mask (tuple rank r) is bit r % 8 of byte r / 8.
//   Unary partial function: {"k": 3, "table": [1, null, 2]}
//   Partial function:       {"k": 2, "n": 2, "graph": [{"args": [0,1], "value": 1}, ...]}

#include <string>

#include <json.hpp>

#include "rigidrel/kernel.hpp"

namespace rigidrel
{

using Json = nlohmann::json;

std::string mask_to_hex(const Mask & mask);
Mask mask_from_hex(const std::string & hex, std::size_t bits);

Json relation_to_json(const Relation & rho, bool compact = false);
/// Accepts either form; throws EncodingError on malformed input.
Relation relation_from_json(const Json & j);

Json unary_to_json(const PartialUnaryFn & f);
PartialUnaryFn unary_from_json(const Json & j);

Json partial_fn_to_json(const PartialFn & f);
PartialFn partial_fn_from_json(const Json & j);

/// Reads and parses a JSON file, throwing EncodingError on failure.
Json read_json_file(const std::string & path);

} // namespace rigidrel

#endif
