#pragma once

#include <string>

#include "metachain/chain_model.hpp"

namespace metachain {

/// Parses the chain JSON format:
///   { "states": ["a", ...],
///     "rates": [ {"from": i, "to": j, "alpha": a, "beta": b, "gamma": g}, ... ] }
/// Omitted (from, to) pairs denote Zero. Unknown fields are rejected.
ChainSpec parse_chain_json(const std::string& text);
ChainSpec parse_chain_file(const std::string& path);

std::string serialize_chain(const ChainSpec& spec);

} // namespace metachain
