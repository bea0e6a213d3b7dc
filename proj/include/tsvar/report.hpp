// SPDX-License-Identifier: MIT
#pragma once

#include <string>

#include <json.hpp>

namespace tsvar {

/// Reports preserve key insertion order so that output is diffable.
using Json = nlohmann::ordered_json;

/// One double rendered with 17 significant digits (bit-stable round trip).
std::string format_double(double x);

/// Serialize with 2-space indentation; floats carry 17 significant digits.
std::string dump_json(const Json& value);

/// ISO-8601 UTC timestamp of the current moment.
std::string utc_timestamp();

}  // namespace tsvar
