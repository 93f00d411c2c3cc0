#pragma once

#include <nlohmann/json.hpp>

namespace densest {

// Keys keep insertion order so reports read top-down.
using Json = nlohmann::ordered_json;

}  // namespace densest
