#pragma once

#include <nlohmann/json.hpp>

namespace mmc {

/// Insertion-ordered JSON everywhere: reports must be byte-deterministic.
using ordered_json = nlohmann::ordered_json;

}  // namespace mmc
