#pragma once

#include <json.hpp>

#include "nilmult/abelian.hpp"
#include "nilmult/engine.hpp"
#include "nilmult/multiplier.hpp"

namespace nilmult {

/// Integers that fit in 64 bits become JSON numbers, larger ones decimal strings.
nlohmann::json big_to_json(const BigInt& value);

/// {"free_rank": k, "factors": [{"modulus": M, "multiplicity": e}, ...], "primary": [...], "text": "..."}
/// with factors sorted by modulus descending.
nlohmann::json to_json(const AbelianStructure& group);

/// Inverse of to_json (reads free_rank and factors).
AbelianStructure abelian_from_json(const nlohmann::json& j);

nlohmann::json to_json(const OrderStatistics& stats);
nlohmann::json to_json(const Verdict& verdict);
nlohmann::json to_json(const VerificationReport& report);

}  // namespace nilmult
