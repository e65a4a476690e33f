#pragma once

#include <string>

#include "json.hpp"

#include "eggshell/commutator.hpp"
#include "eggshell/domain.hpp"
#include "eggshell/zetalab.hpp"

// JSON forms of domains and zeta specs:
//   {"blocks":[{"p":[...],"a":...}, ...]}
//   {"m":..., "powers":[...], "groups":[{"vars":[...],"a":...}], "abs":{"neg":s,"a":...}|null, "b":...}
namespace eggshell::io {

using nlohmann::json;

json to_json(const DomainSpec& dom);
DomainSpec domain_from_json(const json& j);

json to_json(const zeta::ZetaSeriesSpec& spec);
zeta::ZetaSeriesSpec zeta_from_json(const json& j);

/// Parses `text` as JSON when it starts with '{', otherwise reads it as a path.
/// Throws DomainError with the parser message on malformed input.
json load_json_argument(const std::string& text);

}  // namespace eggshell::io
