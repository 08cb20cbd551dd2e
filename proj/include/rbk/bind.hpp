#pragma once

#include <map>
#include <string>

#include "rbk/dsl.hpp"
#include "rbk/realization.hpp"
#include "rbk/rulebook.hpp"

namespace rbk {

/// Instantiates a parsed document against evaluation parameters: builds each
/// declared rule, turns groups into mutual priority relations, then applies
/// the aggregate directives in order. Throws SemanticError on unknown kinds,
/// bad parameters, or rejected aggregations.
Rulebook bind_rulebook(const RulebookDoc& doc, const DrivingParams& params);

/// Relates two documents' effective rule ids: identity for ids present in
/// both, or the aggregate id for rules one of `after`'s aggregates consumed.
/// Throws SemanticError for a rule of `before` with no counterpart.
std::map<std::string, std::string> transport_map(const RulebookDoc& before,
                                                 const RulebookDoc& after);

}  // namespace rbk
