#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "carforge/dataset.hpp"
#include "carforge/mining.hpp"

namespace carforge {

// Line format: `Attr=value & Attr=value => Class=label ; n11 nX nY N`

std::string format_rule(const CARRule& rule, const AttributeSchema& schema);

/// Throws DataError for names or values absent from `schema`.
CARRule parse_rule(std::string_view line, const AttributeSchema& schema);

void write_rules(std::ostream& out, std::span<const CARRule> rules, const AttributeSchema& schema);

/// Blank lines and lines starting with '#' are skipped.
std::vector<CARRule> read_rules(std::istream& in, const AttributeSchema& schema);

}  // namespace carforge
