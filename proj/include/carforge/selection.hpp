#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "carforge/dataset.hpp"
#include "carforge/mining.hpp"

namespace carforge {

struct CoverageConfig {
  /// Number of selected rules that must match an instance before it retires.
  std::size_t cover_threshold = 3;
  /// When set, a rule only covers instances of its own class. Off by default.
  bool require_class_match = false;

  void validate() const;
};

/// Full record of one coverage pass, for auditing.
struct CoverageTrace {
  std::vector<std::size_t> selected;      // positions in the ordered input
  std::vector<std::size_t> cover_counts;  // per training instance
  std::vector<std::size_t> remaining;     // training rows never retired, ascending
};

/// Database rule coverage over `ordered`: a rule is kept iff it matches at least one
/// training instance still in the working set; each match bumps that instance's
/// count and instances reaching the threshold leave the working set.
CoverageTrace run_coverage(std::span<const CARRule> ordered, const Dataset& train,
                           const CoverageConfig& cfg);

/// As above, visiting `rules[order[0]], rules[order[1]], ...`. Returned positions
/// index into `order`.
CoverageTrace run_coverage(std::span<const CARRule> rules, std::span<const std::size_t> order,
                           const Dataset& train, const CoverageConfig& cfg);

std::vector<CARRule> select_by_coverage(std::span<const CARRule> ordered, const Dataset& train,
                                        const CoverageConfig& cfg);

}  // namespace carforge
