#pragma once

#include <cstddef>
#include <cstdint>
#include <compare>
#include <optional>
#include <span>
#include <vector>

#include "carforge/contingency_table.hpp"
#include "carforge/dataset.hpp"

namespace carforge {

/// Class association rule `antecedent => consequent` with its exact counts.
struct CARRule {
  std::vector<Item> antecedent;  // sorted by (attribute, value), distinct attributes
  ValueIndex consequent = 0;
  ContingencyTable table;

  std::size_t size() const noexcept { return antecedent.size(); }
  double confidence() const noexcept;
  double support() const noexcept;

  /// True when every antecedent item agrees with the dense value vector.
  bool matches(std::span<const ValueIndex> values) const noexcept;

  friend bool operator==(const CARRule&, const CARRule&) = default;
};

struct MiningConfig {
  double min_support = 0.10;
  double min_confidence = 0.50;
  std::optional<std::size_t> max_antecedent_len;
  std::optional<std::size_t> max_rules;

  /// Throws ConfigError when a threshold lies outside (0, 1] or a limit is zero.
  void validate() const;

  /// Smallest integer count meeting min_support on `n` instances.
  std::uint64_t min_count(std::size_t n) const;
};

/// Single pass over `d`; an empty antecedent matches every instance.
ContingencyTable count_table(std::span<const Item> antecedent, ValueIndex consequent,
                             const Dataset& d);

/// Level-wise rule generation. Output is ordered by antecedent size, then
/// canonically (antecedent items lexicographically, then class index).
std::vector<CARRule> mine_cars(const Dataset& d, const MiningConfig& cfg);

/// Canonical rule identity order: antecedent lexicographic, then consequent.
std::strong_ordering compare_canonical(const CARRule& a, const CARRule& b) noexcept;

}  // namespace carforge
