#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "carforge/measures.hpp"
#include "carforge/mining.hpp"

namespace carforge {

enum class OrderingKind { CSA, ACS, MCSA, SM, Hybrid };

/// How a rule list is sorted before selection.
///   CSA    confidence desc, support desc, antecedent size asc
///   ACS    antecedent size desc, confidence desc, support desc
///   MCSA   measure desc, then CSA
///   SM     measure desc
///   Hybrid SM order, keep the first k, re-sort those by CSA
/// Every order ends with the canonical rule identity, so all of them are total.
struct OrderingStrategy {
  OrderingKind kind = OrderingKind::CSA;
  MeasureId measure = MeasureId::Confidence;
  std::size_t k = 0;

  static OrderingStrategy csa() { return {}; }
  static OrderingStrategy acs() { return {OrderingKind::ACS, MeasureId::Confidence, 0}; }
  static OrderingStrategy mcsa(MeasureId m) { return {OrderingKind::MCSA, m, 0}; }
  static OrderingStrategy sm(MeasureId m) { return {OrderingKind::SM, m, 0}; }
  static OrderingStrategy hybrid(MeasureId m, std::size_t k) { return {OrderingKind::Hybrid, m, k}; }

  /// `csa`, `acs`, `mcsa:<measure>`, `sm:<measure>` or `hybrid:<measure>:<k>`.
  static OrderingStrategy parse(std::string_view text);
  std::string to_string() const;
};

/// Cached ranking fields of one rule.
struct RankKey {
  std::uint64_t n11 = 0;
  std::uint64_t n_x = 0;
  std::uint64_t n = 0;
  std::size_t antecedent_size = 0;
  std::optional<MeasureValue> measure;

  static RankKey of(const CARRule& r, std::optional<MeasureId> m = std::nullopt);
};

// Comparators return `less` when the first rule ranks above the second.
std::strong_ordering compare_csa(const CARRule& a, const CARRule& b) noexcept;
std::strong_ordering compare_acs(const CARRule& a, const CARRule& b) noexcept;

/// Permutation of [0, rules.size()) (or a k-prefix of one, for Hybrid) in strategy order.
std::vector<std::size_t> order_indices(std::span<const CARRule> rules, const OrderingStrategy& s);

std::vector<CARRule> order(std::span<const CARRule> rules, const OrderingStrategy& s);

/// Drops every rule that some rule with a subset antecedent outranks under CSA.
/// The class labels need not agree. Survivors keep their input order.
std::vector<CARRule> prune_specific(std::span<const CARRule> rules);

/// Keeps rules whose measure value is at least `threshold`, in input order.
std::vector<CARRule> prune_threshold(std::span<const CARRule> rules, MeasureId m,
                                     MeasureValue threshold);

/// First min(k, |rules|) rules in SM(m) order.
std::vector<CARRule> prune_top_k(std::span<const CARRule> rules, MeasureId m, std::size_t k);

}  // namespace carforge
