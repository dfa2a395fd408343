#include "carforge/ordering.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>

#include "carforge/errors.hpp"

namespace carforge {

namespace {

__extension__ using u128 = unsigned __int128;

// Compares a/b with c/d exactly; a zero denominator counts as the fraction 0.
std::strong_ordering compare_fraction(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                                      std::uint64_t d) noexcept {
  if (b == 0) a = 0, b = 1;
  if (d == 0) c = 0, d = 1;
  const u128 lhs = static_cast<u128>(a) * d;
  const u128 rhs = static_cast<u128>(c) * b;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// Descending keys: `less` means a has the larger confidence.
std::strong_ordering by_confidence(const ContingencyTable& a, const ContingencyTable& b) noexcept {
  return compare_fraction(b.n11, b.n_x(), a.n11, a.n_x());
}

std::strong_ordering by_support(const ContingencyTable& a, const ContingencyTable& b) noexcept {
  return compare_fraction(b.n11, b.total(), a.n11, a.total());
}

// CSA without the canonical tie-break.
std::strong_ordering csa_keys(const CARRule& a, const CARRule& b) noexcept {
  if (auto c = by_confidence(a.table, b.table); c != 0) return c;
  if (auto c = by_support(a.table, b.table); c != 0) return c;
  return a.size() <=> b.size();
}

std::size_t parse_count(std::string_view text) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size() || v == 0) {
    throw ConfigError("expected a positive integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::vector<MeasureValue> measure_values(std::span<const CARRule> rules, MeasureId m) {
  std::vector<MeasureValue> values;
  values.reserve(rules.size());
  for (const auto& r : rules) values.push_back(evaluate(m, r.table));
  return values;
}

std::vector<CARRule> gather(std::span<const CARRule> rules, std::span<const std::size_t> idx) {
  std::vector<CARRule> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(rules[i]);
  return out;
}

std::vector<std::size_t> iota_indices(std::size_t n) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

void sort_sm(std::vector<std::size_t>& idx, std::span<const CARRule> rules,
             const std::vector<MeasureValue>& mv) {
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    if (auto c = mv[j] <=> mv[i]; c != 0) return c < 0;
    return compare_canonical(rules[i], rules[j]) < 0;
  });
}

void sort_csa(std::vector<std::size_t>& idx, std::span<const CARRule> rules) {
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t i, std::size_t j) { return compare_csa(rules[i], rules[j]) < 0; });
}

}  // namespace

OrderingStrategy OrderingStrategy::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  for (std::size_t start = 0;;) {
    auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  auto head = parts.front();
  if (head == "csa" && parts.size() == 1) return csa();
  if (head == "acs" && parts.size() == 1) return acs();
  if (head == "mcsa" && parts.size() == 2) return mcsa(parse_measure(parts[1]));
  if (head == "sm" && parts.size() == 2) return sm(parse_measure(parts[1]));
  if (head == "hybrid" && parts.size() == 3) {
    return hybrid(parse_measure(parts[1]), parse_count(parts[2]));
  }
  throw ConfigError("unknown ordering '" + std::string(text) + "'");
}

std::string OrderingStrategy::to_string() const {
  switch (kind) {
    case OrderingKind::CSA:
      return "csa";
    case OrderingKind::ACS:
      return "acs";
    case OrderingKind::MCSA:
      return "mcsa:" + std::string(measure_name(measure));
    case OrderingKind::SM:
      return "sm:" + std::string(measure_name(measure));
    case OrderingKind::Hybrid:
      return "hybrid:" + std::string(measure_name(measure)) + ":" + std::to_string(k);
  }
  return {};
}

RankKey RankKey::of(const CARRule& r, std::optional<MeasureId> m) {
  RankKey key{r.table.n11, r.table.n_x(), r.table.total(), r.size(), std::nullopt};
  if (m) key.measure = evaluate(*m, r.table);
  return key;
}

std::strong_ordering compare_csa(const CARRule& a, const CARRule& b) noexcept {
  if (auto c = csa_keys(a, b); c != 0) return c;
  return compare_canonical(a, b);
}

std::strong_ordering compare_acs(const CARRule& a, const CARRule& b) noexcept {
  if (auto c = b.size() <=> a.size(); c != 0) return c;
  if (auto c = by_confidence(a.table, b.table); c != 0) return c;
  if (auto c = by_support(a.table, b.table); c != 0) return c;
  return compare_canonical(a, b);
}

std::vector<std::size_t> order_indices(std::span<const CARRule> rules, const OrderingStrategy& s) {
  auto idx = iota_indices(rules.size());
  switch (s.kind) {
    case OrderingKind::CSA:
      sort_csa(idx, rules);
      break;
    case OrderingKind::ACS:
      std::sort(idx.begin(), idx.end(),
                [&](std::size_t i, std::size_t j) { return compare_acs(rules[i], rules[j]) < 0; });
      break;
    case OrderingKind::MCSA: {
      const auto mv = measure_values(rules, s.measure);
      std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        if (auto c = mv[j] <=> mv[i]; c != 0) return c < 0;
        return compare_csa(rules[i], rules[j]) < 0;
      });
      break;
    }
    case OrderingKind::SM:
      sort_sm(idx, rules, measure_values(rules, s.measure));
      break;
    case OrderingKind::Hybrid: {
      if (s.k == 0) throw ConfigError("hybrid ordering needs k >= 1");
      sort_sm(idx, rules, measure_values(rules, s.measure));
      if (idx.size() > s.k) idx.resize(s.k);
      sort_csa(idx, rules);
      break;
    }
  }
  return idx;
}

std::vector<CARRule> order(std::span<const CARRule> rules, const OrderingStrategy& s) {
  return gather(rules, order_indices(rules, s));
}

std::vector<CARRule> prune_specific(std::span<const CARRule> rules) {
  // Best CSA-ranked rule for each distinct antecedent. If that rule does not
  // outrank R, no rule with the same antecedent does.
  std::map<std::vector<Item>, std::size_t> best;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    auto [it, inserted] = best.try_emplace(rules[i].antecedent, i);
    if (!inserted && compare_csa(rules[i], rules[it->second]) < 0) it->second = i;
  }

  auto outranked_by = [&](std::size_t i, std::size_t j) {
    return j != i && compare_csa(rules[j], rules[i]) < 0;
  };

  constexpr std::size_t kMaxEnumerated = 20;
  std::vector<std::size_t> keep;
  std::vector<Item> sub;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const auto& ante = rules[i].antecedent;
    bool pruned = false;
    if (ante.size() <= kMaxEnumerated) {
      const std::uint32_t subsets = std::uint32_t{1} << ante.size();
      for (std::uint32_t mask = 0; mask < subsets && !pruned; ++mask) {
        sub.clear();
        for (std::size_t b = 0; b < ante.size(); ++b) {
          if (mask & (std::uint32_t{1} << b)) sub.push_back(ante[b]);
        }
        auto it = best.find(sub);
        pruned = it != best.end() && outranked_by(i, it->second);
      }
    } else {
      for (const auto& [key, j] : best) {
        if (std::includes(ante.begin(), ante.end(), key.begin(), key.end()) && outranked_by(i, j)) {
          pruned = true;
          break;
        }
      }
    }
    if (!pruned) keep.push_back(i);
  }
  return gather(rules, keep);
}

std::vector<CARRule> prune_threshold(std::span<const CARRule> rules, MeasureId m,
                                     MeasureValue threshold) {
  std::vector<CARRule> out;
  for (const auto& r : rules) {
    if (evaluate(m, r.table) >= threshold) out.push_back(r);
  }
  return out;
}

std::vector<CARRule> prune_top_k(std::span<const CARRule> rules, MeasureId m, std::size_t k) {
  if (k == 0) throw ConfigError("top-k pruning needs k >= 1");
  auto idx = order_indices(rules, OrderingStrategy::sm(m));
  if (idx.size() > k) idx.resize(k);
  return gather(rules, idx);
}

}  // namespace carforge
