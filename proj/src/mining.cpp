#include "carforge/mining.hpp"

#include <algorithm>
#include <cmath>
#include <ranges>
#include <string>

#include "carforge/errors.hpp"
#include "instance_bits.hpp"

namespace carforge {

ContingencyTable ContingencyTable::from_margins(std::uint64_t n11, std::uint64_t n_x,
                                                std::uint64_t n_y, std::uint64_t n) {
  if (n11 > n_x || n11 > n_y || n_x > n || n_y > n || n_x + n_y - n11 > n) {
    throw DataError("inconsistent rule counts " + std::to_string(n11) + " " + std::to_string(n_x) +
                    " " + std::to_string(n_y) + " " + std::to_string(n));
  }
  return {n11, n_x - n11, n_y - n11, n - n_x - n_y + n11};
}

double CARRule::confidence() const noexcept {
  const auto nx = table.n_x();
  return nx == 0 ? 0.0 : static_cast<double>(table.n11) / static_cast<double>(nx);
}

double CARRule::support() const noexcept {
  const auto n = table.total();
  return n == 0 ? 0.0 : static_cast<double>(table.n11) / static_cast<double>(n);
}

bool CARRule::matches(std::span<const ValueIndex> values) const noexcept {
  for (const auto& item : antecedent) {
    if (item.attribute >= values.size() || values[item.attribute] != item.value) return false;
  }
  return true;
}

std::strong_ordering compare_canonical(const CARRule& a, const CARRule& b) noexcept {
  auto c = std::lexicographical_compare_three_way(a.antecedent.begin(), a.antecedent.end(),
                                                  b.antecedent.begin(), b.antecedent.end());
  if (c != 0) return c;
  return a.consequent <=> b.consequent;
}

void MiningConfig::validate() const {
  if (!(min_support > 0.0 && min_support <= 1.0)) {
    throw ConfigError("min_support must lie in (0, 1]");
  }
  if (!(min_confidence > 0.0 && min_confidence <= 1.0)) {
    throw ConfigError("min_confidence must lie in (0, 1]");
  }
  if (max_antecedent_len && *max_antecedent_len == 0) {
    throw ConfigError("max_antecedent_len must be positive");
  }
  if (max_rules && *max_rules == 0) throw ConfigError("max_rules must be positive");
}

std::uint64_t MiningConfig::min_count(std::size_t n) const {
  // The epsilon keeps e.g. 0.3 * 10 = 3.0000000000000004 at 3.
  const double raw = std::ceil(min_support * static_cast<double>(n) - 1e-9);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::max(raw, 0.0)));
}

ContingencyTable count_table(std::span<const Item> antecedent, ValueIndex consequent,
                             const Dataset& d) {
  ContingencyTable t;
  for (const auto& inst : d.instances()) {
    bool x = std::all_of(antecedent.begin(), antecedent.end(),
                         [&](const Item& it) { return inst.values[it.attribute] == it.value; });
    bool y = inst.class_label == consequent;
    if (x && y) ++t.n11;
    else if (x) ++t.n10;
    else if (y) ++t.n01;
    else ++t.n00;
  }
  return t;
}

namespace {

using detail::InstanceBits;

struct Candidate {
  std::vector<Item> items;
  InstanceBits rows;
  std::uint64_t count = 0;
};

bool same_prefix(const Candidate& a, const Candidate& b) {
  return std::equal(a.items.begin(), a.items.end() - 1, b.items.begin(), b.items.end() - 1);
}

// Apriori check: every subset obtained by dropping one of the first k-1 items of
// `items` must be frequent. The two subsets dropping either of the last items are
// the parents and are frequent by construction.
bool all_subsets_frequent(const std::vector<Item>& items, const std::vector<Candidate>& level) {
  if (items.size() <= 2) return true;
  std::vector<Item> sub;
  sub.reserve(items.size() - 1);
  for (std::size_t drop = 0; drop + 2 < items.size(); ++drop) {
    sub.clear();
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i != drop) sub.push_back(items[i]);
    }
    bool found = std::ranges::binary_search(level, sub, {}, &Candidate::items);
    if (!found) return false;
  }
  return true;
}

}  // namespace

std::vector<CARRule> mine_cars(const Dataset& d, const MiningConfig& cfg) {
  cfg.validate();
  if (d.empty()) throw EmptyDatasetError();

  const auto& schema = d.schema();
  const std::size_t n = d.size();
  const std::uint64_t min_count = cfg.min_count(n);
  const std::size_t num_classes = schema.num_classes();

  std::vector<InstanceBits> class_rows(num_classes, InstanceBits(n));
  std::vector<std::uint64_t> class_count(num_classes, 0);
  for (std::size_t r = 0; r < n; ++r) {
    class_rows[d[r].class_label].set(r);
    ++class_count[d[r].class_label];
  }

  std::vector<CARRule> rules;
  bool full = false;

  auto emit_level = [&](const std::vector<Candidate>& level) {
    for (const auto& cand : level) {
      for (std::size_t c = 0; c < num_classes && !full; ++c) {
        const std::uint64_t n11 = cand.rows.count_and(class_rows[c]);
        if (n11 < min_count) continue;
        const double conf = static_cast<double>(n11) / static_cast<double>(cand.count);
        if (conf < cfg.min_confidence) continue;
        ContingencyTable t;
        t.n11 = n11;
        t.n10 = cand.count - n11;
        t.n01 = class_count[c] - n11;
        t.n00 = n - cand.count - t.n01;
        rules.push_back(CARRule{cand.items, static_cast<ValueIndex>(c), t});
        if (cfg.max_rules && rules.size() >= *cfg.max_rules) full = true;
      }
      if (full) return;
    }
  };

  // Level 1: single items, already in canonical order.
  std::vector<Candidate> level;
  for (std::size_t a = 0; a < schema.size(); ++a) {
    if (a == schema.class_index()) continue;
    const auto& attr = schema.attribute(static_cast<AttributeIndex>(a));
    std::vector<InstanceBits> by_value(attr.values.size(), InstanceBits(n));
    for (std::size_t r = 0; r < n; ++r) by_value[d[r].values[a]].set(r);
    for (std::size_t v = 0; v < attr.values.size(); ++v) {
      auto cnt = by_value[v].count();
      if (cnt < min_count) continue;
      level.push_back(Candidate{{Item{static_cast<AttributeIndex>(a), static_cast<ValueIndex>(v)}},
                                std::move(by_value[v]), cnt});
    }
  }

  std::size_t size = 1;
  while (!level.empty() && !full) {
    emit_level(level);
    if (full) break;
    if (cfg.max_antecedent_len && size >= *cfg.max_antecedent_len) break;

    // Join candidates sharing all but the last item. The level is sorted, so such
    // candidates are contiguous and the joins come out in canonical order.
    std::vector<Candidate> next;
    for (std::size_t i = 0; i < level.size(); ++i) {
      for (std::size_t j = i + 1; j < level.size() && same_prefix(level[i], level[j]); ++j) {
        const Item& last_i = level[i].items.back();
        const Item& last_j = level[j].items.back();
        if (last_i.attribute == last_j.attribute) continue;
        std::vector<Item> items = level[i].items;
        items.push_back(last_j);
        if (!all_subsets_frequent(items, level)) continue;
        InstanceBits rows = level[i].rows & level[j].rows;
        auto cnt = rows.count();
        if (cnt < min_count) continue;
        next.push_back(Candidate{std::move(items), std::move(rows), cnt});
      }
    }
    level = std::move(next);
    ++size;
  }
  return rules;
}

}  // namespace carforge
