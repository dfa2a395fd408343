#include "carforge/selection.hpp"

#include <numeric>

#include "carforge/errors.hpp"
#include "instance_bits.hpp"

namespace carforge {

using detail::InstanceBits;

void CoverageConfig::validate() const {
  if (cover_threshold < 1) throw ConfigError("cover threshold must be >= 1");
}

CoverageTrace run_coverage(std::span<const CARRule> rules, std::span<const std::size_t> order,
                           const Dataset& train, const CoverageConfig& cfg) {
  cfg.validate();
  if (train.empty()) throw EmptyDatasetError("training set is empty");

  const auto& schema = train.schema();
  const std::size_t n = train.size();

  // Rows holding each (attribute, value), so a rule's matches are an AND of a few sets.
  std::vector<std::vector<InstanceBits>> item_rows(schema.size());
  for (std::size_t a = 0; a < schema.size(); ++a) {
    item_rows[a].assign(schema.attribute(static_cast<AttributeIndex>(a)).values.size(),
                        InstanceBits(n));
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t a = 0; a < schema.size(); ++a) item_rows[a][train[r].values[a]].set(r);
  }

  CoverageTrace trace;
  trace.cover_counts.assign(n, 0);
  InstanceBits alive(n, true);
  std::size_t alive_count = n;

  for (std::size_t pos = 0; pos < order.size() && alive_count > 0; ++pos) {
    const CARRule& rule = rules[order[pos]];
    InstanceBits hit = alive;
    for (const auto& item : rule.antecedent) {
      if (item.attribute >= schema.size() ||
          item.value >= item_rows[item.attribute].size()) {
        throw DataError("rule item outside the training schema");
      }
      hit &= item_rows[item.attribute][item.value];
    }
    if (cfg.require_class_match) hit &= item_rows[schema.class_index()][rule.consequent];
    if (!hit.any()) continue;

    trace.selected.push_back(pos);
    hit.for_each([&](std::size_t r) {
      if (++trace.cover_counts[r] >= cfg.cover_threshold) {
        alive.reset(r);
        --alive_count;
      }
    });
  }
  alive.for_each([&](std::size_t r) { trace.remaining.push_back(r); });
  return trace;
}

CoverageTrace run_coverage(std::span<const CARRule> ordered, const Dataset& train,
                           const CoverageConfig& cfg) {
  std::vector<std::size_t> identity(ordered.size());
  std::iota(identity.begin(), identity.end(), std::size_t{0});
  return run_coverage(ordered, identity, train, cfg);
}

std::vector<CARRule> select_by_coverage(std::span<const CARRule> ordered, const Dataset& train,
                                        const CoverageConfig& cfg) {
  auto trace = run_coverage(ordered, train, cfg);
  std::vector<CARRule> out;
  out.reserve(trace.selected.size());
  for (auto pos : trace.selected) out.push_back(ordered[pos]);
  return out;
}

}  // namespace carforge
