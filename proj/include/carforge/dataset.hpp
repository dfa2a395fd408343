#pragma once

#include <cstddef>
#include <cstdint>
#include <compare>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace carforge {

using AttributeIndex = std::uint32_t;
using ValueIndex = std::uint32_t;

struct Attribute {
  std::string name;
  std::vector<std::string> values;

  std::optional<ValueIndex> find(std::string_view token) const;
  friend bool operator==(const Attribute&, const Attribute&) = default;
};

/// Nominal attributes in column order, one of which is the class.
class AttributeSchema {
 public:
  AttributeSchema() = default;
  /// Throws DataError if names/values repeat or the class has fewer than two values.
  AttributeSchema(std::vector<Attribute> attributes, AttributeIndex class_index);

  const std::vector<Attribute>& attributes() const noexcept { return attributes_; }
  const Attribute& attribute(AttributeIndex i) const { return attributes_.at(i); }
  std::size_t size() const noexcept { return attributes_.size(); }

  AttributeIndex class_index() const noexcept { return class_index_; }
  const Attribute& class_attribute() const { return attributes_.at(class_index_); }
  std::size_t num_classes() const { return class_attribute().values.size(); }

  std::optional<AttributeIndex> find_attribute(std::string_view name) const;

  friend bool operator==(const AttributeSchema&, const AttributeSchema&) = default;

 private:
  std::vector<Attribute> attributes_;
  AttributeIndex class_index_ = 0;
};

/// Attribute-value pair used in rule antecedents. Never refers to the class attribute.
struct Item {
  AttributeIndex attribute = 0;
  ValueIndex value = 0;

  friend auto operator<=>(const Item&, const Item&) = default;
};

struct Instance {
  // One value index per attribute, class slot included.
  std::vector<ValueIndex> values;
  ValueIndex class_label = 0;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Immutable encoded dataset.
class Dataset {
 public:
  Dataset() = default;
  Dataset(AttributeSchema schema, std::vector<Instance> instances);

  const AttributeSchema& schema() const noexcept { return schema_; }
  const std::vector<Instance>& instances() const noexcept { return instances_; }
  const Instance& operator[](std::size_t i) const { return instances_[i]; }
  std::size_t size() const noexcept { return instances_.size(); }
  bool empty() const noexcept { return instances_.empty(); }

  /// Instance count per class value index.
  std::vector<std::size_t> class_counts() const;

  std::vector<std::string> decode(const Instance& instance) const;
  Instance encode(std::span<const std::string> tokens) const;

  /// New dataset over the same schema holding the given rows, in the given order.
  Dataset subset(std::span<const std::size_t> rows) const;

 private:
  AttributeSchema schema_;
  std::vector<Instance> instances_;
};

/// Reads a headered, comma-separated nominal table. `class_column` is a header
/// name, or a zero-based column index when no header matches it.
Dataset parse_csv(std::istream& in, std::string_view class_column);
Dataset parse_csv(std::istream& in, std::size_t class_index);

/// Parses several files with identical headers into datasets sharing one schema.
/// Value indices follow first appearance across the files in the given order.
std::vector<Dataset> parse_csv_shared(std::span<std::istream* const> inputs,
                                      std::string_view class_column);

void write_csv(std::ostream& out, const Dataset& d);

std::pair<Dataset, Dataset> split_stratified(const Dataset& d, double train_fraction,
                                             std::uint64_t seed);

/// Most frequent class; ties go to the lowest value index.
ValueIndex majority_class(const Dataset& d);

}  // namespace carforge
