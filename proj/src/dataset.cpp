#include "carforge/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <unordered_set>

#include "carforge/errors.hpp"

namespace carforge {

std::optional<ValueIndex> Attribute::find(std::string_view token) const {
  auto it = std::find(values.begin(), values.end(), token);
  if (it == values.end()) return std::nullopt;
  return static_cast<ValueIndex>(it - values.begin());
}

AttributeSchema::AttributeSchema(std::vector<Attribute> attributes, AttributeIndex class_index)
    : attributes_(std::move(attributes)), class_index_(class_index) {
  if (class_index_ >= attributes_.size()) {
    throw DataError("class index " + std::to_string(class_index_) + " out of range");
  }
  std::unordered_set<std::string_view> names;
  for (const auto& a : attributes_) {
    if (!names.insert(a.name).second) throw DataError("duplicate attribute name '" + a.name + "'");
    std::unordered_set<std::string_view> seen;
    for (const auto& v : a.values) {
      if (!seen.insert(v).second) {
        throw DataError("attribute '" + a.name + "' repeats value '" + v + "'");
      }
    }
  }
  if (attributes_[class_index_].values.size() < 2) {
    throw DataError("class attribute '" + attributes_[class_index_].name +
                    "' needs at least two values");
  }
}

std::optional<AttributeIndex> AttributeSchema::find_attribute(std::string_view name) const {
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].name == name) return static_cast<AttributeIndex>(i);
  }
  return std::nullopt;
}

Dataset::Dataset(AttributeSchema schema, std::vector<Instance> instances)
    : schema_(std::move(schema)), instances_(std::move(instances)) {
  const auto& attrs = schema_.attributes();
  for (std::size_t r = 0; r < instances_.size(); ++r) {
    const auto& inst = instances_[r];
    if (inst.values.size() != attrs.size()) {
      throw DataError("instance " + std::to_string(r) + " has " +
                      std::to_string(inst.values.size()) + " values, schema has " +
                      std::to_string(attrs.size()));
    }
    for (std::size_t a = 0; a < attrs.size(); ++a) {
      if (inst.values[a] >= attrs[a].values.size()) {
        throw DataError("instance " + std::to_string(r) + ": value index out of range for '" +
                        attrs[a].name + "'");
      }
    }
    if (inst.class_label != inst.values[schema_.class_index()]) {
      throw DataError("instance " + std::to_string(r) + ": class label disagrees with class column");
    }
  }
}

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(schema_.num_classes(), 0);
  for (const auto& inst : instances_) ++counts[inst.class_label];
  return counts;
}

std::vector<std::string> Dataset::decode(const Instance& instance) const {
  std::vector<std::string> tokens;
  tokens.reserve(instance.values.size());
  for (std::size_t a = 0; a < instance.values.size(); ++a) {
    tokens.push_back(schema_.attributes()[a].values.at(instance.values[a]));
  }
  return tokens;
}

Instance Dataset::encode(std::span<const std::string> tokens) const {
  const auto& attrs = schema_.attributes();
  if (tokens.size() != attrs.size()) throw DataError("token count does not match schema");
  Instance inst;
  inst.values.reserve(tokens.size());
  for (std::size_t a = 0; a < tokens.size(); ++a) {
    auto v = attrs[a].find(tokens[a]);
    if (!v) throw DataError("unknown value '" + tokens[a] + "' for '" + attrs[a].name + "'");
    inst.values.push_back(*v);
  }
  inst.class_label = inst.values[schema_.class_index()];
  return inst;
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  std::vector<Instance> picked;
  picked.reserve(rows.size());
  for (auto r : rows) picked.push_back(instances_.at(r));
  return Dataset(schema_, std::move(picked));
}

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_row(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    cells.emplace_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

RawTable read_rows(std::istream& in) {
  RawTable t;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_row(line);
    if (!have_header) {
      t.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw ParseError(line_no, "expected " + std::to_string(t.header.size()) + " cells, got " +
                                    std::to_string(cells.size()));
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

std::size_t resolve_class_column(const std::vector<std::string>& header,
                                 std::string_view class_column) {
  auto it = std::find(header.begin(), header.end(), class_column);
  if (it != header.end()) return static_cast<std::size_t>(it - header.begin());
  std::size_t idx = 0;
  auto [p, ec] = std::from_chars(class_column.data(), class_column.data() + class_column.size(), idx);
  if (ec == std::errc() && p == class_column.data() + class_column.size() && idx < header.size()) {
    return idx;
  }
  throw ConfigError("unknown class column '" + std::string(class_column) + "'");
}

std::vector<Dataset> encode_tables(const std::vector<RawTable>& tables, std::size_t class_index) {
  const auto& header = tables.front().header;
  if (class_index >= header.size()) {
    throw ConfigError("class column index " + std::to_string(class_index) + " out of range");
  }
  std::vector<Attribute> attrs(header.size());
  for (std::size_t a = 0; a < header.size(); ++a) attrs[a].name = header[a];

  std::vector<std::vector<Instance>> encoded(tables.size());
  for (std::size_t t = 0; t < tables.size(); ++t) {
    for (const auto& row : tables[t].rows) {
      Instance inst;
      inst.values.reserve(row.size());
      for (std::size_t a = 0; a < row.size(); ++a) {
        auto v = attrs[a].find(row[a]);
        if (!v) {
          v = static_cast<ValueIndex>(attrs[a].values.size());
          attrs[a].values.push_back(row[a]);
        }
        inst.values.push_back(*v);
      }
      inst.class_label = inst.values[class_index];
      encoded[t].push_back(std::move(inst));
    }
  }

  AttributeSchema schema(std::move(attrs), static_cast<AttributeIndex>(class_index));
  std::vector<Dataset> out;
  out.reserve(tables.size());
  for (auto& insts : encoded) out.emplace_back(schema, std::move(insts));
  return out;
}

void require_rows(const RawTable& t) {
  if (t.header.empty()) throw EmptyDatasetError("input has no header row");
  if (t.rows.empty()) throw EmptyDatasetError();
}

// Unbiased draw in [0, bound) from the raw 64-bit engine output. Used instead of
// std::uniform_int_distribution so that splits are identical across standard libraries.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

Dataset parse_csv(std::istream& in, std::string_view class_column) {
  RawTable t = read_rows(in);
  require_rows(t);
  std::size_t ci = resolve_class_column(t.header, class_column);
  return std::move(encode_tables({std::move(t)}, ci).front());
}

Dataset parse_csv(std::istream& in, std::size_t class_index) {
  RawTable t = read_rows(in);
  require_rows(t);
  return std::move(encode_tables({std::move(t)}, class_index).front());
}

std::vector<Dataset> parse_csv_shared(std::span<std::istream* const> inputs,
                                      std::string_view class_column) {
  if (inputs.empty()) throw ConfigError("no input files");
  std::vector<RawTable> tables;
  for (auto* in : inputs) {
    tables.push_back(read_rows(*in));
    if (tables.back().header.empty()) throw EmptyDatasetError("input has no header row");
    if (tables.back().header != tables.front().header) {
      throw DataError("input files have different headers");
    }
  }
  require_rows(tables.front());
  std::size_t ci = resolve_class_column(tables.front().header, class_column);
  return encode_tables(tables, ci);
}

void write_csv(std::ostream& out, const Dataset& d) {
  const auto& attrs = d.schema().attributes();
  for (std::size_t a = 0; a < attrs.size(); ++a) out << (a ? "," : "") << attrs[a].name;
  out << '\n';
  for (const auto& inst : d.instances()) {
    auto tokens = d.decode(inst);
    for (std::size_t a = 0; a < tokens.size(); ++a) out << (a ? "," : "") << tokens[a];
    out << '\n';
  }
}

std::pair<Dataset, Dataset> split_stratified(const Dataset& d, double train_fraction,
                                             std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction <= 1.0)) {
    throw ConfigError("train fraction must lie in (0, 1]");
  }
  std::vector<std::vector<std::size_t>> by_class(d.schema().num_classes());
  for (std::size_t i = 0; i < d.size(); ++i) by_class[d[i].class_label].push_back(i);

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> train_rows, test_rows;
  for (auto& rows : by_class) {
    // Fisher-Yates, then the first round-half-up(f * n) rows go to training.
    for (std::size_t i = rows.size(); i > 1; --i) {
      std::swap(rows[i - 1], rows[bounded(rng, i)]);
    }
    auto n_train = static_cast<std::size_t>(
        std::floor(train_fraction * static_cast<double>(rows.size()) + 0.5));
    n_train = std::min(n_train, rows.size());
    train_rows.insert(train_rows.end(), rows.begin(), rows.begin() + n_train);
    test_rows.insert(test_rows.end(), rows.begin() + n_train, rows.end());
  }
  std::sort(train_rows.begin(), train_rows.end());
  std::sort(test_rows.begin(), test_rows.end());
  return {d.subset(train_rows), d.subset(test_rows)};
}

ValueIndex majority_class(const Dataset& d) {
  if (d.empty()) throw EmptyDatasetError();
  auto counts = d.class_counts();
  return static_cast<ValueIndex>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

}  // namespace carforge
