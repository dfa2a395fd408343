#pragma once

#include <cstdint>

namespace carforge {

/// Joint counts of antecedent X and class Y over a dataset.
struct ContingencyTable {
  std::uint64_t n11 = 0;  // X and Y
  std::uint64_t n10 = 0;  // X, not Y
  std::uint64_t n01 = 0;  // not X, Y
  std::uint64_t n00 = 0;  // neither

  std::uint64_t n_x() const noexcept { return n11 + n10; }
  std::uint64_t n_y() const noexcept { return n11 + n01; }
  std::uint64_t n_not_x() const noexcept { return n01 + n00; }
  std::uint64_t n_not_y() const noexcept { return n10 + n00; }
  std::uint64_t total() const noexcept { return n11 + n10 + n01 + n00; }

  /// Builds the table from the marginals a rule file stores. Throws DataError if inconsistent.
  static ContingencyTable from_margins(std::uint64_t n11, std::uint64_t n_x, std::uint64_t n_y,
                                       std::uint64_t n);

  friend bool operator==(const ContingencyTable&, const ContingencyTable&) = default;
};

}  // namespace carforge
