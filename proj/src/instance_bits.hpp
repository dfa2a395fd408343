#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace carforge::detail {

// Fixed-length set of instance positions packed 64 per word.
class InstanceBits {
 public:
  InstanceBits() = default;
  explicit InstanceBits(std::size_t n, bool filled = false)
      : words_((n + 63) / 64, filled ? ~std::uint64_t{0} : 0), n_(n) {
    if (filled && n % 64 != 0 && !words_.empty()) words_.back() = (std::uint64_t{1} << (n % 64)) - 1;
  }

  std::size_t size() const noexcept { return n_; }

  void set(std::size_t i) noexcept { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) noexcept { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const noexcept { return (words_[i / 64] >> (i % 64)) & 1u; }

  std::uint64_t count() const noexcept {
    std::uint64_t c = 0;
    for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
  }

  bool any() const noexcept {
    for (auto w : words_) {
      if (w) return true;
    }
    return false;
  }

  InstanceBits& operator&=(const InstanceBits& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }

  friend InstanceBits operator&(InstanceBits a, const InstanceBits& b) noexcept { return a &= b; }

  std::uint64_t count_and(const InstanceBits& o) const noexcept {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      c += static_cast<std::uint64_t>(std::popcount(words_[i] & o.words_[i]));
    }
    return c;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

 private:
  std::vector<std::uint64_t> words_;
  std::size_t n_ = 0;
};

}  // namespace carforge::detail
