#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace capcomp {

// A finite binary word b_1 ... b_n. Position 0 holds b_1.
class BitSequence {
 public:
  BitSequence() = default;
  explicit BitSequence(std::vector<std::uint8_t> bits);

  // Parses a string of '0'/'1' characters; anything else throws ParseError.
  static BitSequence parse(std::string_view text);

  // The n-bit word whose first bit is the most significant bit of `mask`,
  // so increasing masks enumerate words in lexicographic order.
  static BitSequence from_mask(std::uint64_t mask, std::size_t n);

  static BitSequence ones(std::size_t n) { return BitSequence(std::vector<std::uint8_t>(n, 1)); }
  static BitSequence zeros(std::size_t n) { return BitSequence(std::vector<std::uint8_t>(n, 0)); }

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const noexcept { return bits_[i]; }

  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  // Number of ones in [first, first + count).
  std::size_t weight(std::size_t first, std::size_t count) const;
  std::size_t weight() const { return weight(0, size()); }

  BitSequence& append(const BitSequence& tail);
  BitSequence repeated(std::size_t times) const;

  std::uint64_t to_mask() const;
  std::string to_string() const;

  friend bool operator==(const BitSequence&, const BitSequence&) = default;
  friend std::strong_ordering operator<=>(const BitSequence& a, const BitSequence& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace capcomp
