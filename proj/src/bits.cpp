#include "capcomp/bits.hpp"

#include <algorithm>
#include <numeric>

#include "capcomp/errors.hpp"

namespace capcomp {

BitSequence::BitSequence(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw ParseError("bit values must be 0 or 1");
  }
}

BitSequence BitSequence::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw ParseError("invalid bit string '" + std::string(text) + "'");
    }
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return BitSequence(std::move(bits));
}

BitSequence BitSequence::from_mask(std::uint64_t mask, std::size_t n) {
  if (n > 64) throw DomainError("mask words are limited to 64 bits");
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) {
    bits[i] = static_cast<std::uint8_t>((mask >> (n - 1 - i)) & 1U);
  }
  return BitSequence(std::move(bits));
}

std::size_t BitSequence::weight(std::size_t first, std::size_t count) const {
  if (first + count > bits_.size()) throw DomainError("weight range out of bounds");
  auto begin = bits_.begin() + static_cast<std::ptrdiff_t>(first);
  return std::accumulate(begin, begin + static_cast<std::ptrdiff_t>(count), std::size_t{0});
}

BitSequence& BitSequence::append(const BitSequence& tail) {
  bits_.insert(bits_.end(), tail.bits_.begin(), tail.bits_.end());
  return *this;
}

BitSequence BitSequence::repeated(std::size_t times) const {
  BitSequence out;
  out.bits_.reserve(bits_.size() * times);
  for (std::size_t i = 0; i < times; ++i) out.append(*this);
  return out;
}

std::uint64_t BitSequence::to_mask() const {
  if (bits_.size() > 64) throw DomainError("mask words are limited to 64 bits");
  std::uint64_t mask = 0;
  for (auto b : bits_) mask = (mask << 1) | b;
  return mask;
}

std::string BitSequence::to_string() const {
  std::string out(bits_.size(), '0');
  std::transform(bits_.begin(), bits_.end(), out.begin(),
                 [](std::uint8_t b) { return static_cast<char>('0' + b); });
  return out;
}

}  // namespace capcomp
