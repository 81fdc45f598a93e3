#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "flylsh/errors.hpp"

namespace flylsh {

/// Fixed-length packed bit sequence with a cached population count.
/// The length is set at construction and never changes; bits can only be
/// turned on, which is all the hash constructions need.
class BitVector {
 public:
  BitVector() = default;

  explicit BitVector(std::size_t bits)
      : nbits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const { return nbits_; }
  std::size_t ones_count() const { return ones_; }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(std::size_t i) {
    std::uint64_t& w = words_[i >> 6];
    const std::uint64_t bit = 1ULL << (i & 63);
    if (!(w & bit)) {
      w |= bit;
      ++ones_;
    }
  }

  std::span<const std::uint64_t> words() const { return words_; }

  bool operator==(const BitVector&) const = default;

  /// Little-endian packed bytes, ceil(size/8) of them; bit i lands in
  /// byte i/8 at position i%8.
  std::vector<std::uint8_t> to_bytes() const {
    std::vector<std::uint8_t> out((nbits_ + 7) / 8);
    for (std::size_t b = 0; b < out.size(); ++b) {
      out[b] = static_cast<std::uint8_t>(words_[b >> 3] >> ((b & 7) * 8));
    }
    return out;
  }

  static BitVector from_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits) {
    if (bytes.size() != (nbits + 7) / 8) {
      throw FormatError("BitVector::from_bytes: byte count does not match bit length");
    }
    BitVector v(nbits);
    for (std::size_t b = 0; b < bytes.size(); ++b) {
      v.words_[b >> 3] |= static_cast<std::uint64_t>(bytes[b]) << ((b & 7) * 8);
    }
    if (nbits % 64 != 0 && !v.words_.empty()) {
      const std::uint64_t mask = (~0ULL) >> (64 - nbits % 64);
      if (v.words_.back() & ~mask) {
        throw FormatError("BitVector::from_bytes: nonzero bits beyond declared length");
      }
    }
    v.ones_ = 0;
    for (std::uint64_t w : v.words_) v.ones_ += static_cast<std::size_t>(std::popcount(w));
    return v;
  }

  std::string to_string() const {
    std::string s(nbits_, '0');
    for (std::size_t i = 0; i < nbits_; ++i) {
      if (test(i)) s[i] = '1';
    }
    return s;
  }

 private:
  std::size_t nbits_ = 0;
  std::size_t ones_ = 0;
  std::vector<std::uint64_t> words_;
};

/// High-dimensional ranking hash h1 (length mk, or m for budget-equated SimHash).
using BitHash = BitVector;
/// m-bit pseudo-hash / SimHash bucket key h2.
using BinKey = BitVector;

/// Number of differing bit positions. Throws DimensionError on length mismatch.
inline std::size_t hamming(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) {
    throw DimensionError("hamming: bit lengths differ (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
  }
  std::size_t dist = 0;
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    dist += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
  }
  return dist;
}

struct BitVectorHash {
  std::size_t operator()(const BitVector& v) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ v.size();
    for (std::uint64_t w : v.words()) {
      h = (h ^ w) * 0x100000001b3ULL;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace flylsh
