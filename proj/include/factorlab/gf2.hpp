#ifndef FACTORLAB_GF2_HPP
#define FACTORLAB_GF2_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace factorlab {

/// Bit vector over GF(2), packed into 64-bit words.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i, bool v = true) {
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (v) words_[i / 64] |= mask; else words_[i / 64] &= ~mask;
  }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  BitVector& operator^=(const BitVector& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }

  bool any() const {
    for (auto w : words_) if (w != 0) return true;
    return false;
  }
  std::size_t count() const;
  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Dense row-major matrix over GF(2).
class Gf2Matrix {
 public:
  Gf2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  BitVector& row(std::size_t i) { return rows_[i]; }
  const BitVector& row(std::size_t i) const { return rows_[i]; }

 private:
  std::size_t cols_;
  std::vector<BitVector> rows_;
};

/// Basis of the left null space: every returned tau (length = rows) satisfies
/// sum_i tau_i * row_i = 0. Vectors come out in elimination order, which is
/// deterministic for a given matrix.
std::vector<BitVector> left_null_space(const Gf2Matrix& m);

}  // namespace factorlab

#endif  // FACTORLAB_GF2_HPP
