#include "factorlab/gf2.hpp"

#include <bit>

namespace factorlab {

std::size_t BitVector::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<BitVector> left_null_space(const Gf2Matrix& m) {
  const std::size_t rows = m.rows();
  // Each working row carries the combination of original rows it equals.
  std::vector<BitVector> work;
  std::vector<BitVector> history;
  work.reserve(rows);
  history.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    work.push_back(m.row(i));
    BitVector h(rows);
    h.set(i);
    history.push_back(std::move(h));
  }

  std::vector<bool> used(rows, false);
  for (std::size_t col = 0; col < m.cols(); ++col) {
    std::size_t pivot = rows;
    for (std::size_t i = 0; i < rows; ++i) {
      if (!used[i] && work[i].get(col)) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows) continue;
    used[pivot] = true;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i != pivot && work[i].get(col)) {
        work[i] ^= work[pivot];
        history[i] ^= history[pivot];
      }
    }
  }

  std::vector<BitVector> basis;
  for (std::size_t i = 0; i < rows; ++i)
    if (!used[i] && !work[i].any()) basis.push_back(std::move(history[i]));
  return basis;
}

}  // namespace factorlab
