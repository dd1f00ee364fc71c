#pragma once

// Smith normal form over the integers, used to read off the structure of a
// finitely generated abelian group presented as a cokernel.

#include <cstddef>
#include <utility>
#include <vector>

#include "paramod/linalg.hpp"

namespace paramod {

struct SmithForm {
  // Nonzero diagonal entries d_1 | d_2 | ... | d_r, all positive.
  std::vector<BigInt> diagonal;
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::size_t rank() const noexcept { return diagonal.size(); }
};

namespace detail {

inline void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

inline void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

// Position of the entry with the smallest nonzero absolute value in the
// lower-right block starting at (t, t); returns false if the block is zero.
inline bool smallest_entry(const IntMatrix& m, std::size_t t, std::size_t& row, std::size_t& col) {
  bool found = false;
  BigInt best;
  for (std::size_t r = t; r < m.rows(); ++r)
    for (std::size_t c = t; c < m.cols(); ++c) {
      if (m(r, c) == 0) continue;
      BigInt a = abs(m(r, c));
      if (!found || a < best) {
        best = a;
        row = r;
        col = c;
        found = true;
      }
    }
  return found;
}

}  // namespace detail

inline SmithForm smith_normal_form(IntMatrix m) {
  SmithForm out;
  out.rows = m.rows();
  out.cols = m.cols();
  const std::size_t limit = std::min(m.rows(), m.cols());

  for (std::size_t t = 0; t < limit; ++t) {
    std::size_t pr = 0, pc = 0;
    if (!detail::smallest_entry(m, t, pr, pc)) break;
    detail::swap_rows(m, t, pr);
    detail::swap_cols(m, t, pc);

    for (;;) {
      bool dirty = false;
      // Clear column t below the pivot.
      for (std::size_t r = t + 1; r < m.rows(); ++r) {
        if (m(r, t) == 0) continue;
        const BigInt q = m(r, t) / m(t, t);
        for (std::size_t c = t; c < m.cols(); ++c) m(r, c) -= q * m(t, c);
        if (m(r, t) != 0) dirty = true;
      }
      // Clear row t right of the pivot.
      for (std::size_t c = t + 1; c < m.cols(); ++c) {
        if (m(t, c) == 0) continue;
        const BigInt q = m(t, c) / m(t, t);
        for (std::size_t r = t; r < m.rows(); ++r) m(r, c) -= q * m(r, t);
        if (m(t, c) != 0) dirty = true;
      }
      if (!dirty) {
        // The pivot must divide the rest of the block; otherwise fold an
        // offending row into row t and go again.
        bool divides = true;
        for (std::size_t r = t + 1; r < m.rows() && divides; ++r)
          for (std::size_t c = t + 1; c < m.cols(); ++c)
            if (m(r, c) % m(t, t) != 0) {
              for (std::size_t k = t; k < m.cols(); ++k) m(t, k) += m(r, k);
              divides = false;
              break;
            }
        if (divides) break;
      }
      // Remainders are smaller than the pivot: move the smallest into place.
      std::size_t r2 = t, c2 = t;
      BigInt best = abs(m(t, t));
      for (std::size_t r = t; r < m.rows(); ++r)
        if (m(r, t) != 0 && abs(m(r, t)) < best) best = abs(m(r, t)), r2 = r, c2 = t;
      for (std::size_t c = t; c < m.cols(); ++c)
        if (m(t, c) != 0 && abs(m(t, c)) < best) best = abs(m(t, c)), r2 = t, c2 = c;
      detail::swap_rows(m, t, r2);
      detail::swap_cols(m, t, c2);
    }
    out.diagonal.push_back(abs(m(t, t)));
  }
  return out;
}

}  // namespace paramod
