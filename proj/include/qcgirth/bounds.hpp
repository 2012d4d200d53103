#ifndef QCGIRTH_BOUNDS_HPP
#define QCGIRTH_BOUNDS_HPP

#include <algorithm>
#include <array>
#include <cstdint>

#include "qcgirth/shift_matrix.hpp"

namespace qcgirth {

/// Consecutive-length bound for girth twelve. Every circulant size
/// P > p_prime gives girth 12 as soon as one size does; P = p_prime never
/// does. All arithmetic is exact (entries are capped at 2^56).
struct TightBound {
  BoundStats stats;
  std::array<std::int64_t, 6> T{};  // T[0] is T1, ..., T[5] is T6
  std::int64_t p_prime = 0;
  std::int64_t girth10_bound = 0;

  /// Smallest circulant size covered by the girth-12 guarantee.
  std::int64_t first_certified_p() const { return p_prime + 1; }
  /// Code length N = L * (p_prime + 1) where the consecutive family starts.
  std::int64_t start_length(int cols) const { return cols * first_certified_p(); }
};

inline TightBound tight_bound(const BoundStats &st) {
  TightBound out;
  out.stats = st;
  const auto [A, B, C, D] = st;
  out.T = {2 * A + D, 2 * B + C, A + C + 2 * D, B + 2 * C + D, A + B + D, A + B + C};
  out.p_prime = *std::max_element(out.T.begin(), out.T.end());
  out.girth10_bound = 2 * std::max({A, B, C + D});
  return out;
}

inline TightBound tight_bound(const ShiftMatrix &s) { return tight_bound(stats(s)); }

/// 2 * max{A, B, C + D}: the girth-10 consecutive-length bound, always
/// dominated by p_prime.
inline std::int64_t girth10_bound(const ShiftMatrix &s) {
  return tight_bound(s).girth10_bound;
}

}  // namespace qcgirth

#endif  // QCGIRTH_BOUNDS_HPP
