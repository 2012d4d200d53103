#ifndef QCGIRTH_CYCLE_ENGINE_HPP
#define QCGIRTH_CYCLE_ENGINE_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <unordered_set>
#include <vector>

#include "qcgirth/error.hpp"
#include "qcgirth/shift_matrix.hpp"

namespace qcgirth {

/// Longest cycle the engine reasons about is 2 * kMaxHalf = 12, the largest
/// girth a fully connected 3-row QC code can have.
inline constexpr int kMaxHalf = 6;
inline constexpr int kMaxGirth = 2 * kMaxHalf;

/// A closed row/column chain of half-length k in the 3 x L base matrix.
/// At column cols[i] the chain enters on row rows[i] and leaves on
/// rows[(i+1) % k]; consecutive rows and consecutive columns differ,
/// cyclically. Such a chain closes a cycle of length <= 2k in the lift of
/// size P exactly when its sum is divisible by P.
struct Chain {
  int half = 0;
  std::array<int, kMaxHalf> rows{};
  std::array<int, kMaxHalf> cols{};

  int length() const { return 2 * half; }

  bool is_valid(int num_cols) const {
    if (half < 2 || half > kMaxHalf) return false;
    for (int i = 0; i < half; ++i) {
      int n = (i + 1) % half;
      if (rows[i] < 0 || rows[i] >= kRows || cols[i] < 0 || cols[i] >= num_cols)
        return false;
      if (rows[i] == rows[n] || cols[i] == cols[n]) return false;
    }
    return true;
  }

  /// The same cycle walked backwards; its sum is the negation.
  Chain reversed() const {
    Chain out;
    out.half = half;
    out.rows[0] = rows[0];
    for (int i = 1; i < half; ++i) out.rows[i] = rows[half - i];
    for (int i = 0; i < half; ++i) out.cols[i] = cols[half - 1 - i];
    return out;
  }

  friend bool operator==(const Chain &a, const Chain &b) {
    if (a.half != b.half) return false;
    return std::equal(a.rows.begin(), a.rows.begin() + a.half, b.rows.begin()) &&
           std::equal(a.cols.begin(), a.cols.begin() + a.half, b.cols.begin());
  }
};

/// Row-major view of 3 x L shift values. The annealer mutates its own buffer
/// and enumerates through this view without building ShiftMatrix values.
struct ShiftView {
  std::span<const std::int64_t> entries;
  int cols = 0;

  std::int64_t operator()(int row, int col) const {
    return entries[static_cast<std::size_t>(row) * cols + col];
  }
};

namespace detail {

template <class Visit>
class ChainWalker {
 public:
  ChainWalker(ShiftView view, int half, int first_col, Visit &visit)
      : view_(view), first_col_(first_col), visit_(visit) {
    chain_.half = half;
  }

  void run() {
    for (int r = 0; r < kRows && !stopped_; ++r) {
      chain_.rows[0] = r;
      step(0, 0);
    }
  }

 private:
  void step(int i, std::int64_t sum) {
    const int k = chain_.half;
    const int lo = (i == 0 && first_col_ >= 0) ? first_col_ : 0;
    const int hi = (i == 0 && first_col_ >= 0) ? first_col_ + 1 : view_.cols;
    const int row = chain_.rows[i];
    for (int l = lo; l < hi && !stopped_; ++l) {
      if (i > 0 && l == chain_.cols[i - 1]) continue;
      if (i == k - 1 && l == chain_.cols[0]) continue;
      chain_.cols[i] = l;
      const std::int64_t enter = view_(row, l);
      if (i == k - 1) {
        emit(sum + enter - view_(chain_.rows[0], l));
        continue;
      }
      for (int r = 0; r < kRows && !stopped_; ++r) {
        if (r == row) continue;
        if (i + 1 == k - 1 && r == chain_.rows[0]) continue;
        chain_.rows[i + 1] = r;
        step(i + 1, sum + enter - view_(r, l));
      }
    }
  }

  void emit(std::int64_t sum) {
    if constexpr (std::is_same_v<std::invoke_result_t<Visit &, const Chain &, std::int64_t>,
                                 bool>) {
      if (!visit_(static_cast<const Chain &>(chain_), sum)) stopped_ = true;
    } else {
      visit_(static_cast<const Chain &>(chain_), sum);
    }
  }

  ShiftView view_;
  int first_col_;
  Visit &visit_;
  Chain chain_;
  bool stopped_ = false;
};

inline ShiftView view_of(const ShiftMatrix &s, std::vector<std::int64_t> &buffer) {
  buffer.resize(static_cast<std::size_t>(kRows) * s.cols());
  for (int u = 0; u < kRows; ++u)
    for (int v = 0; v < s.cols(); ++v) buffer[static_cast<std::size_t>(u) * s.cols() + v] = s(u, v);
  return ShiftView{buffer, s.cols()};
}

}  // namespace detail

/// Calls visit(chain, integer_sum) for every valid chain of the given
/// half-length, in a fixed deterministic order. Rotations and reversals are
/// visited as distinct chains. With first_col >= 0 only chains with
/// cols[0] == first_col are produced. A visitor returning bool stops the
/// walk by returning false.
template <class Visit>
void for_each_chain(ShiftView view, int half, Visit &&visit, int first_col = -1) {
  detail::ChainWalker<std::remove_reference_t<Visit>> walker(view, half, first_col, visit);
  walker.run();
}

template <class Visit>
void for_each_chain(const ShiftMatrix &s, int half, Visit &&visit, int first_col = -1) {
  std::vector<std::int64_t> buffer;
  for_each_chain(detail::view_of(s, buffer), half, std::forward<Visit>(visit), first_col);
}

/// Exact alternating sum of the chain over the (unreduced) shift values.
inline std::int64_t chain_sum(const ShiftMatrix &s, const Chain &c) {
  if (!c.is_valid(s.cols()))
    throw Error("invalid chain: indices out of range or adjacent indices equal");
  std::int64_t sum = 0;
  for (int i = 0; i < c.half; ++i) {
    int next = c.rows[(i + 1) % c.half];
    sum += s(c.rows[i], c.cols[i]) - s(next, c.cols[i]);
  }
  return sum;
}

/// Girth of a lift, or "above the cap" when no cycle up to the cap exists.
class Girth {
 public:
  static Girth of(int length) { return Girth(length); }
  static Girth above_cap() { return Girth(0); }

  bool is_above_cap() const { return length_ == 0; }
  /// Only meaningful when !is_above_cap().
  int length() const { return length_; }

  std::string to_string() const {
    return is_above_cap() ? std::string("above_cap") : std::to_string(length_);
  }

  friend bool operator==(const Girth &, const Girth &) = default;

 private:
  explicit Girth(int length) : length_(length) {}
  int length_;
};

/// For each half-length k, the set of absolute integer chain sums. A lift of
/// size P has a cycle of length <= 2k through some chain iff P divides one of
/// these values, so the spectrum is computed once and reused for every P.
/// Zero is kept as a separate flag: it means a cycle at every modulus.
class CycleSpectrum {
 public:
  CycleSpectrum() = default;
  explicit CycleSpectrum(int max_half) : max_half_(max_half) {}

  int max_half() const { return max_half_; }
  int max_length() const { return 2 * max_half_; }

  /// Sorted, deduplicated, strictly positive values.
  const std::vector<std::int64_t> &values(int half) const { return values_.at(half); }
  bool has_zero(int half) const { return zero_.at(half); }

  /// Whether some chain of this half-length closes at modulus p.
  bool closes_at(int half, std::int64_t p) const {
    if (zero_[half]) return true;
    for (std::int64_t v : values_[half])
      if (v % p == 0) return true;
    return false;
  }

  Girth girth_at(std::int64_t p) const {
    for (int k = 2; k <= max_half_; ++k)
      if (closes_at(k, p)) return Girth::of(2 * k);
    return Girth::above_cap();
  }

  /// Lowest half-length whose zero flag is set, if any.
  std::optional<int> first_zero_half() const {
    for (int k = 2; k <= max_half_; ++k)
      if (zero_[k]) return k;
    return std::nullopt;
  }

  /// One line per half-length: "k: s1 s2 ..." ascending, 0 first when set.
  std::string dump() const {
    std::string out;
    for (int k = 2; k <= max_half_; ++k) {
      out += std::to_string(k) + ':';
      if (zero_[k]) out += " 0";
      for (std::int64_t v : values_[k]) out += ' ' + std::to_string(v);
      out += '\n';
    }
    return out;
  }

  void set(int half, std::vector<std::int64_t> positive, bool zero) {
    values_.at(half) = std::move(positive);
    zero_.at(half) = zero;
  }

  friend bool operator==(const CycleSpectrum &, const CycleSpectrum &) = default;

 private:
  int max_half_ = 0;
  std::array<std::vector<std::int64_t>, kMaxHalf + 1> values_{};
  std::array<bool, kMaxHalf + 1> zero_{};
};

inline int half_from_length(int max_len) {
  if (max_len < 4 || max_len > kMaxGirth || max_len % 2 != 0)
    throw Error("cycle length cap must be one of 4, 6, 8, 10, 12; got " +
                std::to_string(max_len));
  return max_len / 2;
}

/// Enumerates every chain of half-length 2 .. max_len / 2 and collects the
/// absolute sums. Independent of any modulus.
inline CycleSpectrum cycle_spectrum(const ShiftMatrix &s, int max_len = kMaxGirth) {
  const int max_half = half_from_length(max_len);
  CycleSpectrum out(max_half);
  std::vector<std::int64_t> buffer;
  ShiftView view = detail::view_of(s, buffer);

  std::int64_t spread = 0;
  for (int v = 0; v < s.cols(); ++v) {
    for (int a = 0; a < kRows; ++a)
      for (int b = 0; b < kRows; ++b) spread = std::max(spread, s(a, v) - s(b, v));
  }

  constexpr std::int64_t kDenseLimit = std::int64_t{1} << 26;
  for (int k = 2; k <= max_half; ++k) {
    const std::int64_t bound = spread * k;
    bool zero = false;
    std::vector<std::int64_t> positive;
    if (bound <= kDenseLimit) {
      std::vector<std::uint8_t> seen(static_cast<std::size_t>(bound) + 1, 0);
      for_each_chain(view, k, [&](const Chain &, std::int64_t sum) {
        seen[static_cast<std::size_t>(sum < 0 ? -sum : sum)] = 1;
      });
      zero = seen[0] != 0;
      for (std::int64_t v = 1; v <= bound; ++v)
        if (seen[static_cast<std::size_t>(v)]) positive.push_back(v);
    } else {
      std::unordered_set<std::int64_t> seen;
      for_each_chain(view, k, [&](const Chain &, std::int64_t sum) {
        seen.insert(sum < 0 ? -sum : sum);
      });
      zero = seen.erase(0) > 0;
      positive.assign(seen.begin(), seen.end());
      std::sort(positive.begin(), positive.end());
    }
    out.set(k, std::move(positive), zero);
  }
  return out;
}

/// Reads the format written by CycleSpectrum::dump().
inline CycleSpectrum parse_spectrum(std::string_view text) {
  std::vector<std::pair<int, std::vector<std::int64_t>>> lines;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = detail::trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string_view::npos)
      throw Error("spectrum line " + std::to_string(line_no) + ": missing ':'");
    int half = static_cast<int>(detail::parse_nonnegative(detail::trim(line.substr(0, colon)), line_no));
    std::vector<std::int64_t> vals;
    std::string_view rest = line.substr(colon + 1);
    std::size_t i = 0;
    while (i < rest.size()) {
      while (i < rest.size() && rest[i] == ' ') ++i;
      std::size_t j = i;
      while (j < rest.size() && rest[j] != ' ') ++j;
      if (j > i) vals.push_back(detail::parse_nonnegative(rest.substr(i, j - i), line_no));
      i = j;
    }
    lines.emplace_back(half, std::move(vals));
  }
  if (lines.empty()) throw Error("empty spectrum");
  const int max_half = static_cast<int>(lines.size()) + 1;
  if (max_half > kMaxHalf) throw Error("spectrum has too many lines");
  CycleSpectrum out(max_half);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    auto &[half, vals] = lines[n];
    if (half != static_cast<int>(n) + 2)
      throw Error("spectrum lines must list half-lengths 2, 3, ... in order");
    if (!std::is_sorted(vals.begin(), vals.end()) ||
        std::adjacent_find(vals.begin(), vals.end()) != vals.end())
      throw Error("spectrum values for k=" + std::to_string(half) + " must be strictly ascending");
    bool zero = !vals.empty() && vals.front() == 0;
    if (zero) vals.erase(vals.begin());
    out.set(half, std::move(vals), zero);
  }
  return out;
}

/// A concrete chain whose integer sum vanishes modulo `modulus`.
struct CycleWitness {
  Chain chain;
  std::int64_t integer_sum = 0;
  std::int64_t modulus = 0;

  int length() const { return chain.length(); }

  /// Recomputes the sum from the matrix and checks divisibility.
  bool validates(const ShiftMatrix &s) const {
    if (modulus < 1 || !chain.is_valid(s.cols())) return false;
    return chain_sum(s, chain) == integer_sum && integer_sum % modulus == 0;
  }
};

inline void require_lift(const ShiftMatrix &s, std::int64_t p) {
  if (p < 2) throw Error("circulant size must be at least 2, got " + std::to_string(p));
  if (s.max_entry() >= p)
    throw Error("shift " + std::to_string(s.max_entry()) +
                " is not below the circulant size " + std::to_string(p) +
                " (reduce the matrix modulo P explicitly if intended)");
}

/// Girth of the lift of size p, decided from the spectrum; "above_cap" when
/// no cycle of length <= max_len exists.
inline Girth qc_girth(const ShiftMatrix &s, std::int64_t p, int max_len = kMaxGirth) {
  require_lift(s, p);
  return cycle_spectrum(s, max_len).girth_at(p);
}

/// First chain (in enumeration order) of the requested length whose sum is
/// divisible by p.
inline std::optional<CycleWitness> find_cycle(const ShiftMatrix &s, std::int64_t p, int length) {
  require_lift(s, p);
  const int half = half_from_length(length);
  std::optional<CycleWitness> found;
  for_each_chain(s, half, [&](const Chain &c, std::int64_t sum) {
    if (sum % p != 0) return true;
    found = CycleWitness{c, sum, p};
    return false;
  });
  return found;
}

/// Witness for the shortest cycle of the lift of size p, if any up to 12.
inline std::optional<CycleWitness> find_shortest_cycle(const ShiftMatrix &s, std::int64_t p) {
  for (int len = 4; len <= kMaxGirth; len += 2)
    if (auto w = find_cycle(s, p, len)) return w;
  return std::nullopt;
}

/// A chain whose integer sum is exactly zero, i.e. a cycle at every modulus.
inline std::optional<Chain> find_zero_chain(const ShiftMatrix &s, int half) {
  std::optional<Chain> found;
  for_each_chain(s, half, [&](const Chain &c, std::int64_t sum) {
    if (sum != 0) return true;
    found = c;
    return false;
  });
  return found;
}

}  // namespace qcgirth

#endif  // QCGIRTH_CYCLE_ENGINE_HPP
