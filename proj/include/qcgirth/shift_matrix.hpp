#ifndef QCGIRTH_SHIFT_MATRIX_HPP
#define QCGIRTH_SHIFT_MATRIX_HPP

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcgirth/error.hpp"

namespace qcgirth {

/// Number of block rows. Only column weight 3 is supported.
inline constexpr int kRows = 3;

/// Largest accepted shift value. Keeps every chain sum (at most 12 terms of
/// one entry each) and every bound formula comfortably inside int64.
inline constexpr std::int64_t kMaxEntry = std::int64_t{1} << 56;

/// Unvalidated 3-row integer matrix, used as the input of canonicalize().
using IntRows = std::vector<std::vector<std::int64_t>>;

/// A 3 x L matrix of circulant shift values. Entries are plain nonnegative
/// integers without an attached modulus, so the same matrix describes the
/// whole family of lifts H_P for every circulant size P.
class ShiftMatrix {
 public:
  /// Validates shape and entry range; throws Error otherwise.
  explicit ShiftMatrix(const IntRows &rows) {
    if (rows.size() != static_cast<std::size_t>(kRows))
      throw Error("shift matrix must have exactly 3 rows, got " +
                  std::to_string(rows.size()));
    cols_ = static_cast<int>(rows[0].size());
    for (std::size_t u = 0; u < rows.size(); ++u) {
      if (rows[u].size() != rows[0].size())
        throw Error("ragged shift matrix: row " + std::to_string(u) + " has " +
                    std::to_string(rows[u].size()) + " entries, row 0 has " +
                    std::to_string(rows[0].size()));
    }
    if (cols_ < 2)
      throw Error("shift matrix needs at least 2 columns, got " +
                  std::to_string(cols_));
    entries_.reserve(kRows * rows[0].size());
    for (std::size_t u = 0; u < rows.size(); ++u) {
      for (std::size_t v = 0; v < rows[u].size(); ++v) {
        std::int64_t x = rows[u][v];
        if (x < 0)
          throw Error("negative shift " + std::to_string(x) + " at row " +
                      std::to_string(u) + ", column " + std::to_string(v));
        if (x > kMaxEntry)
          throw Error("shift " + std::to_string(x) + " at row " +
                      std::to_string(u) + ", column " + std::to_string(v) +
                      " exceeds the supported maximum 2^56");
        entries_.push_back(x);
      }
    }
  }

  int rows() const { return kRows; }
  int cols() const { return cols_; }

  std::int64_t operator()(int row, int col) const {
    return entries_[static_cast<std::size_t>(row) * cols_ + col];
  }
  std::int64_t at(int row, int col) const {
    if (row < 0 || row >= kRows || col < 0 || col >= cols_)
      throw Error("shift matrix index (" + std::to_string(row) + ", " +
                  std::to_string(col) + ") out of range");
    return (*this)(row, col);
  }

  std::int64_t max_entry() const {
    return *std::max_element(entries_.begin(), entries_.end());
  }

  IntRows to_rows() const {
    IntRows out(kRows, std::vector<std::int64_t>(cols_));
    for (int u = 0; u < kRows; ++u)
      for (int v = 0; v < cols_; ++v) out[u][v] = (*this)(u, v);
    return out;
  }

  /// Row 0 and column 0 are all zero.
  bool is_canonical() const { return canonical_violation().empty(); }

  /// Empty when canonical, otherwise a description of the first violation.
  std::string canonical_violation() const {
    for (int v = 0; v < cols_; ++v)
      if ((*this)(0, v) != 0)
        return "row 0 must be all zeros (column " + std::to_string(v) +
               " holds " + std::to_string((*this)(0, v)) + ")";
    for (int u = 0; u < kRows; ++u)
      if ((*this)(u, 0) != 0)
        return "column 0 must be all zeros (row " + std::to_string(u) +
               " holds " + std::to_string((*this)(u, 0)) + ")";
    return {};
  }

  /// Entry-wise reduction modulo p (used by `girth --reduce`).
  ShiftMatrix reduced(std::int64_t p) const {
    IntRows out = to_rows();
    for (auto &row : out)
      for (auto &x : row) x %= p;
    return ShiftMatrix(out);
  }

  friend bool operator==(const ShiftMatrix &, const ShiftMatrix &) = default;
  friend auto operator<=>(const ShiftMatrix &a, const ShiftMatrix &b) {
    if (a.cols_ != b.cols_) return a.cols_ <=> b.cols_;
    return a.entries_ <=> b.entries_;
  }

 private:
  int cols_ = 0;
  std::vector<std::int64_t> entries_;  // row-major
};

/// The four row/difference maxima the length bounds are built from.
struct BoundStats {
  std::int64_t A = 0;  // max of row 1
  std::int64_t B = 0;  // max of row 2
  std::int64_t C = 0;  // max of row 1 - row 2
  std::int64_t D = 0;  // max of row 2 - row 1

  friend bool operator==(const BoundStats &, const BoundStats &) = default;
};

inline void require_canonical(const ShiftMatrix &s) {
  std::string why = s.canonical_violation();
  if (!why.empty()) throw Error("shift matrix is not canonical: " + why);
}

/// Maxima over every column, column 0 included. Requires canonical input,
/// which makes C and D nonnegative.
inline BoundStats stats(const ShiftMatrix &s) {
  require_canonical(s);
  BoundStats out;
  for (int j = 0; j < s.cols(); ++j) {
    out.A = std::max(out.A, s(1, j));
    out.B = std::max(out.B, s(2, j));
    out.C = std::max(out.C, s(1, j) - s(2, j));
    out.D = std::max(out.D, s(2, j) - s(1, j));
  }
  return out;
}

/// Brings an arbitrary integer matrix to the form with zero row 0 and zero
/// column 0: each column is offset by its row-0 entry, then each row by its
/// column-0 entry. Closed-chain sums telescope, so the cycle structure is the
/// same as the input's at every modulus. A negative result is rejected since
/// no modulus-independent nonnegative representative exists.
inline ShiftMatrix canonicalize(IntRows rows) {
  if (rows.size() != static_cast<std::size_t>(kRows))
    throw Error("shift matrix must have exactly 3 rows, got " +
                std::to_string(rows.size()));
  for (const auto &row : rows)
    if (row.size() != rows[0].size())
      throw Error("ragged shift matrix");
  if (rows[0].size() < 2) throw Error("shift matrix needs at least 2 columns");
  const std::size_t cols = rows[0].size();
  for (std::size_t v = 0; v < cols; ++v) {
    std::int64_t top = rows[0][v];
    for (auto &row : rows) row[v] -= top;
  }
  for (auto &row : rows) {
    std::int64_t first = row[0];
    for (auto &x : row) x -= first;
  }
  for (std::size_t u = 0; u < rows.size(); ++u)
    for (std::size_t v = 0; v < cols; ++v)
      if (rows[u][v] < 0)
        throw Error(
            "canonical form has negative entry " + std::to_string(rows[u][v]) +
            " at row " + std::to_string(u) + ", column " + std::to_string(v) +
            "; supply a nonnegative representative of the matrix");
  return ShiftMatrix(rows);
}

inline ShiftMatrix canonicalize(const ShiftMatrix &s) {
  return canonicalize(s.to_rows());
}

/// Pairs (a, b), a < b, of identical columns. Such pairs close a 4-cycle at
/// every circulant size.
inline std::vector<std::pair<int, int>> duplicate_columns(const ShiftMatrix &s) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < s.cols(); ++a)
    for (int b = a + 1; b < s.cols(); ++b)
      if (s(0, a) == s(0, b) && s(1, a) == s(1, b) && s(2, a) == s(2, b))
        out.emplace_back(a, b);
  return out;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const char *ws = " \t\r\n\v\f";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::int64_t parse_nonnegative(std::string_view token, int line_no) {
  if (!token.empty() && token[0] == '-')
    throw Error("line " + std::to_string(line_no) + ": negative entry '" +
                std::string(token) + "'");
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec == std::errc::result_out_of_range)
    throw Error("line " + std::to_string(line_no) + ": entry '" +
                std::string(token) + "' is too large");
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw Error("line " + std::to_string(line_no) + ": '" + std::string(token) +
                "' is not a nonnegative integer");
  return value;
}

}  // namespace detail

/// Reads the shift-matrix text format: '#' lines are comments, blank lines
/// are ignored, exactly three data lines of whitespace-separated decimal
/// nonnegative integers with equal counts. Entries are kept as written.
inline ShiftMatrix parse_shift_matrix(std::string_view text) {
  IntRows rows;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line[0] == '#') continue;
    line = detail::trim(line);
    if (line.empty()) continue;
    std::vector<std::int64_t> row;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      if (j > i) row.push_back(detail::parse_nonnegative(line.substr(i, j - i), line_no));
      i = j;
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() != static_cast<std::size_t>(kRows))
    throw Error("expected exactly 3 data lines, found " + std::to_string(rows.size()));
  return ShiftMatrix(rows);
}

/// Single spaces between entries, newline after every row.
inline std::string serialize(const ShiftMatrix &s) {
  std::string out;
  for (int u = 0; u < s.rows(); ++u) {
    for (int v = 0; v < s.cols(); ++v) {
      if (v > 0) out += ' ';
      out += std::to_string(s(u, v));
    }
    out += '\n';
  }
  return out;
}

}  // namespace qcgirth

#endif  // QCGIRTH_SHIFT_MATRIX_HPP
