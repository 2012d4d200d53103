#ifndef QCGIRTH_EXPANSION_HPP
#define QCGIRTH_EXPANSION_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "qcgirth/cycle_engine.hpp"
#include "qcgirth/error.hpp"
#include "qcgirth/parallel.hpp"
#include "qcgirth/shift_matrix.hpp"

namespace qcgirth {

/// Sparse binary matrix stored column-major: for every column the sorted
/// row indices holding a one.
struct BinaryParityMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<int>> col_rows;

  /// Per-row sorted column indices (the transpose view).
  std::vector<std::vector<int>> row_cols() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(rows));
    for (int c = 0; c < cols; ++c)
      for (int r : col_rows[c]) out[r].push_back(c);
    return out;
  }

  friend bool operator==(const BinaryParityMatrix &, const BinaryParityMatrix &) = default;
};

/// Lifts S to the 3P x LP matrix of circulant permutation blocks: block
/// (u, v), row r has its one at column (r + S(u, v)) mod P.
inline BinaryParityMatrix expand(const ShiftMatrix &s, std::int64_t p) {
  require_lift(s, p);
  if (p > (std::int64_t{1} << 24) || p * s.cols() > (std::int64_t{1} << 30))
    throw Error("circulant size " + std::to_string(p) + " is too large to expand");
  const int P = static_cast<int>(p);
  BinaryParityMatrix h;
  h.rows = kRows * P;
  h.cols = s.cols() * P;
  h.col_rows.assign(static_cast<std::size_t>(h.cols), {});
  for (int v = 0; v < s.cols(); ++v) {
    for (int u = 0; u < kRows; ++u) {
      const int shift = static_cast<int>(s(u, v));
      for (int r = 0; r < P; ++r) h.col_rows[v * P + (r + shift) % P].push_back(u * P + r);
    }
  }
  for (auto &col : h.col_rows) std::sort(col.begin(), col.end());
  return h;
}

/// Exact girth of the Tanner graph of any binary matrix, reported only up
/// to `cap`. A breadth-first search runs from every variable node; a
/// non-tree edge between depths a and b closes a walk of length a + b + 1,
/// and the minimum over all sources is the girth.
inline Girth tanner_girth(const BinaryParityMatrix &h, int cap = kMaxGirth) {
  if (cap < 4 || cap % 2 != 0) throw Error("girth cap must be an even number >= 4");
  const int n = h.cols;
  const int total = h.cols + h.rows;
  // Nodes 0..n-1 are variables, n..total-1 are checks.
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(total));
  for (int c = 0; c < n; ++c) {
    for (int r : h.col_rows[c]) {
      adj[c].push_back(n + r);
      adj[n + r].push_back(c);
    }
  }

  std::atomic<int> best{cap + 1};
  auto search_from = [&](int source, std::vector<int> &dist, std::vector<int> &parent,
                         std::vector<int> &queue, std::vector<int> &touched) {
    int local_best = best.load(std::memory_order_relaxed);
    queue.clear();
    touched.clear();
    dist[source] = 0;
    parent[source] = -1;
    touched.push_back(source);
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int x = queue[head];
      if (2 * dist[x] >= local_best) break;
      for (int y : adj[x]) {
        if (y == parent[x]) continue;
        if (dist[y] >= 0) {
          local_best = std::min(local_best, dist[x] + dist[y] + 1);
        } else {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          touched.push_back(y);
          queue.push_back(y);
        }
      }
    }
    for (int t : touched) dist[t] = -1;
    int cur = best.load(std::memory_order_relaxed);
    while (local_best < cur && !best.compare_exchange_weak(cur, local_best)) {
    }
  };

  const unsigned workers = std::min<unsigned>(thread_count(), static_cast<unsigned>(std::max(1, n / 64)));
  std::atomic<int> next{0};
  auto worker = [&] {
    std::vector<int> dist(static_cast<std::size_t>(total), -1), parent(static_cast<std::size_t>(total), -1);
    std::vector<int> queue, touched;
    for (int v = next.fetch_add(1); v < n; v = next.fetch_add(1)) {
      if (best.load(std::memory_order_relaxed) <= 4) break;
      search_from(v, dist, parent, queue, touched);
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
  }
  int g = best.load();
  return g <= cap ? Girth::of(g) : Girth::above_cap();
}

/// alist text: "N M", max column/row weights, column weights, row weights,
/// then 1-based row lists per column and column lists per row.
inline std::string export_alist(const BinaryParityMatrix &h) {
  auto rows = h.row_cols();
  std::size_t max_cw = 0, max_rw = 0;
  for (const auto &c : h.col_rows) max_cw = std::max(max_cw, c.size());
  for (const auto &r : rows) max_rw = std::max(max_rw, r.size());

  std::string out;
  auto emit_line = [&out](const auto &values, auto f) {
    bool first = true;
    for (const auto &x : values) {
      if (!first) out += ' ';
      first = false;
      out += std::to_string(f(x));
    }
    out += '\n';
  };
  out += std::to_string(h.cols) + ' ' + std::to_string(h.rows) + '\n';
  out += std::to_string(max_cw) + ' ' + std::to_string(max_rw) + '\n';
  emit_line(h.col_rows, [](const auto &c) { return c.size(); });
  emit_line(rows, [](const auto &r) { return r.size(); });
  for (const auto &c : h.col_rows) emit_line(c, [](int r) { return r + 1; });
  for (const auto &r : rows) emit_line(r, [](int c) { return c + 1; });
  return out;
}

/// Reads alist text. Zero entries in the index lists are treated as padding,
/// as written by some tools for irregular matrices. The row lists must agree
/// with the column lists.
inline BinaryParityMatrix parse_alist(std::string_view text) {
  std::vector<std::int64_t> tok;
  std::size_t i = 0;
  int line_no = 1;
  while (i < text.size()) {
    char ch = text[i];
    if (ch == '\n') ++line_no;
    if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\r' && text[j] != '\n') ++j;
    tok.push_back(detail::parse_nonnegative(text.substr(i, j - i), line_no));
    i = j;
  }
  std::size_t at = 0;
  auto next = [&]() -> std::int64_t {
    if (at >= tok.size()) throw Error("alist: unexpected end of input");
    return tok[at++];
  };
  BinaryParityMatrix h;
  std::int64_t n = next(), m = next();
  if (n <= 0 || m <= 0 || n > (1 << 30) || m > (1 << 30)) throw Error("alist: bad dimensions");
  h.cols = static_cast<int>(n);
  h.rows = static_cast<int>(m);
  std::int64_t max_cw = next(), max_rw = next();
  std::vector<std::int64_t> cw(n), rw(m);
  for (auto &w : cw) w = next();
  for (auto &w : rw) w = next();
  for (auto w : cw)
    if (w > max_cw) throw Error("alist: column weight exceeds declared maximum");
  for (auto w : rw)
    if (w > max_rw) throw Error("alist: row weight exceeds declared maximum");

  h.col_rows.assign(static_cast<std::size_t>(n), {});
  for (std::int64_t c = 0; c < n; ++c) {
    for (std::int64_t k = 0; k < cw[c]; ++k) {
      std::int64_t r = next();
      while (r == 0) r = next();
      if (r > m) throw Error("alist: row index out of range");
      h.col_rows[c].push_back(static_cast<int>(r - 1));
    }
    while (at < tok.size() && tok[at] == 0) ++at;
    std::sort(h.col_rows[c].begin(), h.col_rows[c].end());
  }
  std::vector<std::vector<int>> row_lists(static_cast<std::size_t>(m));
  for (std::int64_t r = 0; r < m; ++r) {
    for (std::int64_t k = 0; k < rw[r]; ++k) {
      std::int64_t c = next();
      while (c == 0) c = next();
      if (c > n) throw Error("alist: column index out of range");
      row_lists[r].push_back(static_cast<int>(c - 1));
    }
    while (at < tok.size() && tok[at] == 0) ++at;
    std::sort(row_lists[r].begin(), row_lists[r].end());
  }
  if (at != tok.size()) throw Error("alist: trailing data");
  if (row_lists != h.row_cols()) throw Error("alist: row lists disagree with column lists");
  return h;
}

/// Debug format: one line of '0'/'1' characters per row.
inline std::string export_dense(const BinaryParityMatrix &h) {
  std::string out;
  auto rows = h.row_cols();
  for (const auto &r : rows) {
    std::string line(static_cast<std::size_t>(h.cols), '0');
    for (int c : r) line[c] = '1';
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace qcgirth

#endif  // QCGIRTH_EXPANSION_HPP
