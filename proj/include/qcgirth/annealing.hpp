#ifndef QCGIRTH_ANNEALING_HPP
#define QCGIRTH_ANNEALING_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "qcgirth/bounds.hpp"
#include "qcgirth/cycle_engine.hpp"
#include "qcgirth/error.hpp"
#include "qcgirth/expansion.hpp"
#include "qcgirth/parallel.hpp"
#include "qcgirth/shift_matrix.hpp"
#include "qcgirth/theorem_verifier.hpp"

namespace qcgirth {

/// heat_bath redraws the chosen entry from all q values with probability
/// proportional to exp(-cost change / T); metropolis proposes one uniform
/// value and accepts it by the Metropolis rule.
enum class MoveKind { heat_bath, metropolis };

struct SearchConfig {
  int cols = 6;
  std::int64_t q = 393;
  std::int64_t max_iters = 200000;
  double initial_temperature = 2.0;
  double cooling_rate = 0.99998;
  std::uint64_t seed = 1;
  std::map<int, double> cost_weights{{4, 1000.0}, {6, 100.0}, {8, 10.0}, {10, 1.0}};
  bool minimize_p_prime = false;
  MoveKind move = MoveKind::heat_bath;
  bool record_trace = false;
  /// Width of the range (P', P' + margin] certified for a found matrix.
  std::int64_t certify_margin = 100;

  void validate() const {
    if (cols < 2) throw Error("search: L must be at least 2");
    if (q < 2) throw Error("search: q must be at least 2");
    if (q > kMaxEntry) throw Error("search: q is too large");
    if (max_iters <= 0) throw Error("search: max_iters must be positive");
    if (!(initial_temperature > 0)) throw Error("search: initial_temperature must be positive");
    if (!(cooling_rate > 0 && cooling_rate < 1)) throw Error("search: cooling_rate must lie in (0, 1)");
    if (certify_margin <= 0) throw Error("search: certify_margin must be positive");
    for (int len : {4, 6, 8, 10}) {
      auto it = cost_weights.find(len);
      if (it == cost_weights.end()) throw Error("search: cost_weights needs a weight for length " + std::to_string(len));
      if (!(it->second > 0)) throw Error("search: cost weights must be positive");
    }
    if (cost_weights.size() != 4) throw Error("search: cost_weights accepts lengths 4, 6, 8, 10 only");
  }
};

namespace detail {

inline bool parse_bool(std::string_view v, const std::string &key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw Error("config: '" + key + "' expects true/false, got '" + std::string(v) + "'");
}

inline double parse_real(std::string_view v, const std::string &key) {
  try {
    std::size_t used = 0;
    std::string s(v);
    double x = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception &) {
    throw Error("config: '" + key + "' expects a real number, got '" + std::string(v) + "'");
  }
}

inline std::map<int, double> parse_weights(std::string_view v) {
  std::map<int, double> out;
  std::size_t pos = 0;
  while (pos <= v.size()) {
    std::size_t comma = v.find(',', pos);
    if (comma == std::string_view::npos) comma = v.size();
    std::string_view item = trim(v.substr(pos, comma - pos));
    pos = comma + 1;
    if (item.empty()) continue;
    auto colon = item.find(':');
    if (colon == std::string_view::npos) throw Error("config: cost_weights items look like 4:1000");
    int len = static_cast<int>(parse_nonnegative(trim(item.substr(0, colon)), 0));
    out[len] = parse_real(trim(item.substr(colon + 1)), "cost_weights");
  }
  return out;
}

}  // namespace detail

/// Reads "key = value" lines ('#' comments). Missing keys keep defaults.
inline SearchConfig parse_search_config(std::string_view text) {
  SearchConfig cfg;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = detail::trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error("config line " + std::to_string(line_no) + ": expected key = value");
    std::string key(detail::trim(line.substr(0, eq)));
    std::string_view value = detail::trim(line.substr(eq + 1));
    if (key == "L") cfg.cols = static_cast<int>(detail::parse_nonnegative(value, line_no));
    else if (key == "q") cfg.q = detail::parse_nonnegative(value, line_no);
    else if (key == "max_iters") cfg.max_iters = detail::parse_nonnegative(value, line_no);
    else if (key == "initial_temperature") cfg.initial_temperature = detail::parse_real(value, key);
    else if (key == "cooling_rate") cfg.cooling_rate = detail::parse_real(value, key);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(detail::parse_nonnegative(value, line_no));
    else if (key == "cost_weights") cfg.cost_weights = detail::parse_weights(value);
    else if (key == "minimize_p_prime") cfg.minimize_p_prime = detail::parse_bool(value, key);
    else if (key == "move") {
      if (value == "heat_bath") cfg.move = MoveKind::heat_bath;
      else if (value == "metropolis") cfg.move = MoveKind::metropolis;
      else throw Error("config: 'move' expects heat_bath or metropolis");
    }
    else if (key == "record_trace") cfg.record_trace = detail::parse_bool(value, key);
    else if (key == "certify_margin") cfg.certify_margin = detail::parse_nonnegative(value, line_no);
    else throw Error("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

/// Number of rooted, oriented chains (rotations and reversals counted
/// separately) whose sum vanishes modulo q, per half-length 2..5. The
/// weighted cost divides by 2k so that a plain cycle counts once.
struct ShortCycleCounts {
  std::array<std::int64_t, kMaxHalf> per_half{};

  double weighted(const std::map<int, double> &weights) const {
    double total = 0;
    for (int k = 2; k < kMaxHalf; ++k) {
      auto it = weights.find(2 * k);
      if (it != weights.end()) total += it->second * static_cast<double>(per_half[k]) / (2 * k);
    }
    return total;
  }
  bool all_zero() const {
    return std::all_of(per_half.begin(), per_half.end(), [](std::int64_t x) { return x == 0; });
  }
};

inline ShortCycleCounts short_cycle_counts(ShiftView view, std::int64_t q) {
  ShortCycleCounts out;
  for (int k = 2; k < kMaxHalf; ++k) {
    std::int64_t n = 0;
    for_each_chain(view, k, [&](const Chain &, std::int64_t sum) { n += (sum % q == 0); });
    out.per_half[k] = n;
  }
  return out;
}

/// For one free entry (row u, column c) and every candidate value x in
/// [0, q): how many closing chains of each half-length use that entry when
/// it holds x. Values are scaled by kScale to stay integral.
///
/// Only chains starting at column c with row u entering or leaving there are
/// walked. A chain using the entry at m of its positions represents k/m
/// rotated chains, so the scaled totals are exact. Along a chain the sum is
/// s0 + a * x with |a| <= 2 (c cannot be visited at adjacent positions), so
/// each chain closes for at most two values of x.
class EntryClosures {
 public:
  static constexpr std::int64_t kScale = 60;  // multiple of every k/m, m <= k <= 5

  explicit EntryClosures(std::int64_t q) : q_(q) {
    for (auto &h : hist_) h.assign(static_cast<std::size_t>(q), 0);
  }

  std::int64_t q() const { return q_; }

  void compute(ShiftView view, int u, int c) {
    for (auto &h : hist_) std::fill(h.begin(), h.end(), 0);
    view_ = view;
    u_ = u;
    c_ = c;
    current_ = view(u, c);
    for (int k = 2; k < kMaxHalf; ++k) {
      half_ = k;
      for (int r0 = 0; r0 < kRows; ++r0) {
        for (int r1 = 0; r1 < kRows; ++r1) {
          if (r1 == r0 || (r0 != u && r1 != u)) continue;
          first_row_ = r0;
          const int a = (r0 == u) - (r1 == u);
          walk(1, r1, c, view(r0, c) - view(r1, c), a, 1);
        }
      }
    }
  }

  /// Scaled number of closing k-chains through the entry when it holds x.
  std::int64_t scaled(int half, std::int64_t x) const { return hist_[half][static_cast<std::size_t>(x)]; }

  /// Cost contributed by the entry's chains when it holds x; `unit[k]` is
  /// the weight of one closing chain of half-length k (see unit_costs()).
  double cost(std::int64_t x, const std::array<double, kMaxHalf> &unit) const {
    double total = 0;
    for (int k = 2; k < kMaxHalf; ++k) {
      std::int64_t n = hist_[k][static_cast<std::size_t>(x)];
      if (n != 0) total += unit[k] * static_cast<double>(n);
    }
    return total;
  }

  static std::array<double, kMaxHalf> unit_costs(const std::map<int, double> &weights) {
    std::array<double, kMaxHalf> unit{};
    for (int k = 2; k < kMaxHalf; ++k) unit[k] = weights.at(2 * k) / static_cast<double>(kScale * 2 * k);
    return unit;
  }

  bool closes_none(std::int64_t x) const {
    for (int k = 2; k < kMaxHalf; ++k)
      if (hist_[k][static_cast<std::size_t>(x)] != 0) return false;
    return true;
  }

  /// counts after moving the entry from `from` to `to`.
  ShortCycleCounts moved(const ShortCycleCounts &counts, std::int64_t from, std::int64_t to) const {
    ShortCycleCounts out = counts;
    for (int k = 2; k < kMaxHalf; ++k)
      out.per_half[k] += (scaled(k, to) - scaled(k, from)) / kScale;
    return out;
  }

 private:
  // Position i is entered on row `in`; `prev` is the column at i - 1.
  void walk(int i, int in, int prev, std::int64_t sum, int a, int m) {
    const bool last = i == half_ - 1;
    for (int l = 0; l < view_.cols; ++l) {
      if (l == prev || (last && l == c_)) continue;
      const std::int64_t enter = sum + view_(in, l);
      if (last) {
        if (in == first_row_) continue;
        const int out = first_row_;
        if (l == c_) {
          record(enter - view_(out, l), a + (in == u_) - (out == u_), m + (in == u_ || out == u_));
        } else {
          record(enter - view_(out, l), a, m);
        }
        continue;
      }
      for (int out = 0; out < kRows; ++out) {
        if (out == in || (i + 1 == half_ - 1 && out == first_row_)) continue;
        if (l == c_)
          walk(i + 1, out, l, enter - view_(out, l), a + (in == u_) - (out == u_), m + (in == u_ || out == u_));
        else
          walk(i + 1, out, l, enter - view_(out, l), a, m);
      }
    }
  }

  // Chain sum is s0 + a * x; with |a| <= 2 it closes for at most two x.
  void record(std::int64_t sum, int a, int m) {
    if (a == 0) return;  // independent of the entry
    auto &h = hist_[half_];
    const std::int64_t weight = kScale * half_ / m;
    const std::int64_t s0 = sum - a * current_;
    std::int64_t target = (-s0) % q_;  // a * x == target (mod q)
    if (target < 0) target += q_;
    if (a < 0) {
      a = -a;
      target = (q_ - target) % q_;
    }
    if (a == 1) {
      h[static_cast<std::size_t>(target)] += weight;
    } else if (q_ % 2 == 1) {
      h[static_cast<std::size_t>(target % 2 == 0 ? target / 2 : (target + q_) / 2)] += weight;
    } else if (target % 2 == 0) {
      h[static_cast<std::size_t>(target / 2)] += weight;
      h[static_cast<std::size_t>(target / 2 + q_ / 2)] += weight;
    }
  }

  std::int64_t q_;
  std::array<std::vector<std::int64_t>, kMaxHalf> hist_{};
  ShiftView view_;
  int u_ = 0, c_ = 0, half_ = 0, first_row_ = 0;
  std::int64_t current_ = 0;
};

/// Annealing objective: weighted count of chains closing a 4-, 6-, 8- or
/// 10-cycle at modulus q. Zero iff the lift of size q has girth 12.
inline double cost(const ShiftMatrix &s, std::int64_t q, const std::map<int, double> &weights) {
  require_lift(s, q);
  std::vector<std::int64_t> buffer;
  return short_cycle_counts(detail::view_of(s, buffer), q).weighted(weights);
}

struct SearchResult {
  ShiftMatrix matrix{IntRows{{0, 0}, {0, 0}, {0, 0}}};
  bool success = false;
  std::int64_t q = 0;
  std::int64_t p_prime = 0;
  double final_cost = 0;
  std::int64_t iterations_used = 0;
  std::uint64_t seed = 0;
  std::vector<double> trace;
  std::optional<CertificationReport> certificate;
};

namespace detail {

class SearchRng {
 public:
  explicit SearchRng(std::uint64_t seed) : engine_(seed) {}
  /// Unbiased integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % n;
  }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

inline std::int64_t p_prime_of(const std::vector<std::int64_t> &e, int cols) {
  BoundStats st;
  for (int j = 0; j < cols; ++j) {
    std::int64_t a = e[cols + j], b = e[2 * cols + j];
    st.A = std::max(st.A, a);
    st.B = std::max(st.B, b);
    st.C = std::max(st.C, a - b);
    st.D = std::max(st.D, b - a);
  }
  return tight_bound(st).p_prime;
}

inline ShiftMatrix to_matrix(const std::vector<std::int64_t> &e, int cols) {
  IntRows rows(kRows, std::vector<std::int64_t>(cols));
  for (int u = 0; u < kRows; ++u)
    for (int v = 0; v < cols; ++v) rows[u][v] = e[static_cast<std::size_t>(u) * cols + v];
  return ShiftMatrix(rows);
}

}  // namespace detail

/// Simulated annealing over canonical 3 x L matrices with free entries
/// (rows 1-2, columns 1..L-1) in [0, q). Each step picks one free entry and
/// redraws it (see MoveKind) at temperature T0 * rate^i. Once the cost is
/// zero the run stops, or, with minimize_p_prime, keeps annealing P' over
/// values that keep the cost at zero. Deterministic per seed; `cancel` is
/// polled so parallel runs can be abandoned.
inline SearchResult sa_search(const SearchConfig &cfg, const std::atomic<bool> *cancel = nullptr) {
  cfg.validate();
  const int L = cfg.cols;
  const std::int64_t q = cfg.q;
  detail::SearchRng rng(cfg.seed);
  std::vector<std::int64_t> e(static_cast<std::size_t>(kRows) * L, 0);
  for (int u = 1; u < kRows; ++u)
    for (int v = 1; v < L; ++v) e[u * L + v] = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(q)));
  const ShiftView view{e, L};

  ShortCycleCounts counts = short_cycle_counts(view, q);
  double cur_cost = counts.weighted(cfg.cost_weights);
  std::int64_t cur_pp = detail::p_prime_of(e, L);

  std::vector<std::int64_t> best = e;
  double best_cost = cur_cost;
  std::int64_t best_pp = cur_pp;
  auto consider_best = [&] {
    if (cur_cost < best_cost || (cur_cost == best_cost && (cur_pp < best_pp || (cur_pp == best_pp && e < best)))) {
      best = e;
      best_cost = cur_cost;
      best_pp = cur_pp;
    }
  };

  SearchResult res;
  res.seed = cfg.seed;
  res.q = q;
  EntryClosures closures(q);
  const auto unit = EntryClosures::unit_costs(cfg.cost_weights);
  std::vector<double> energy(static_cast<std::size_t>(q));
  const std::uint64_t free_entries = static_cast<std::uint64_t>(2 * (L - 1));
  double temperature = cfg.initial_temperature;
  std::int64_t it = 0;
  for (; it < cfg.max_iters; ++it, temperature *= cfg.cooling_rate) {
    if (cfg.record_trace) res.trace.push_back(cur_cost);
    const bool polishing = counts.all_zero();
    if (polishing && !cfg.minimize_p_prime) break;
    if (cancel != nullptr && (it & 255) == 0 && cancel->load(std::memory_order_relaxed)) break;

    const std::uint64_t slot = rng.below(free_entries);
    const int u = 1 + static_cast<int>(slot / (L - 1));
    const int c = 1 + static_cast<int>(slot % (L - 1));
    const std::size_t at = static_cast<std::size_t>(u) * L + c;
    const std::int64_t old_value = e[at];
    closures.compute(view, u, c);
    const double base = closures.cost(old_value, unit);

    // energy[x]: objective relative to keeping the old value; infinite for
    // values that are not allowed.
    auto energy_of = [&](std::int64_t x) -> double {
      if (!polishing) return closures.cost(x, unit) - base;
      if (!closures.closes_none(x)) return std::numeric_limits<double>::infinity();
      e[at] = x;
      double d = static_cast<double>(detail::p_prime_of(e, L) - cur_pp);
      e[at] = old_value;
      return d;
    };

    std::int64_t value = old_value;
    if (cfg.move == MoveKind::metropolis) {
      std::int64_t proposal = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(q - 1)));
      if (proposal >= old_value) ++proposal;
      const double delta = energy_of(proposal);
      bool accept = delta <= 0;
      if (!accept && std::isfinite(delta) && temperature > 0) accept = rng.unit() < std::exp(-delta / temperature);
      if (accept) value = proposal;
    } else {
      double lowest = std::numeric_limits<double>::infinity();
      for (std::int64_t x = 0; x < q; ++x) {
        energy[x] = energy_of(x);
        lowest = std::min(lowest, energy[x]);
      }
      double total = 0;
      for (std::int64_t x = 0; x < q; ++x) {
        double w = 0;
        if (energy[x] == lowest) w = 1;
        else if (std::isfinite(energy[x]) && energy[x] - lowest < 700 * temperature)
          w = std::exp(-(energy[x] - lowest) / temperature);
        energy[x] = w;
        total += w;
      }
      double pick = rng.unit() * total;
      for (std::int64_t x = 0; x < q; ++x) {
        if (energy[x] <= 0) continue;
        value = x;
        pick -= energy[x];
        if (pick < 0) break;
      }
    }

    if (value != old_value) {
      counts = closures.moved(counts, old_value, value);
      e[at] = value;
      cur_cost = counts.weighted(cfg.cost_weights);
      cur_pp = detail::p_prime_of(e, L);
      consider_best();
    }
  }

  res.iterations_used = it;
  res.matrix = detail::to_matrix(best, L);
  res.final_cost = best_cost;
  res.p_prime = best_pp;
  res.success = best_cost == 0;  // exact: counts are integers, weights positive
  if (res.success) {
    // Independent re-verification before anything is reported.
    if (qc_girth(res.matrix, q) != Girth::of(12) || tanner_girth(expand(res.matrix, q), kMaxGirth) != Girth::of(12))
      throw std::logic_error("annealer reported a zero-cost matrix without girth 12");
    res.certificate = certify(res.matrix, res.p_prime + cfg.certify_margin);
  }
  return res;
}

/// Runs seeds seed, seed+1, ..., seed+runs-1 on up to `threads` workers.
/// Reports the lowest successful seed; without success, the best result by
/// (cost, P', matrix, seed). Independent of thread count and timing.
inline SearchResult sa_search_runs(const SearchConfig &cfg, int runs, unsigned threads = 0) {
  cfg.validate();
  if (runs < 1) throw Error("search: runs must be at least 1");
  if (threads == 0) threads = thread_count();
  threads = std::min<unsigned>(threads, static_cast<unsigned>(runs));

  std::vector<std::optional<SearchResult>> results(static_cast<std::size_t>(runs));
  std::vector<std::atomic<bool>> cancel(static_cast<std::size_t>(runs));
  std::atomic<int> lowest_success{runs};
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    for (int i = next.fetch_add(1); i < runs; i = next.fetch_add(1)) {
      if (i > lowest_success.load()) continue;
      SearchConfig c = cfg;
      c.seed = cfg.seed + static_cast<std::uint64_t>(i);
      try {
        SearchResult r = sa_search(c, &cancel[i]);
        bool aborted = cancel[i].load();
        if (r.success && !aborted) {
          int cur = lowest_success.load();
          while (i < cur && !lowest_success.compare_exchange_weak(cur, i)) {
          }
          for (int j = i + 1; j < runs; ++j) cancel[j].store(true);
        }
        if (!aborted) results[i] = std::move(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  int win = lowest_success.load();
  if (win < runs) return std::move(*results[win]);
  std::optional<SearchResult> best;
  for (auto &r : results) {
    if (!r) continue;
    if (!best || r->final_cost < best->final_cost ||
        (r->final_cost == best->final_cost &&
         (r->p_prime < best->p_prime || (r->p_prime == best->p_prime && r->matrix < best->matrix))))
      best = std::move(r);
  }
  return std::move(*best);
}

}  // namespace qcgirth

#endif  // QCGIRTH_ANNEALING_HPP
