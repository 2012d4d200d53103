#ifndef QCGIRTH_THEOREM_VERIFIER_HPP
#define QCGIRTH_THEOREM_VERIFIER_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qcgirth/bounds.hpp"
#include "qcgirth/cycle_engine.hpp"
#include "qcgirth/error.hpp"
#include "qcgirth/expansion.hpp"
#include "qcgirth/shift_matrix.hpp"

namespace qcgirth {

/// One of the explicit short-cycle constructions at P = P'. Each closes
/// because its integer sum equals the T term that attains P'.
struct BoundTemplate {
  std::string name;
  int term = 0;  // 1..6, the T term realised by the chain
  Chain chain;
};

namespace detail {

inline std::vector<int> argmax_set(const ShiftMatrix &s, std::int64_t (*f)(const ShiftMatrix &, int)) {
  std::int64_t best = f(s, 0);
  for (int j = 1; j < s.cols(); ++j) best = std::max(best, f(s, j));
  std::vector<int> out;
  for (int j = 0; j < s.cols(); ++j)
    if (f(s, j) == best) out.push_back(j);
  return out;
}

struct TemplateShape {
  const char *name;
  int term;
  int half;
  std::array<int, 5> rows;
  // Column slots: 0 is column 0, 'r' argmax row 1, 's' argmax row 2,
  // 't' argmax row1-row2, 'k' argmax row2-row1.
  std::array<char, 5> cols;
};

// Rows 1 and 2 swap roles between T1/T2, T3/T4 and T5/T6 (A<->B, C<->D,
// r<->s, k<->t).
inline constexpr TemplateShape kTemplateShapes[] = {
    {"T1 8-cycle 2A", 1, 4, {0, 1, 0, 1, 0}, {'0', 'r', '0', 'r', '0'}},
    {"T1 10-cycle A+D+A", 1, 5, {0, 1, 0, 2, 1}, {'0', 'r', '0', 'k', 'r'}},
    {"T2 8-cycle 2B", 2, 4, {0, 2, 0, 2, 0}, {'0', 's', '0', 's', '0'}},
    {"T2 10-cycle B+C+B", 2, 5, {0, 2, 0, 1, 2}, {'0', 's', '0', 't', 's'}},
    {"T3 10-cycle D+C+D+A", 3, 5, {0, 2, 1, 2, 1}, {'0', 'k', 't', 'k', 'r'}},
    {"T4 10-cycle C+D+C+B", 4, 5, {0, 1, 2, 1, 2}, {'0', 't', 'k', 't', 's'}},
    {"T5 8-cycle 2B", 5, 4, {0, 2, 0, 2, 0}, {'0', 's', '0', 's', '0'}},
    {"T5 10-cycle B+D+A", 5, 5, {0, 2, 0, 2, 1}, {'0', 's', '0', 'k', 'r'}},
    {"T6 8-cycle 2A", 6, 4, {0, 1, 0, 1, 0}, {'0', 'r', '0', 'r', '0'}},
    {"T6 10-cycle A+C+B", 6, 5, {0, 1, 0, 1, 2}, {'0', 'r', '0', 't', 's'}},
};

}  // namespace detail

/// Every construction that instantiates to a valid chain whose integer sum
/// is exactly P', over all tie-breaking choices of the argmax columns. At
/// most one instantiation is kept per shape.
inline std::vector<BoundTemplate> bound_templates(const ShiftMatrix &s) {
  const TightBound bound = tight_bound(s);
  const std::vector<int> r_set = detail::argmax_set(s, [](const ShiftMatrix &m, int j) { return m(1, j); });
  const std::vector<int> s_set = detail::argmax_set(s, [](const ShiftMatrix &m, int j) { return m(2, j); });
  const std::vector<int> t_set =
      detail::argmax_set(s, [](const ShiftMatrix &m, int j) { return m(1, j) - m(2, j); });
  const std::vector<int> k_set =
      detail::argmax_set(s, [](const ShiftMatrix &m, int j) { return m(2, j) - m(1, j); });

  std::vector<BoundTemplate> out;
  for (const auto &shape : detail::kTemplateShapes) {
    if (bound.T[shape.term - 1] != bound.p_prime) continue;
    bool done = false;
    for (int r : r_set) {
      for (int sc : s_set) {
        for (int t : t_set) {
          for (int k : k_set) {
            if (done) break;
            Chain c;
            c.half = shape.half;
            for (int i = 0; i < shape.half; ++i) {
              c.rows[i] = shape.rows[i];
              switch (shape.cols[i]) {
                case 'r': c.cols[i] = r; break;
                case 's': c.cols[i] = sc; break;
                case 't': c.cols[i] = t; break;
                case 'k': c.cols[i] = k; break;
                default: c.cols[i] = 0; break;
              }
            }
            if (!c.is_valid(s.cols()) || chain_sum(s, c) != bound.p_prime) continue;
            out.push_back({shape.name, shape.term, c});
            done = true;
          }
        }
      }
    }
  }
  return out;
}

/// Evidence that the lift of size P' has girth below 12.
struct TightnessResult {
  CycleWitness witness;                       // shortest cycle at P'
  std::optional<CycleWitness> template_witness;  // explicit construction
  std::string template_name;                  // empty when none applied
};

/// Finds the shortest cycle at P' and the explicit construction matching
/// the attaining T term. Requires P' >= 2.
inline TightnessResult check_tightness(const ShiftMatrix &s) {
  const TightBound bound = tight_bound(s);
  if (bound.p_prime < 2)
    throw Error("P' = " + std::to_string(bound.p_prime) +
                " is below 2; the matrix is degenerate and not certifiable");
  TightnessResult out;
  auto shortest = find_shortest_cycle(s, bound.p_prime);
  if (!shortest)
    throw Error("no cycle of length <= 12 at P' = " + std::to_string(bound.p_prime));
  out.witness = *shortest;
  auto templates = bound_templates(s);
  if (!templates.empty()) {
    const auto &t = templates.front();
    out.template_name = t.name;
    out.template_witness = CycleWitness{t.chain, chain_sum(s, t.chain), bound.p_prime};
  }
  return out;
}

enum class CertificationStatus { pass, fail, non_certifiable };

inline const char *to_string(CertificationStatus s) {
  switch (s) {
    case CertificationStatus::pass: return "pass";
    case CertificationStatus::fail: return "fail";
    case CertificationStatus::non_certifiable: return "non_certifiable";
  }
  return "?";
}

struct CertifyOptions {
  /// Number of moduli in the verified range re-checked by the BFS oracle.
  int oracle_spot_checks = 0;
  std::uint64_t seed = 1;
};

struct CertificationReport {
  int cols = 0;
  TightBound bound;
  std::optional<TightnessResult> tightness;
  std::optional<std::int64_t> q_exists;  // smallest valid size with girth 12
  std::int64_t range_from = 0;
  std::int64_t range_to = -1;  // empty when range_to < range_from
  std::int64_t moduli_checked = 0;
  std::vector<std::int64_t> oracle_checked;
  std::optional<Chain> zero_chain;  // a chain with integer sum 0, if any
  std::vector<std::string> failures;
  CertificationStatus status = CertificationStatus::fail;

  bool passed() const { return status == CertificationStatus::pass; }
};

inline std::string chain_text(const Chain &c) {
  std::string rows, cols;
  for (int i = 0; i < c.half; ++i) {
    if (i > 0) {
      rows += ' ';
      cols += ' ';
    }
    rows += std::to_string(c.rows[i]);
    cols += std::to_string(c.cols[i]);
  }
  return "rows [" + rows + "] cols [" + cols + "]";
}

/// Certifies the consecutive-length family of S: tightness at P', and
/// girth 12 at every P in (P', p_max] by spectrum divisibility.
inline CertificationReport certify(const ShiftMatrix &s, std::int64_t p_max,
                                   const CertifyOptions &opts = {}) {
  CertificationReport rep;
  rep.cols = s.cols();
  rep.bound = tight_bound(s);
  const std::int64_t pp = rep.bound.p_prime;
  if (p_max <= pp)
    throw Error("p_max = " + std::to_string(p_max) + " must exceed P' = " + std::to_string(pp));

  const CycleSpectrum spectrum = cycle_spectrum(s, kMaxGirth);
  const Girth twelve = Girth::of(12);

  if (pp >= 2) {
    rep.tightness = check_tightness(s);
    const auto &w = rep.tightness->witness;
    if (w.modulus != pp || w.length() >= 12 || !w.validates(s))
      rep.failures.push_back("tightness witness does not re-validate");
    if (!rep.tightness->template_witness)
      rep.failures.push_back("no explicit construction closes at P'");
    else if (rep.tightness->template_witness->length() < w.length())
      rep.failures.push_back("explicit construction shorter than the shortest cycle found");
  } else {
    rep.failures.push_back("P' = " + std::to_string(pp) + " < 2: tightness cannot be exhibited");
  }

  for (int k = 2; k < kMaxHalf; ++k) {
    if (!spectrum.has_zero(k)) continue;
    rep.zero_chain = find_zero_chain(s, k);
    rep.failures.push_back("chain of length " + std::to_string(2 * k) +
                           " has integer sum 0 (cycle at every size): " + chain_text(*rep.zero_chain));
    rep.status = CertificationStatus::non_certifiable;
    return rep;
  }

  for (std::int64_t q = std::max<std::int64_t>(2, s.max_entry() + 1); q <= p_max; ++q) {
    if (spectrum.girth_at(q) == twelve) {
      rep.q_exists = q;
      break;
    }
  }

  rep.range_from = pp + 1;
  rep.range_to = p_max;
  for (std::int64_t p = rep.range_from; p <= rep.range_to; ++p) {
    ++rep.moduli_checked;
    Girth g = spectrum.girth_at(p);
    if (g != twelve) rep.failures.push_back("P=" + std::to_string(p) + ": girth " + g.to_string());
  }

  if (opts.oracle_spot_checks > 0) {
    std::mt19937_64 rng(opts.seed);
    const std::uint64_t span = static_cast<std::uint64_t>(rep.range_to - rep.range_from + 1);
    for (int i = 0; i < opts.oracle_spot_checks; ++i) {
      std::int64_t p = rep.range_from + static_cast<std::int64_t>(rng() % span);
      rep.oracle_checked.push_back(p);
      Girth g = tanner_girth(expand(s, p), kMaxGirth);
      if (g != twelve)
        rep.failures.push_back("P=" + std::to_string(p) + ": BFS oracle girth " + g.to_string());
    }
  }

  rep.status = rep.failures.empty() ? CertificationStatus::pass : CertificationStatus::fail;
  return rep;
}

/// key: value certificate with BOUND, TIGHTNESS, RANGE and RESULT sections.
inline std::string format_certificate(const CertificationReport &rep) {
  std::string out;
  auto kv = [&out](const std::string &k, const std::string &v) { out += k + ": " + v + '\n'; };
  const auto &b = rep.bound;
  out += "[BOUND]\n";
  kv("L", std::to_string(rep.cols));
  kv("A", std::to_string(b.stats.A));
  kv("B", std::to_string(b.stats.B));
  kv("C", std::to_string(b.stats.C));
  kv("D", std::to_string(b.stats.D));
  for (int i = 0; i < 6; ++i) kv("T" + std::to_string(i + 1), std::to_string(b.T[i]));
  kv("P_prime", std::to_string(b.p_prime));
  kv("girth10_bound", std::to_string(b.girth10_bound));
  kv("first_certified_P", std::to_string(b.first_certified_p()));
  kv("start_length", std::to_string(b.start_length(rep.cols)));

  out += "[TIGHTNESS]\n";
  if (rep.tightness) {
    const auto &w = rep.tightness->witness;
    kv("modulus", std::to_string(w.modulus));
    kv("cycle_length", std::to_string(w.length()));
    kv("chain", chain_text(w.chain));
    kv("integer_sum", std::to_string(w.integer_sum));
    if (rep.tightness->template_witness) {
      kv("construction", rep.tightness->template_name);
      kv("construction_chain", chain_text(rep.tightness->template_witness->chain));
      kv("construction_sum", std::to_string(rep.tightness->template_witness->integer_sum));
    } else {
      kv("construction", "none");
    }
  } else {
    kv("modulus", "none");
  }

  out += "[RANGE]\n";
  kv("q_exists", rep.q_exists ? std::to_string(*rep.q_exists) : std::string("none"));
  if (rep.range_to >= rep.range_from) {
    kv("from", std::to_string(rep.range_from));
    kv("to", std::to_string(rep.range_to));
  } else {
    kv("from", "none");
    kv("to", "none");
  }
  kv("moduli_checked", std::to_string(rep.moduli_checked));
  std::string oracle;
  for (std::size_t i = 0; i < rep.oracle_checked.size(); ++i)
    oracle += (i ? " " : "") + std::to_string(rep.oracle_checked[i]);
  kv("oracle_checked", oracle.empty() ? std::string("none") : oracle);

  out += "[RESULT]\n";
  kv("failures", std::to_string(rep.failures.size()));
  for (const auto &f : rep.failures) kv("failure", f);
  kv("status", to_string(rep.status));
  return out;
}

}  // namespace qcgirth

#endif  // QCGIRTH_THEOREM_VERIFIER_HPP
