#ifndef QCGIRTH_TOOLS_CLI_HPP
#define QCGIRTH_TOOLS_CLI_HPP

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qcgirth/qcgirth.hpp"

namespace qcgirth::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNegative = 2;  // valid run, certification failed

inline std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("failed writing '" + path + "'");
}

inline ShiftMatrix load_matrix(const std::string &path, std::ostream &err) {
  ShiftMatrix s = parse_shift_matrix(read_file(path));
  auto dups = duplicate_columns(s);
  if (!dups.empty())
    err << "warning: " << dups.size() << " pair(s) of identical columns (first: " << dups[0].first
        << " and " << dups[0].second << "); every lift has a 4-cycle\n";
  return s;
}

inline void print_stats(const BoundStats &st, std::ostream &out) {
  out << "A=" << st.A << "\nB=" << st.B << "\nC=" << st.C << "\nD=" << st.D << '\n';
}

/// Entry point shared by the executable and the tests. Never throws.
inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Girth analysis, consecutive-length bounds and search for (3,L) QC-LDPC shift matrices",
               "qcgirth"};
  app.require_subcommand(1, 1);

  std::string matrix_path, config_path, out_path;
  std::int64_t p = 0, pmax = 0;
  int cap = kMaxGirth, max_len = kMaxGirth, spot_checks = 0, runs = 1;
  std::uint64_t spot_seed = 1;
  bool reduce = false, alist = false, dense = false;

  auto *stats_cmd = app.add_subcommand("stats", "Print the row and difference maxima A, B, C, D");
  stats_cmd->add_option("matrix", matrix_path, "Shift-matrix file")->required();

  auto *bound_cmd = app.add_subcommand("bound", "Print T1..T6, P' and the first certified circulant size");
  bound_cmd->add_option("matrix", matrix_path, "Shift-matrix file")->required();

  auto *girth_cmd = app.add_subcommand("girth", "Girth of the lift of size P (capped at 12)");
  girth_cmd->add_option("matrix", matrix_path, "Shift-matrix file")->required();
  girth_cmd->add_option("--p", p, "Circulant size")->required();
  girth_cmd->add_option("--cap", cap, "Largest cycle length examined (4..12)");
  girth_cmd->add_flag("--reduce", reduce, "Reduce entries modulo P instead of rejecting entries >= P");

  auto *spectrum_cmd = app.add_subcommand("spectrum", "Dump the integer chain-sum spectrum");
  spectrum_cmd->add_option("matrix", matrix_path, "Shift-matrix file")->required();
  spectrum_cmd->add_option("--max-len", max_len, "Longest cycle length (4..12)");

  auto *certify_cmd = app.add_subcommand("certify", "Certify girth 12 for every P in (P', pmax] and tightness at P'");
  certify_cmd->add_option("matrix", matrix_path, "Shift-matrix file")->required();
  certify_cmd->add_option("--pmax", pmax, "Largest circulant size to verify")->required();
  certify_cmd->add_option("--spot-checks", spot_checks, "BFS oracle re-checks at random sizes in the range");
  certify_cmd->add_option("--seed", spot_seed, "Seed for choosing spot-check sizes");

  auto *search_cmd = app.add_subcommand("search", "Simulated-annealing search for a girth-12 shift matrix");
  search_cmd->add_option("--config", config_path, "key = value configuration file")->required();
  search_cmd->add_option("--runs", runs, "Independent runs with seeds seed, seed+1, ...");
  search_cmd->add_option("--out", out_path, "Write the found matrix to this file");

  auto *expand_cmd = app.add_subcommand("expand", "Write the binary parity-check matrix of the lift of size P");
  expand_cmd->add_option("matrix", matrix_path, "Shift-matrix file")->required();
  expand_cmd->add_option("--p", p, "Circulant size")->required();
  auto *alist_flag = expand_cmd->add_flag("--alist", alist, "alist output (default)");
  expand_cmd->add_flag("--dense", dense, "0/1 rows, for debugging")->excludes(alist_flag);
  expand_cmd->add_option("--out", out_path, "Output file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (stats_cmd->parsed()) {
      print_stats(stats(load_matrix(matrix_path, err)), out);
      return kExitOk;
    }
    if (bound_cmd->parsed()) {
      ShiftMatrix s = load_matrix(matrix_path, err);
      TightBound b = tight_bound(s);
      print_stats(b.stats, out);
      for (int i = 0; i < 6; ++i) out << 'T' << i + 1 << '=' << b.T[i] << '\n';
      out << "P'=" << b.p_prime << '\n';
      out << "girth10_bound=" << b.girth10_bound << '\n';
      out << "first_certified_P=" << b.first_certified_p() << '\n';
      out << "start_length=" << b.start_length(s.cols()) << '\n';
      return kExitOk;
    }
    if (girth_cmd->parsed()) {
      ShiftMatrix s = load_matrix(matrix_path, err);
      if (reduce && p >= 2 && s.max_entry() >= p) {
        err << "warning: entries reduced modulo " << p << '\n';
        s = s.reduced(p);
      }
      out << qc_girth(s, p, cap).to_string() << '\n';
      return kExitOk;
    }
    if (spectrum_cmd->parsed()) {
      out << cycle_spectrum(load_matrix(matrix_path, err), max_len).dump();
      return kExitOk;
    }
    if (certify_cmd->parsed()) {
      ShiftMatrix s = load_matrix(matrix_path, err);
      require_canonical(s);
      CertifyOptions opts;
      opts.oracle_spot_checks = spot_checks;
      opts.seed = spot_seed;
      CertificationReport rep = certify(s, pmax, opts);
      out << format_certificate(rep);
      return rep.passed() ? kExitOk : kExitNegative;
    }
    if (search_cmd->parsed()) {
      SearchConfig cfg = parse_search_config(read_file(config_path));
      SearchResult r = sa_search_runs(cfg, runs);
      out << "status: " << (r.success ? "success" : "failure") << '\n';
      out << "seed: " << r.seed << '\n';
      out << "q: " << r.q << '\n';
      out << "iterations: " << r.iterations_used << '\n';
      out << "cost: " << r.final_cost << '\n';
      out << "P_prime: " << r.p_prime << '\n';
      out << "[MATRIX]\n" << serialize(r.matrix);
      if (!out_path.empty()) write_file(out_path, serialize(r.matrix));
      if (r.certificate) out << format_certificate(*r.certificate);
      bool ok = r.success && r.certificate && r.certificate->passed();
      return ok ? kExitOk : kExitNegative;
    }
    if (expand_cmd->parsed()) {
      BinaryParityMatrix h = expand(load_matrix(matrix_path, err), p);
      std::string text = dense ? export_dense(h) : export_alist(h);
      if (out_path.empty()) out << text;
      else write_file(out_path, text);
      return kExitOk;
    }
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace qcgirth::cli

#endif  // QCGIRTH_TOOLS_CLI_HPP
