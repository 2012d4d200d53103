// Certifies the girth-12 family of a shift matrix and prints its first
// few member code lengths.
//
//   certify_family [matrix-file] [pmax]

#include <cstdlib>
#include <iostream>

#include "qcgirth/qcgirth.hpp"
#include "qcgirth_cli.hpp"

int main(int argc, char **argv) {
  using namespace qcgirth;
  try {
    ShiftMatrix s = argc > 1 ? parse_shift_matrix(cli::read_file(argv[1]))
                             : ShiftMatrix({{0, 0, 0, 0, 0, 0},
                                            {0, 3, 14, 18, 24, 26},
                                            {0, 19, 62, 107, 170, 224}});
    TightBound b = tight_bound(s);
    std::int64_t pmax = argc > 2 ? std::atoll(argv[2]) : b.p_prime + 100;
    CertificationReport rep = certify(s, pmax);
    std::cout << format_certificate(rep);
    if (rep.passed()) {
      std::cout << "family lengths:";
      for (std::int64_t p = b.first_certified_p(); p < b.first_certified_p() + 5; ++p)
        std::cout << ' ' << p * s.cols();
      std::cout << " ...\n";
    }
    return rep.passed() ? 0 : 2;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
