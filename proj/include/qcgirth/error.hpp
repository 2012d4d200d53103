#ifndef QCGIRTH_ERROR_HPP
#define QCGIRTH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qcgirth {

/// Raised for malformed input and violated preconditions. The message is
/// meant to be shown to the user as-is.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace qcgirth

#endif  // QCGIRTH_ERROR_HPP
