#ifndef QCGIRTH_PARALLEL_HPP
#define QCGIRTH_PARALLEL_HPP

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <thread>

namespace qcgirth {

/// Worker count honouring QCGL_THREADS (unset, 0 or garbage means one
/// worker per hardware thread).
inline unsigned thread_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char *env = std::getenv("QCGL_THREADS");
  if (env == nullptr) return hw;
  unsigned requested = 0;
  auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), requested);
  if (ec != std::errc() || requested == 0) return hw;
  return requested;
}

}  // namespace qcgirth

#endif  // QCGIRTH_PARALLEL_HPP
