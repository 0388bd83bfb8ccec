#ifndef TLSPH_PARALLEL_HPP
#define TLSPH_PARALLEL_HPP

#include <cstddef>

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

namespace tlsph {

// Chunked parallel loop. With threads <= 1 the loop runs inline; results are
// bit-identical either way because every index writes only its own slots.
template <typename Body>
void parallel_for_range(std::size_t n, int threads, Body&& body) {
  if (threads <= 1 || n < 2) {
    body(std::size_t{0}, n);
    return;
  }
  tbb::task_arena arena(threads);
  arena.execute([&] {
    tbb::parallel_for(tbb::blocked_range<std::size_t>(0, n),
                      [&](const tbb::blocked_range<std::size_t>& r) {
                        body(r.begin(), r.end());
                      });
  });
}

} // namespace tlsph

#endif // TLSPH_PARALLEL_HPP
