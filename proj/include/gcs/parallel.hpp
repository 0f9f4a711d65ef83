// parallel.hpp — Deterministic chunked reductions. Chunk sums are combined in a
// fixed pairwise tree, so the result is bit-identical for any worker count.

#pragma once

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace gcs {

// Worker cap from GCS_THREADS (0 or unset means hardware concurrency).
inline int worker_count() {
    const char* env = std::getenv("GCS_THREADS");
    long requested = 0;
    if (env != nullptr && *env != '\0') {
        requested = std::strtol(env, nullptr, 10);
        if (requested < 0) requested = 0;
    }
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (requested == 0 || requested > static_cast<long>(hw)) return static_cast<int>(hw);
    return static_cast<int>(requested);
}

// Reduce make_chunk(0) + ... + make_chunk(n_chunks-1). Each chunk is computed
// independently (possibly on several threads); the combine order is the fixed
// pairwise tree over chunk indices.
template <class Sum, class MakeChunk>
Sum deterministic_reduce(std::size_t n_chunks, MakeChunk make_chunk) {
    if (n_chunks == 0) throw std::invalid_argument("deterministic_reduce: no chunks");

    std::vector<Sum> partial(n_chunks);
    const int workers = std::min<std::size_t>(worker_count(), n_chunks);
    if (workers <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) partial[c] = make_chunk(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t c = next.fetch_add(1);
                    if (c >= n_chunks) return;
                    partial[c] = make_chunk(c);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    // in-place pairwise tree: (0+1), (2+3), ... then recurse on the survivors
    std::size_t active = n_chunks;
    while (active > 1) {
        std::size_t out = 0;
        for (std::size_t i = 0; i + 1 < active; i += 2) {
            partial[out++] = partial[i] + partial[i + 1];
        }
        if (active % 2 == 1) partial[out++] = partial[active - 1];
        active = out;
    }
    return partial[0];
}

}  // namespace gcs
