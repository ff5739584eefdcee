// Deterministic chunked parallel loop over trial indices.
//
// Trials [0, total) are cut into fixed-size chunks independent of the worker
// count. Workers claim chunks in any order, but results come back indexed by
// chunk, so a caller that folds them in order gets the same bits for any pool
// size.
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tperc {

// Workers from the TPERC_WORKERS environment variable, else the hardware count (at least 1).
unsigned default_workers();

inline constexpr std::uint64_t kDefaultChunk = 256;

// body(first, last) -> Result for the half-open trial range; returns one result per chunk.
template <class Result, class Body>
std::vector<Result> run_chunks(std::uint64_t total, unsigned workers, Body&& body,
                               std::uint64_t chunk = kDefaultChunk) {
    if (chunk == 0) chunk = 1;
    const std::uint64_t chunks = (total + chunk - 1) / chunk;
    std::vector<Result> out(static_cast<std::size_t>(chunks));
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        while (true) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= chunks) return;
            try {
                const std::uint64_t first = c * chunk;
                out[static_cast<std::size_t>(c)] = body(first, std::min(total, first + chunk));
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(chunks);
            }
        }
    };

    const unsigned n = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::uint64_t>(chunks, 1))));
    if (n == 1) {
        work();
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(n);
        for (unsigned t = 0; t < n; ++t) threads.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace tperc
