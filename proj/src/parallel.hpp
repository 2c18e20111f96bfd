#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace anisoq::detail {

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Splits [0, count) into at most `workers` contiguous blocks and runs
/// fn(begin, end, block_index) on each. Returns the number of blocks used.
/// Exceptions from workers are not propagated; callers must not throw.
template <typename Fn>
std::size_t for_each_block(std::size_t count, unsigned workers, Fn&& fn) {
    const std::size_t blocks = std::max<std::size_t>(1, std::min<std::size_t>(workers, count));
    const std::size_t step = (count + blocks - 1) / blocks;
    if (blocks == 1) {
        fn(std::size_t{0}, count, std::size_t{0});
        return 1;
    }
    std::vector<std::jthread> pool;
    pool.reserve(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t begin = std::min(count, b * step);
        const std::size_t end = std::min(count, begin + step);
        pool.emplace_back([&fn, begin, end, b] { fn(begin, end, b); });
    }
    return blocks;
}

}  // namespace anisoq::detail
