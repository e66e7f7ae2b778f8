#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

#include "specshrink/summation.hpp"

namespace specshrink {

// Caps worker threads for all parallel regions; 0 restores the default.
void set_thread_count(int threads);
int thread_count();

// Runs body(i) for i in [0, count); iterations may run concurrently.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

// Deterministic compensated sum of term(i) over i in [0, n). Blocks of
// kSumBlock terms are summed sequentially, then merged in a fixed tree.
template <class Term>
CompensatedSum deterministic_sum(std::size_t n, Term&& term) {
    const std::size_t blocks = (n + kSumBlock - 1) / kSumBlock;
    if (blocks <= 1) {
        CompensatedSum acc;
        for (std::size_t i = 0; i < n; ++i) acc.add(term(i));
        return acc;
    }
    std::vector<CompensatedSum> parts(blocks);
    parallel_for(blocks, [&](std::size_t b) {
        CompensatedSum acc;
        const std::size_t end = std::min(n, (b + 1) * kSumBlock);
        for (std::size_t i = b * kSumBlock; i < end; ++i) acc.add(term(i));
        parts[b] = acc;
    });
    return merge_tree(parts.data(), parts.size());
}

// Deterministic sums of `width` parallel series. block(begin, end, acc)
// must add the terms of indices [begin, end) into acc[0..width).
template <class Block>
std::vector<double> deterministic_sums(std::size_t n, std::size_t width, Block&& block) {
    const std::size_t blocks = std::max<std::size_t>(1, (n + kSumBlock - 1) / kSumBlock);
    std::vector<CompensatedSum> parts(blocks * width);
    auto run = [&](std::size_t b) {
        const std::size_t begin = b * kSumBlock;
        const std::size_t end = std::min(n, begin + kSumBlock);
        block(begin, end, parts.data() + b * width);
    };
    if (blocks == 1)
        run(0);
    else
        parallel_for(blocks, run);
    std::vector<double> out(width);
    std::vector<CompensatedSum> column(blocks);
    for (std::size_t w = 0; w < width; ++w) {
        for (std::size_t b = 0; b < blocks; ++b) column[b] = parts[b * width + w];
        out[w] = merge_tree(column.data(), blocks).value();
    }
    return out;
}

}  // namespace specshrink
