/**
 * @file PatternGrid.cpp
 */

#include <sdpf/PatternGrid.h>
#include <sdpf/Error.h>

#include <utility>

namespace Sdpf {

DitherPattern::DitherPattern(uint8_t a, uint8_t b, uint8_t c, uint8_t d) {
    // 5-comparator sorting network for four elements.
    auto order = [](uint8_t& x, uint8_t& y) {
        if (y < x) std::swap(x, y);
    };
    order(a, b);
    order(c, d);
    order(a, c);
    order(b, d);
    order(b, c);
    colors_ = {a, b, c, d};
}

PatternGrid::PatternGrid(int cols, int rows, std::vector<DitherPattern> patterns)
    : cols_(cols), rows_(rows), patterns_(std::move(patterns)) {
    if (cols < 0 || rows < 0 || patterns_.size() != static_cast<size_t>(cols) * rows) {
        throw InvalidArgument("pattern grid size mismatch");
    }
}

PatternGrid BuildGrid(const IndexedImage& indexed) {
    if (indexed.Width() < 2 || indexed.Height() < 2) {
        throw InvalidArgument("pattern grid needs an image of at least 2x2 pixels");
    }
    const int cols = indexed.Width() / 2;
    const int rows = indexed.Height() / 2;
    std::vector<DitherPattern> patterns;
    patterns.reserve(static_cast<size_t>(cols) * rows);
    for (int j = 0; j < rows; ++j) {
        const int y = 2 * j;
        for (int i = 0; i < cols; ++i) {
            const int x = 2 * i;
            patterns.emplace_back(indexed.At(x, y), indexed.At(x + 1, y),
                                  indexed.At(x, y + 1), indexed.At(x + 1, y + 1));
        }
    }
    return PatternGrid(cols, rows, std::move(patterns));
}

} // namespace Sdpf
