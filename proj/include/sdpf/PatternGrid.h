#pragma once

/**
 * @file PatternGrid.h
 * @brief 2x2 dither patterns and the pattern dissimilarity
 */

#include <sdpf/Dither.h>

#include <array>
#include <cstdint>
#include <vector>

namespace Sdpf {

/// Four dither color indices sorted ascending (canonical form).
class DitherPattern {
public:
    DitherPattern() = default;

    /// Builds the canonical pattern from four raw indices in any order.
    DitherPattern(uint8_t a, uint8_t b, uint8_t c, uint8_t d);

    uint8_t operator[](int position) const { return colors_[position]; }
    const std::array<uint8_t, 4>& Colors() const { return colors_; }

    friend bool operator==(const DitherPattern&, const DitherPattern&) = default;
    friend auto operator<=>(const DitherPattern&, const DitherPattern&) = default;

private:
    std::array<uint8_t, 4> colors_{1, 1, 1, 1};
};

/// Number of positions (0..4) at which two canonical patterns differ.
inline int Dissimilarity(const DitherPattern& a, const DitherPattern& b) {
    return (a[0] != b[0]) + (a[1] != b[1]) + (a[2] != b[2]) + (a[3] != b[3]);
}

/**
 * @brief Non-overlapping tiling of an indexed image into 2x2 patterns.
 *
 * Pattern (i, j) covers pixels (2i, 2j) .. (2i+1, 2j+1); i runs along x.
 * A trailing odd row or column of pixels is dropped.
 */
class PatternGrid {
public:
    PatternGrid() = default;
    PatternGrid(int cols, int rows, std::vector<DitherPattern> patterns);

    int Cols() const { return cols_; }
    int Rows() const { return rows_; }
    const DitherPattern& At(int i, int j) const { return patterns_[static_cast<size_t>(j) * cols_ + i]; }
    const std::vector<DitherPattern>& Patterns() const { return patterns_; }

private:
    int cols_ = 0;
    int rows_ = 0;
    std::vector<DitherPattern> patterns_;
};

/// Tile and canonicalize. Throws InvalidArgument for images smaller than 2x2.
PatternGrid BuildGrid(const IndexedImage& indexed);

} // namespace Sdpf
