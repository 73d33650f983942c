#pragma once

/**
 * @file Dither.h
 * @brief Eight-color error-diffusion dithering
 *
 * Pixels are quantized to the corners of the RGB cube by walking a fixed
 * three-level binary tree (R, then G, then B against the channel
 * midpoints), so every quantization costs exactly three comparisons.
 * The quantization error is pushed to the right, bottom and bottom-left
 * neighbors in plain raster order.
 */

#include <sdpf/Image.h>

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

namespace Sdpf {

/// Real-valued RGB triple; channels may leave [0, 255] while error accumulates.
struct RgbF {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;
};

/// Number of dither colors; color indices run 1..kPaletteSize.
inline constexpr int kPaletteSize = 8;

/**
 * @brief Dither color set with the tree thresholds.
 *
 * Leaf index = 1 + 4*[R >= R_h] + 2*[G >= G_h] + [B >= B_h], so the
 * default corner palette orders colors as
 * 1 black, 2 blue, 3 green, 4 cyan, 5 red, 6 magenta, 7 yellow, 8 white.
 */
class DitherPalette {
public:
    DitherPalette(std::array<Rgb8, kPaletteSize> colors, RgbF thresholds);

    /// The eight RGB cube corners. Thresholds sit at the exact channel
    /// midpoint 127.5, so on 8-bit input a value of 128 or more goes high.
    static const DitherPalette& RgbCorners();

    /// Color for an index in 1..8.
    const Rgb8& Color(int index) const { return colors_[index - 1]; }
    const std::array<Rgb8, kPaletteSize>& Colors() const { return colors_; }
    const RgbF& Thresholds() const { return thresholds_; }

private:
    std::array<Rgb8, kPaletteSize> colors_;
    RgbF thresholds_;
};

/// Descend the tree with a caller-supplied "greater or equal" predicate.
template <typename GreaterEqual>
inline int DescendPaletteTree(const RgbF& p, const RgbF& t, GreaterEqual&& ge) {
    int index = 1;
    if (ge(p.r, t.r)) index += 4;
    if (ge(p.g, t.g)) index += 2;
    if (ge(p.b, t.b)) index += 1;
    return index;
}

/// Nearest dither color index (1..8). Ties at a threshold take the high branch.
inline int QuantizePixel(const RgbF& p, const DitherPalette& palette) {
    return DescendPaletteTree(p, palette.Thresholds(), [](double v, double t) { return v >= t; });
}

/// Same as QuantizePixel but adds the number of comparisons made to @p comparisons.
int QuantizePixelCounted(const RgbF& p, const DitherPalette& palette, long& comparisons);

// =============================================================================
// Error diffusion coefficients
// =============================================================================

/// Weights for the right, bottom and bottom-left neighbors. They sum to 1.
struct DiffusionWeights {
    double right = 0.0;
    double bottom = 0.0;
    double bottomLeft = 0.0;
};

/// Maps a pixel's pre-quantization value to its diffusion weights.
class CoefficientProvider {
public:
    virtual ~CoefficientProvider() = default;
    virtual DiffusionWeights Weights(const RgbF& pixel) const = 0;
};

/// Same weights for every pixel. Default (7, 5, 3) / 15.
class ConstantCoefficients : public CoefficientProvider {
public:
    ConstantCoefficients();
    explicit ConstantCoefficients(DiffusionWeights weights);

    DiffusionWeights Weights(const RgbF&) const override { return weights_; }

private:
    DiffusionWeights weights_;
};

/**
 * @brief Intensity-indexed coefficient table.
 *
 * The row is chosen by the pixel's mean channel value, rounded and clamped
 * to 0..255. Each row is normalized on construction; rows with a zero or
 * negative entry sum are rejected.
 */
class TableCoefficients : public CoefficientProvider {
public:
    explicit TableCoefficients(const std::array<std::array<double, 3>, 256>& rows);

    DiffusionWeights Weights(const RgbF& pixel) const override;

private:
    std::array<DiffusionWeights, 256> rows_;
};

/// Per-channel error split between the three diffusion targets.
struct ErrorShares {
    RgbF right;
    RgbF bottom;
    RgbF bottomLeft;
};

ErrorShares SplitError(const RgbF& error, const DiffusionWeights& weights);

// =============================================================================
// Dithering
// =============================================================================

/// Grid of dither color indices (1..8), row-major.
class IndexedImage {
public:
    IndexedImage() = default;
    IndexedImage(int width, int height, std::vector<uint8_t> indices);

    int Width() const { return width_; }
    int Height() const { return height_; }
    uint8_t At(int x, int y) const { return indices_[static_cast<size_t>(y) * width_ + x]; }
    const std::vector<uint8_t>& Indices() const { return indices_; }

    friend bool operator==(const IndexedImage&, const IndexedImage&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<uint8_t> indices_;
};

/// Accumulation buffer with signed real channels, same layout as Image.
class WorkingImage {
public:
    explicit WorkingImage(const Image& src);

    int Width() const { return width_; }
    int Height() const { return height_; }
    RgbF& At(int x, int y) { return pixels_[static_cast<size_t>(y) * width_ + x]; }
    const RgbF& At(int x, int y) const { return pixels_[static_cast<size_t>(y) * width_ + x]; }

private:
    int width_;
    int height_;
    std::vector<RgbF> pixels_;
};

/// Raster-order error diffusion. Error aimed outside the image is dropped.
IndexedImage Dither(const Image& img, const DitherPalette& palette,
                    const CoefficientProvider& coeffs);

/// Dither with the corner palette and the default constant coefficients.
IndexedImage Dither(const Image& img);

/// Map indices back to palette colors.
Image Reconstruct(const IndexedImage& indexed, const DitherPalette& palette);

} // namespace Sdpf
