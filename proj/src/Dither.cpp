/**
 * @file Dither.cpp
 * @brief Tree quantizer and raster error diffusion
 */

#include <sdpf/Dither.h>
#include <sdpf/Error.h>

#include <algorithm>
#include <cmath>

namespace Sdpf {

DitherPalette::DitherPalette(std::array<Rgb8, kPaletteSize> colors, RgbF thresholds)
    : colors_(colors), thresholds_(thresholds) {}

const DitherPalette& DitherPalette::RgbCorners() {
    static const DitherPalette palette(
        {{{0, 0, 0},
          {0, 0, 255},
          {0, 255, 0},
          {0, 255, 255},
          {255, 0, 0},
          {255, 0, 255},
          {255, 255, 0},
          {255, 255, 255}}},
        {127.5, 127.5, 127.5});
    return palette;
}

int QuantizePixelCounted(const RgbF& p, const DitherPalette& palette, long& comparisons) {
    return DescendPaletteTree(p, palette.Thresholds(), [&](double v, double t) {
        ++comparisons;
        return v >= t;
    });
}

// =============================================================================
// Coefficients
// =============================================================================

namespace {

DiffusionWeights Normalized(double right, double bottom, double bottomLeft) {
    if (right < 0.0 || bottom < 0.0 || bottomLeft < 0.0) {
        throw InvalidArgument("diffusion weights must be nonnegative");
    }
    double sum = right + bottom + bottomLeft;
    if (!(sum > 0.0) || !std::isfinite(sum)) {
        throw InvalidArgument("diffusion weights must have a positive finite sum");
    }
    return {right / sum, bottom / sum, bottomLeft / sum};
}

} // namespace

ConstantCoefficients::ConstantCoefficients()
    : weights_{7.0 / 15.0, 5.0 / 15.0, 3.0 / 15.0} {}

ConstantCoefficients::ConstantCoefficients(DiffusionWeights weights)
    : weights_(Normalized(weights.right, weights.bottom, weights.bottomLeft)) {}

TableCoefficients::TableCoefficients(const std::array<std::array<double, 3>, 256>& rows) {
    for (size_t i = 0; i < rows.size(); ++i) {
        rows_[i] = Normalized(rows[i][0], rows[i][1], rows[i][2]);
    }
}

DiffusionWeights TableCoefficients::Weights(const RgbF& pixel) const {
    double mean = (pixel.r + pixel.g + pixel.b) / 3.0;
    long level = std::clamp(std::lround(mean), 0L, 255L);
    return rows_[static_cast<size_t>(level)];
}

ErrorShares SplitError(const RgbF& e, const DiffusionWeights& w) {
    ErrorShares s;
    s.right = {e.r * w.right, e.g * w.right, e.b * w.right};
    s.bottom = {e.r * w.bottom, e.g * w.bottom, e.b * w.bottom};
    // Remainder goes bottom-left so the three shares add back to e.
    s.bottomLeft = {e.r - s.right.r - s.bottom.r,
                    e.g - s.right.g - s.bottom.g,
                    e.b - s.right.b - s.bottom.b};
    return s;
}

// =============================================================================
// Images
// =============================================================================

IndexedImage::IndexedImage(int width, int height, std::vector<uint8_t> indices)
    : width_(width), height_(height), indices_(std::move(indices)) {
    if (width <= 0 || height <= 0 ||
        indices_.size() != static_cast<size_t>(width) * height) {
        throw InvalidArgument("indexed image size mismatch");
    }
}

WorkingImage::WorkingImage(const Image& src)
    : width_(src.Width()), height_(src.Height()), pixels_(src.PixelCount()) {
    for (size_t i = 0; i < pixels_.size(); ++i) {
        const Rgb8& p = src.Pixels()[i];
        pixels_[i] = {static_cast<double>(p.r), static_cast<double>(p.g), static_cast<double>(p.b)};
    }
}

IndexedImage Dither(const Image& img, const DitherPalette& palette,
                    const CoefficientProvider& coeffs) {
    if (img.Empty()) {
        throw InvalidArgument("cannot dither an empty image");
    }
    const int w = img.Width();
    const int h = img.Height();
    WorkingImage work(img);
    std::vector<uint8_t> indices(img.PixelCount());

    auto add = [](RgbF& dst, const RgbF& v) {
        dst.r += v.r;
        dst.g += v.g;
        dst.b += v.b;
    };

    for (int y = 0; y < h; ++y) {
        const bool hasBelow = y + 1 < h;
        for (int x = 0; x < w; ++x) {
            const RgbF& p = work.At(x, y);
            int index = QuantizePixel(p, palette);
            indices[static_cast<size_t>(y) * w + x] = static_cast<uint8_t>(index);

            const Rgb8& q = palette.Color(index);
            RgbF error{p.r - q.r, p.g - q.g, p.b - q.b};
            ErrorShares shares = SplitError(error, coeffs.Weights(p));
            if (x + 1 < w) add(work.At(x + 1, y), shares.right);
            if (hasBelow) {
                add(work.At(x, y + 1), shares.bottom);
                if (x > 0) add(work.At(x - 1, y + 1), shares.bottomLeft);
            }
        }
    }
    return IndexedImage(w, h, std::move(indices));
}

IndexedImage Dither(const Image& img) {
    static const ConstantCoefficients defaults;
    return Dither(img, DitherPalette::RgbCorners(), defaults);
}

Image Reconstruct(const IndexedImage& indexed, const DitherPalette& palette) {
    std::vector<Rgb8> pixels(indexed.Indices().size());
    for (size_t i = 0; i < pixels.size(); ++i) {
        int index = indexed.Indices()[i];
        if (index < 1 || index > kPaletteSize) {
            throw InvalidArgument("color index out of range");
        }
        pixels[i] = palette.Color(index);
    }
    return Image(indexed.Width(), indexed.Height(), std::move(pixels));
}

} // namespace Sdpf
