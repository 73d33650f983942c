#pragma once

/**
 * @file Image.h
 * @brief 8-bit RGB raster, PPM (P6) I/O, bilinear resize and right-angle rotation
 */

#include <cstdint>
#include <filesystem>
#include <vector>

namespace Sdpf {

struct Rgb8 {
    uint8_t r = 0;
    uint8_t g = 0;
    uint8_t b = 0;

    friend bool operator==(const Rgb8&, const Rgb8&) = default;
};

/**
 * @brief Row-major 8-bit RGB image.
 *
 * Width and height are always positive; the pixel buffer holds exactly
 * width * height entries.
 */
class Image {
public:
    Image() = default;
    Image(int width, int height, Rgb8 fill = {});
    Image(int width, int height, std::vector<Rgb8> pixels);

    int Width() const { return width_; }
    int Height() const { return height_; }
    bool Empty() const { return pixels_.empty(); }
    size_t PixelCount() const { return pixels_.size(); }

    const Rgb8& At(int x, int y) const { return pixels_[static_cast<size_t>(y) * width_ + x]; }
    Rgb8& At(int x, int y) { return pixels_[static_cast<size_t>(y) * width_ + x]; }

    const std::vector<Rgb8>& Pixels() const { return pixels_; }

    friend bool operator==(const Image&, const Image&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<Rgb8> pixels_;
};

/// Load a binary PPM (P6, maxval 255). Throws FileNotFound, MalformedFile or UnsupportedFormat.
Image LoadImage(const std::filesystem::path& path);

/// Write a binary PPM (P6, maxval 255). Throws IoError.
void SaveImage(const Image& img, const std::filesystem::path& path);

/// Bilinear resize with half-pixel-center sampling. Throws InvalidArgument on a zero target.
Image Resize(const Image& img, int width, int height);

/// Rotate clockwise by 90 degrees: a W x H image becomes H x W.
Image Rotate90(const Image& img);

/// Rotate by a right angle (0, 90, 180 or 270 degrees, clockwise).
Image RotateRightAngle(const Image& img, int degrees);

} // namespace Sdpf
