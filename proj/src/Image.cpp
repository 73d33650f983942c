/**
 * @file Image.cpp
 * @brief Image container, PPM codec and geometric resampling
 */

#include <sdpf/Image.h>
#include <sdpf/Error.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

namespace Sdpf {

Image::Image(int width, int height, Rgb8 fill) : width_(width), height_(height) {
    if (width <= 0 || height <= 0) {
        throw InvalidArgument("image dimensions must be positive");
    }
    pixels_.assign(static_cast<size_t>(width) * height, fill);
}

Image::Image(int width, int height, std::vector<Rgb8> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (width <= 0 || height <= 0) {
        throw InvalidArgument("image dimensions must be positive");
    }
    if (pixels_.size() != static_cast<size_t>(width) * height) {
        throw InvalidArgument("pixel count does not match image dimensions");
    }
}

// =============================================================================
// PPM codec
// =============================================================================

namespace {

class HeaderReader {
public:
    explicit HeaderReader(const std::string& data) : data_(data) {}

    void SkipWhitespaceAndComments() {
        while (pos_ < data_.size()) {
            char c = data_[pos_];
            if (c == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    long ReadPositiveInt(const char* what) {
        SkipWhitespaceAndComments();
        size_t start = pos_;
        long value = 0;
        while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) {
            value = value * 10 + (data_[pos_] - '0');
            if (value > 1'000'000) {
                throw MalformedFile(std::string("PPM header: ") + what + " out of range");
            }
            ++pos_;
        }
        if (pos_ == start) {
            throw MalformedFile(std::string("PPM header: missing ") + what);
        }
        return value;
    }

    size_t& Pos() { return pos_; }

private:
    const std::string& data_;
    size_t pos_ = 0;
};

} // namespace

Image LoadImage(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FileNotFound("cannot open image: " + path.string());
    }
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (data.size() < 2 || data[0] != 'P') {
        throw UnsupportedFormat("not a PPM file: " + path.string());
    }
    if (data[1] != '6') {
        throw UnsupportedFormat("only binary RGB PPM (P6) is supported: " + path.string());
    }

    HeaderReader reader(data);
    reader.Pos() = 2;
    long width = reader.ReadPositiveInt("width");
    long height = reader.ReadPositiveInt("height");
    long maxval = reader.ReadPositiveInt("maxval");
    if (width == 0 || height == 0) {
        throw MalformedFile("PPM header: zero dimension in " + path.string());
    }
    if (maxval != 255) {
        throw UnsupportedFormat("only 8-bit PPM (maxval 255) is supported: " + path.string());
    }
    size_t& pos = reader.Pos();
    if (pos >= data.size() || !std::isspace(static_cast<unsigned char>(data[pos]))) {
        throw MalformedFile("PPM header not terminated: " + path.string());
    }
    ++pos;

    size_t count = static_cast<size_t>(width) * static_cast<size_t>(height);
    if (data.size() - pos < count * 3) {
        throw MalformedFile("truncated PPM pixel data: " + path.string());
    }
    std::vector<Rgb8> pixels(count);
    const auto* bytes = reinterpret_cast<const uint8_t*>(data.data() + pos);
    for (size_t i = 0; i < count; ++i) {
        pixels[i] = {bytes[3 * i], bytes[3 * i + 1], bytes[3 * i + 2]};
    }
    return Image(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

void SaveImage(const Image& img, const std::filesystem::path& path) {
    if (img.Empty()) {
        throw InvalidArgument("cannot save an empty image");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open for writing: " + path.string());
    }
    out << "P6\n" << img.Width() << ' ' << img.Height() << "\n255\n";
    std::vector<char> bytes(img.PixelCount() * 3);
    for (size_t i = 0; i < img.PixelCount(); ++i) {
        const Rgb8& p = img.Pixels()[i];
        bytes[3 * i] = static_cast<char>(p.r);
        bytes[3 * i + 1] = static_cast<char>(p.g);
        bytes[3 * i + 2] = static_cast<char>(p.b);
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

// =============================================================================
// Resampling
// =============================================================================

Image Resize(const Image& img, int width, int height) {
    if (width <= 0 || height <= 0) {
        throw InvalidArgument("resize target dimensions must be positive");
    }
    if (img.Empty()) {
        throw InvalidArgument("cannot resize an empty image");
    }
    if (width == img.Width() && height == img.Height()) {
        return img;
    }

    const double sx = static_cast<double>(img.Width()) / width;
    const double sy = static_cast<double>(img.Height()) / height;
    const int maxX = img.Width() - 1;
    const int maxY = img.Height() - 1;

    Image out(width, height);
    for (int y = 0; y < height; ++y) {
        double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, static_cast<double>(maxY));
        int y0 = static_cast<int>(fy);
        int y1 = std::min(y0 + 1, maxY);
        double wy = fy - y0;
        for (int x = 0; x < width; ++x) {
            double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, static_cast<double>(maxX));
            int x0 = static_cast<int>(fx);
            int x1 = std::min(x0 + 1, maxX);
            double wx = fx - x0;

            const Rgb8& p00 = img.At(x0, y0);
            const Rgb8& p10 = img.At(x1, y0);
            const Rgb8& p01 = img.At(x0, y1);
            const Rgb8& p11 = img.At(x1, y1);
            auto lerp = [&](uint8_t a, uint8_t b, uint8_t c, uint8_t d) {
                double top = a + (b - a) * wx;
                double bottom = c + (d - c) * wx;
                double v = top + (bottom - top) * wy;
                return static_cast<uint8_t>(std::clamp(std::lround(v), 0L, 255L));
            };
            out.At(x, y) = {lerp(p00.r, p10.r, p01.r, p11.r),
                            lerp(p00.g, p10.g, p01.g, p11.g),
                            lerp(p00.b, p10.b, p01.b, p11.b)};
        }
    }
    return out;
}

Image Rotate90(const Image& img) {
    if (img.Empty()) {
        return img;
    }
    const int w = img.Width();
    const int h = img.Height();
    Image out(h, w);
    // Output pixel (x, y) takes source pixel (y, h - 1 - x).
    for (int y = 0; y < w; ++y) {
        for (int x = 0; x < h; ++x) {
            out.At(x, y) = img.At(y, h - 1 - x);
        }
    }
    return out;
}

Image RotateRightAngle(const Image& img, int degrees) {
    int turns = ((degrees % 360) + 360) % 360;
    if (turns % 90 != 0) {
        throw InvalidArgument("only right-angle rotations are supported");
    }
    Image out = img;
    for (int i = 0; i < turns / 90; ++i) {
        out = Rotate90(out);
    }
    return out;
}

} // namespace Sdpf
