/**
 * @file Extractor.cpp
 */

#include <sdpf/Extractor.h>
#include <sdpf/Error.h>
#include <sdpf/PatternGrid.h>
#include <sdpf/Saliency.h>

#include <chrono>
#include <cmath>
#include <numbers>

namespace Sdpf {

std::string_view StageName(Stage stage) {
    switch (stage) {
        case Stage::Dithering: return "ED-Dithering";
        case Stage::ColourSorting: return "Colour sorting";
        case Stage::CalculateHessian: return "Calculate Hessian";
        case Stage::AnalyseHessian: return "Analyse Hessian";
        case Stage::NonMaxSuppression: return "Non-max suppression";
        case Stage::Centroid: return "Centroid";
        case Stage::CentroidDistance: return "Centroid distance";
        case Stage::DistanceBinRanges: return "Distance bin ranges";
        case Stage::DominantOrientation: return "Dominant orientation";
        case Stage::ResolvingUpsideDown: return "Resolving upside down";
        case Stage::SdpfAngles: return "SDPF angles";
        case Stage::DescriptorConstruction: return "Descriptor construction";
    }
    return "?";
}

namespace {

class StageClock {
public:
    explicit StageClock(StageTimes* times) : times_(times) {
        if (times_) last_ = Clock::now();
    }

    void Lap(Stage stage) {
        if (!times_) return;
        auto now = Clock::now();
        (*times_)[static_cast<size_t>(stage)] += std::chrono::duration<double>(now - last_).count();
        last_ = now;
    }

private:
    using Clock = std::chrono::steady_clock;
    StageTimes* times_;
    Clock::time_point last_;
};

} // namespace

ExtractionResult ExtractDetailed(const Image& img, const DescriptorConfig& cfg,
                                 const CoefficientProvider& coeffs, StageTimes* times) {
    cfg.Validate();
    if (img.Width() < kMinExtractSide || img.Height() < kMinExtractSide) {
        throw InvalidArgument("image too small for extraction (needs at least 6x6 pixels)");
    }

    ExtractionResult result;
    StageClock clock(times);

    IndexedImage indexed = Dither(img, DitherPalette::RgbCorners(), coeffs);
    clock.Lap(Stage::Dithering);

    PatternGrid grid = BuildGrid(indexed);
    clock.Lap(Stage::ColourSorting);

    HessianResponse response = ComputeHessian(grid);
    clock.Lap(Stage::CalculateHessian);

    std::vector<SdpfPoint> candidates = ThresholdCandidates(response, grid);
    result.candidateCount = candidates.size();
    clock.Lap(Stage::AnalyseHessian);

    result.points = NonMaxSuppress(candidates, cfg.nmsWindow);
    clock.Lap(Stage::NonMaxSuppression);

    if (!result.points.empty()) {
        Point2d centroid = Centroid(result.points);
        clock.Lap(Stage::Centroid);

        std::vector<double> squared = SquaredCentroidDistances(result.points, centroid);
        clock.Lap(Stage::CentroidDistance);

        result.distanceBins = BinSquaredDistances(squared, cfg.distanceBins);
        clock.Lap(Stage::DistanceBinRanges);

        SlopeFit fit = FitSlope(result.points, centroid);
        clock.Lap(Stage::DominantOrientation);

        result.frame = ResolveStartingAngle(result.points, centroid, fit);
        clock.Lap(Stage::ResolvingUpsideDown);

        result.angleBins = AngleBins(result.points, result.frame, cfg.angleBins);
        clock.Lap(Stage::SdpfAngles);
    }

    result.descriptor = BuildDescriptor(result.points, result.distanceBins, result.angleBins, cfg);
    clock.Lap(Stage::DescriptorConstruction);
    return result;
}

ExtractionResult ExtractDetailed(const Image& img, const DescriptorConfig& cfg) {
    static const ConstantCoefficients defaults;
    return ExtractDetailed(img, cfg, defaults, nullptr);
}

SdpfDescriptor Extract(const Image& img, const DescriptorConfig& cfg) {
    return ExtractDetailed(img, cfg).descriptor;
}

// =============================================================================
// Overlay
// =============================================================================

Image Visualize(const Image& img, const ExtractionResult& result) {
    Image out = img;
    auto plot = [&](long x, long y, Rgb8 color) {
        if (x >= 0 && y >= 0 && x < out.Width() && y < out.Height()) {
            out.At(static_cast<int>(x), static_cast<int>(y)) = color;
        }
    };
    auto mark = [&](double cx, double cy, int radius, Rgb8 color) {
        long x0 = std::lround(std::floor(cx));
        long y0 = std::lround(std::floor(cy));
        for (long dy = -radius; dy <= radius; ++dy) {
            for (long dx = -radius; dx <= radius; ++dx) plot(x0 + dx, y0 + dy, color);
        }
    };

    if (result.points.empty()) return out;

    const Rgb8 red{255, 0, 0};
    const Rgb8 green{0, 255, 0};
    const Rgb8 blue{0, 0, 255};

    // Ray from the centroid along theta0, drawn first so markers stay visible.
    const double theta = result.frame.theta0 * std::numbers::pi / 180.0;
    const double length = std::hypot(out.Width(), out.Height());
    for (double t = 0.0; t <= length; t += 0.5) {
        double x = result.frame.centroid.x + t * std::cos(theta);
        double y = result.frame.centroid.y + t * std::sin(theta);
        plot(std::lround(std::floor(x)), std::lround(std::floor(y)), green);
    }
    for (const SdpfPoint& p : result.points) mark(p.x, p.y, 1, red);
    mark(result.frame.centroid.x, result.frame.centroid.y, 2, blue);
    return out;
}

} // namespace Sdpf
